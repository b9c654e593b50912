"""
Checked derivations
===================

An identity between twist words is accepted only after every rewrite step
is replayed, and after the homology oracle and the abelianization agree.
"""

from pathlib import Path

from sclcert.rewriting import builtin_derivation, check_derivation, format_script, parse_script

# the genus-2 two-chain derivation
d = builtin_derivation("D4")
for step, word in d.replay():
    print(f"{str(step):22s} {word}")

v = check_derivation(d)
print(v.lhs, "=", v.rhs)
print(v.oracle, v.abelianization)

###############################################################################
# Scripts are plain text.  The file next to this demo is the genus-2 lantern
# derivation; editing any step makes the checker point at it.
text = (Path(__file__).parent / "lantern_genus2.drv").read_text()
print(check_derivation(parse_script(text)).rhs)

bad = format_script(d).replace("step: swap @1", "step: swap @2", 1)
try:
    check_derivation(parse_script(bad))
except Exception as exc:
    print(type(exc).__name__, exc)
