"""
Lower bounds and strictness in genus 2
======================================

In the hyperelliptic group a power of a twist that is a product of few
commutators gives a Lefschetz fibration with too negative a signature.
Combined with the upper bounds this separates the two twist types in genus 2.
"""

from fractions import Fraction

from sclcert.certificates import bounds, genus2_chain, format_table, strictness_check, table_rows
from sclcert.lefschetz import CycleClass, scl_lower_bound

cert = scl_lower_bound(5, CycleClass(2))
print(cert.threshold, cert.comparison, cert.improves)
for line in cert.notes():
    print("  ", line)

print(format_table(table_rows(range(2, 7)), "md"))

###############################################################################
# Genus 2: the chain of bounds, and the exact refutation of equality
for row in bounds(2, "m"):
    print(row)
print(genus2_chain()["text"])

s = strictness_check(2)
print(s.intermediate, s.distinct, s.result.refutation)
print(strictness_check(2, lower=Fraction(1, 12)).result.witness)
