"""
Upper bounds from quasimorphisms
================================

A homogeneous quasimorphism is constant on twists about curves of one
type.  Feeding checked identities through its defect inequality gives
upper bounds on stable commutator length.
"""

from sclcert.quasimorphism import nu_sigma_relation, nonseparating_upper, run_pipeline, separating_upper

b = nonseparating_upper(3)
print(b)
for record in b.provenance:
    print("  ", record["step"], {k: v for k, v in record.items() if k in ("word", "reduced", "value")})

###############################################################################
# Separating twists, and the genus-2 case where the lantern is unavailable
for g in range(3, 7):
    print(g, [str(separating_upper(g, h).value) for h in range(1, g // 2 + 1)])
print(run_pipeline("thm1-sep-g2", 2))
print(nu_sigma_relation())
