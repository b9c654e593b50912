"""Lower bounds on scl in the hyperelliptic mapping class group.

If t^n is a product of r*n commutators in H_g, the relation is the
monodromy of a genus-g hyperelliptic Lefschetz fibration over a surface of
genus r*n with n copies of the vanishing cycle.  Its signature is fixed by
the vanishing-cycle counts, and it is bounded above by 4g(rn) - n + 4.
Comparing the two for n -> infinity forces r >= (1 + rate)/(4g), where rate
is the signature contributed per vanishing cycle.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

NONSEPARATING = "nonsep"


class LefschetzError(ValueError):
    pass


@dataclass(frozen=True)
class CycleClass:
    """Nonseparating when ``h`` is None, otherwise separating of genus h."""
    h: int | None = None

    def check(self, g: int) -> None:
        if self.h is not None and not 1 <= self.h <= g // 2:
            raise LefschetzError(f"separating genus {self.h} out of range 1..{g // 2}")

    def __str__(self):
        return NONSEPARATING if self.h is None else f"sep:{self.h}"


@dataclass(frozen=True)
class MonodromyCounts:
    g: int
    n: int = 0
    b: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.g < 2:
            raise LefschetzError(f"fiber genus must be at least 2, got {self.g}")
        if self.n < 0 or any(v < 0 for v in self.b.values()):
            raise LefschetzError("vanishing-cycle counts must be nonnegative")
        for h in self.b:
            CycleClass(h).check(self.g)

    def __add__(self, other: "MonodromyCounts") -> "MonodromyCounts":
        if other.g != self.g:
            raise LefschetzError("cannot add counts for different fiber genera")
        b = dict(self.b)
        for h, v in other.b.items():
            b[h] = b.get(h, 0) + v
        return MonodromyCounts(self.g, self.n + other.n, b)


def signature_rate(g: int, cls: CycleClass) -> Fraction:
    """Signature contributed by one vanishing cycle of the given type."""
    cls.check(g)
    if cls.h is None:
        return Fraction(-(g + 1), 2 * g + 1)
    h = cls.h
    return Fraction(4 * h * (g - h), 2 * g + 1) - 1


def signature(counts: MonodromyCounts) -> Fraction:
    g = counts.g
    total = counts.n * signature_rate(g, CycleClass())
    for h, b in counts.b.items():
        total += b * signature_rate(g, CycleClass(h))
    return total


def korkmaz_upper(g: int, base_genus, n_cycles: int) -> Fraction:
    """Upper bound 4 g k - n + 4 on the signature over a genus-k base with n cycles."""
    base_genus = Fraction(base_genus)
    if base_genus < 0 or n_cycles < 0:
        raise LefschetzError("base genus and cycle count must be nonnegative")
    return 4 * g * base_genus - n_cycles + 4


def endo_kotschick(g: int) -> Fraction:
    return Fraction(1, 18 * g - 6)


@dataclass(frozen=True)
class AsymptoticInequality:
    """0 <= rn_coeff * (r n) + n_coeff * n + constant, required for arbitrarily large n."""
    rn_coeff: Fraction
    n_coeff: Fraction
    constant: Fraction

    def threshold(self) -> Fraction:
        """Least r for which the leading coefficient in n is nonnegative."""
        if self.rn_coeff <= 0:
            raise LefschetzError("leading coefficient in r must be positive")
        return -self.n_coeff / self.rn_coeff

    def holds_asymptotically(self, r) -> bool:
        lead = self.rn_coeff * Fraction(r) + self.n_coeff
        return lead > 0 or (lead == 0 and self.constant >= 0)

    def __str__(self):
        return f"0 <= {self.rn_coeff}*r*n + ({self.n_coeff})*n + {self.constant}"


def signature_inequality(g: int, cls: CycleClass) -> AsymptoticInequality:
    """rate*n <= 4g(rn) - n + 4, moved to one side."""
    rate = signature_rate(g, cls)
    # korkmaz_upper is affine in (rn, n): read its coefficients off directly
    const = korkmaz_upper(g, 0, 0)
    rn = korkmaz_upper(g, 1, 0) - const
    n = korkmaz_upper(g, 0, 1) - const
    return AsymptoticInequality(rn, n - rate, const)


@dataclass(frozen=True)
class LowerBoundCertificate:
    g: int
    cycle: CycleClass
    rate: Fraction
    threshold: Fraction
    inequality: AsymptoticInequality
    comparison: Fraction

    @property
    def improves(self) -> bool:
        return self.threshold > self.comparison

    def notes(self) -> list:
        out = [
            "signature of the fibration: rate * n (hyperelliptic signature formula, trusted)",
            "upper bound 4g(rn) - n + 4 on the signature (trusted)",
            f"asymptotic inequality {self.inequality}",
            "n ranges over multiples of 4(2g+1); this affects existence of the fibration, not the threshold",
        ]
        if self.cycle.h is not None:
            out.append("the same signature upper bound is applied to separating vanishing cycles (asserted, not derived)")
        return out


def scl_lower_bound(g: int, cls: CycleClass) -> LowerBoundCertificate:
    if g < 2:
        raise LefschetzError(f"genus must be at least 2, got {g}")
    cls.check(g)
    ineq = signature_inequality(g, cls)
    r_star = ineq.threshold()
    if r_star <= 0:
        raise LefschetzError(f"threshold {r_star} is not positive")
    return LowerBoundCertificate(g, cls, signature_rate(g, cls), r_star, ineq, endo_kotschick(g))
