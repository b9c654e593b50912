"""Images of twist words in the abelianization of M_g or H_g.

The abelianization is cyclic, generated by a nonseparating twist.  A
separating twist of genus h is rewritten through the 2h-chain relation
(t_{c_1} ... t_{c_2h})^{4h+2} = t_s, so it carries weight 2h(4h+2).
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .surface import CurveConfig
from .words import TwistWord

FULL = "full-MCG"
HYPERELLIPTIC = "hyperelliptic"


class AbelianizationError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    family: str
    genus: int

    def __post_init__(self):
        if self.family not in (FULL, HYPERELLIPTIC):
            raise AbelianizationError(f"unknown group family {self.family!r}")
        if self.genus < 2:
            raise AbelianizationError(f"genus must be at least 2, got {self.genus}")

    @property
    def order(self) -> int:
        if self.family == FULL:
            return 10 if self.genus == 2 else 1
        # only known to kill 4(2g+1)-th powers; see exact_order
        return 4 * (2 * self.genus + 1)

    @property
    def exact_order(self) -> bool:
        """False when ``order`` is only a multiple of the true order."""
        return self.family == FULL

    @classmethod
    def parse(cls, group: str, genus: int) -> "GroupSpec":
        family = {"m": FULL, "h": HYPERELLIPTIC, FULL: FULL, HYPERELLIPTIC: HYPERELLIPTIC}.get(group.lower())
        if family is None:
            raise AbelianizationError(f"unknown group {group!r}; use 'm' or 'h'")
        return cls(family, genus)


def separating_weight(h: int, g: int | None = None) -> int:
    if h < 1 or (g is not None and h > g // 2):
        raise AbelianizationError(f"separating genus {h} out of range" + (f" for genus {g}" if g else ""))
    return 4 * h * (2 * h + 1)


def class_weight(cfg: CurveConfig, cid: str) -> int:
    c = cfg.curve(cid)
    return separating_weight(c.h, cfg.genus) if c.separating else 1


def ab_image(w: TwistWord, spec: GroupSpec, cfg: CurveConfig | None = None) -> int:
    cfg = cfg or w.config
    N = spec.order
    if N == 1:
        return 0
    return sum(g.sign * class_weight(cfg, g.curve) for g in w.letters) % N


def min_power_in_commutator(weight: int, spec: GroupSpec) -> int:
    """Least m with weight * m = 0 mod N.

    ``weight`` is 1 for a nonseparating twist and ``separating_weight(h)``
    for a separating one.  For the hyperelliptic family N is not known to be
    exact: the m-th power is certified to lie in the commutator subgroup,
    but the true minimum may be a proper divisor of m.
    """
    N = spec.order
    return N // gcd(N, weight)
