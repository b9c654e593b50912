"""Curves on a closed genus-g surface, declared as data.

A configuration lists named curves together with their integral homology
classes and the geometric intersection counts between them.  Nothing here
computes geometry; the builtin configurations encode the intersection
patterns of the chain, lantern and two-chain pictures.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

UNKNOWN = None

NONSEP = "nonsep"
SEP = "sep"

BUILTIN_NAMES = ("chain5", "lantern", "lantern2", "twochain")


class ConfigError(ValueError):
    pass


def symplectic_form(g: int) -> np.ndarray:
    """Block-diagonal J with blocks [[0, 1], [-1, 0]] over (alpha_1, beta_1, ..., alpha_g, beta_g)."""
    J = np.zeros((2 * g, 2 * g), dtype=object)
    for k in range(g):
        J[2 * k, 2 * k + 1] = 1
        J[2 * k + 1, 2 * k] = -1
    return J


def omega(u, v) -> int:
    """Algebraic intersection u^T J v of two integer vectors."""
    if len(u) != len(v) or len(u) % 2:
        raise ConfigError(f"vectors of lengths {len(u)} and {len(v)} cannot be paired")
    total = 0
    for k in range(0, len(u), 2):
        total += u[k] * v[k + 1] - u[k + 1] * v[k]
    return int(total)


@dataclass(frozen=True)
class Curve:
    id: str
    kind: str
    homology: tuple
    h: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (NONSEP, SEP):
            raise ConfigError(f"unknown curve kind {self.kind!r}")
        object.__setattr__(self, "homology", tuple(int(c) for c in self.homology))
        if self.kind == SEP:
            g = len(self.homology) // 2
            if self.h is None or not 1 <= self.h <= g - 1:
                raise ConfigError(f"separating curve {self.id} needs 1 <= h <= {g - 1}, got {self.h}")
            # t_{s_{g-h}} is conjugate to t_{s_h}
            object.__setattr__(self, "h", min(self.h, g - self.h))
        elif self.h is not None:
            raise ConfigError(f"nonseparating curve {self.id} cannot carry a genus")

    @property
    def separating(self) -> bool:
        return self.kind == SEP

    def kind_label(self) -> str:
        return f"sep:{self.h}" if self.separating else NONSEP


@dataclass(frozen=True, eq=True)
class CurveConfig:
    name: str
    genus: int
    curves: tuple
    geo_table: Mapping = field(default_factory=dict)
    aliases: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.genus < 1:
            raise ConfigError(f"genus must be positive, got {self.genus}")
        ids = [c.id for c in self.curves]
        if len(set(ids)) != len(ids):
            raise ConfigError("duplicate curve ids")
        for c in self.curves:
            if len(c.homology) != 2 * self.genus:
                raise ConfigError(f"curve {c.id} has homology of length {len(c.homology)}, expected {2 * self.genus}")
        table = {}
        for (i, j), n in dict(self.geo_table).items():
            for k in (i, j):
                if k not in ids:
                    raise ConfigError(f"geo entry names unknown curve {k!r}")
            table[frozenset((i, j))] = n
        object.__setattr__(self, "geo_table", table)
        for alias, target in dict(self.aliases).items():
            if target not in ids:
                raise ConfigError(f"alias {alias!r} points at unknown curve {target!r}")

    def __hash__(self):
        return hash((self.name, self.genus, self.curves))

    @property
    def ids(self) -> tuple:
        return tuple(c.id for c in self.curves)

    def resolve(self, cid: str) -> str:
        cid = self.aliases.get(cid, cid)
        if cid not in self.ids:
            raise ConfigError(f"unknown curve {cid!r} in configuration {self.name}")
        return cid

    def curve(self, cid: str) -> Curve:
        cid = self.resolve(cid)
        for c in self.curves:
            if c.id == cid:
                return c
        raise AssertionError("unreachable")

    def geo(self, i: str, j: str):
        """Geometric intersection count, or UNKNOWN when the pair was not declared."""
        i, j = self.resolve(i), self.resolve(j)
        key = frozenset((i, j))
        if key in self.geo_table:
            return self.geo_table[key]
        return 0 if i == j else UNKNOWN


def pairing(cfg: CurveConfig, i: str, j: str) -> int:
    return omega(cfg.curve(i).homology, cfg.curve(j).homology)


def validate(cfg: CurveConfig) -> list:
    """List every broken configuration invariant; an empty list means valid."""
    problems = []
    if cfg.genus < 2:
        problems.append(f"genus {cfg.genus} < 2")
    for c in cfg.curves:
        zero = not any(c.homology)
        if c.separating and not zero:
            problems.append(f"separating curve {c.id} has nonzero homology {c.homology}")
        if not c.separating and zero:
            problems.append(f"nonseparating curve {c.id} has zero homology")
    for key, n in sorted(cfg.geo_table.items(), key=lambda kv: sorted(kv[0])):
        pair = sorted(key)
        i, j = (pair[0], pair[0]) if len(pair) == 1 else pair
        if i == j:
            if n != 0:
                problems.append(f"geo({i}, {i}) = {n}, expected 0")
            continue
        if n is UNKNOWN:
            continue
        if n < 0:
            problems.append(f"geo({i}, {j}) = {n} is negative")
        p = pairing(cfg, i, j)
        if abs(p) > n:
            problems.append(f"|pairing({i}, {j})| = {abs(p)} exceeds geo = {n}")
    return problems


def _vec(g: int, **coeffs) -> tuple:
    v = [0] * (2 * g)
    for name, c in coeffs.items():
        kind, k = name[0], int(name[1:])
        v[2 * (k - 1) + (0 if kind == "a" else 1)] += c
    return tuple(v)


def _make(name, g, curves, pairs, aliases=None):
    ids = [c.id for c in curves]
    table = {}
    for x in ids:
        for y in ids:
            if x < y:
                table[(x, y)] = 0
    for (x, y), n in pairs.items():
        table[tuple(sorted((x, y)))] = n
    return CurveConfig(name, g, tuple(curves), table, aliases or {})


def builtin_config(name: str, g: int, h: int = 1) -> CurveConfig:
    """One of the shipped configurations at genus ``g``.

    ``h`` is the genus of the separating curve ``s`` in the lantern
    configuration; the other configurations only exist with h = 1.
    """
    if name not in BUILTIN_NAMES:
        raise ConfigError(f"unknown configuration {name!r}; expected one of {', '.join(BUILTIN_NAMES)}")
    if g < 2:
        raise ConfigError(f"genus must be at least 2, got {g}")
    N = NONSEP
    if name == "chain5":
        # a1-a2-a3 is a 3-chain; a4, a5 are the boundary curves of its neighbourhood
        curves = [
            Curve("a1", N, _vec(g, b1=1)),
            Curve("a2", N, _vec(g, a1=1)),
            Curve("a3", N, _vec(g, b1=1, b2=1)),
        ]
        pairs = {("a1", "a2"): 1, ("a2", "a3"): 1}
        if g == 2:
            curves.append(Curve("a5", N, _vec(g, b2=1)))
            return _make(name, g, curves, pairs, {"a4": "a5"})
        curves += [Curve("a4", N, _vec(g, b2=1)), Curve("a5", N, _vec(g, b2=1))]
        return _make(name, g, curves, pairs)
    if name == "lantern":
        if g < 3:
            raise ConfigError("lantern configuration needs genus >= 3")
        if not 1 <= h <= g // 2:
            raise ConfigError(f"separating genus h must satisfy 1 <= h <= {g // 2}")
        curves = [
            Curve("s", SEP, _vec(g), h),
            Curve("a", N, _vec(g, a1=1)),
            Curve("b", N, _vec(g, a2=1)),
            Curve("c", N, _vec(g, a1=-1, a2=-1)),
            Curve("x", N, _vec(g, a1=1, a2=1)),
            Curve("y", N, _vec(g, a1=-1)),
            Curve("z", N, _vec(g, a2=-1)),
        ]
        return _make(name, g, curves, {("x", "y"): 2, ("y", "z"): 2, ("x", "z"): 2})
    if g != 2:
        raise ConfigError(f"{name} configuration exists only in genus 2")
    if h != 1:
        raise ConfigError("genus 2 has only separating curves of genus 1")
    if name == "lantern2":
        curves = [
            Curve("a1", N, _vec(g, b1=1)),
            Curve("a3", N, _vec(g, b1=1, b2=1)),
            Curve("a5", N, _vec(g, b2=1)),
            Curve("s", SEP, _vec(g), 1),
            Curve("x", N, _vec(g, b1=1, b2=-1)),
        ]
        return _make(name, g, curves, {("x", "a3"): 2, ("x", "s"): 2, ("a3", "s"): 2})
    curves = [
        Curve("a1", N, _vec(g, b1=1)),
        Curve("a2", N, _vec(g, a1=1)),
        Curve("s", SEP, _vec(g), 1),
    ]
    return _make(name, g, curves, {("a1", "a2"): 1})


def parse_config(text: str, name: str = "custom") -> CurveConfig:
    """Read the line-based configuration format.

    Lines are ``genus <g>``, ``curve <id> nonsep|sep:<h> [hom: c1 ... c2g]``,
    ``geo <id> <id> <n|?>`` and ``alias <id> <target>``; ``#`` starts a comment.
    """
    genus = None
    raw_curves, geo, aliases = [], {}, {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "genus":
                genus = int(tok[1])
            elif tok[0] == "curve":
                hom = None
                if len(tok) > 3:
                    if tok[3] != "hom:":
                        raise ConfigError("expected 'hom:'")
                    hom = [int(t) for t in tok[4:]]
                raw_curves.append((tok[1], tok[2], hom))
            elif tok[0] == "geo":
                geo[(tok[1], tok[2])] = UNKNOWN if tok[3] == "?" else int(tok[3])
            elif tok[0] == "alias":
                aliases[tok[1]] = tok[2]
            else:
                raise ConfigError(f"unknown directive {tok[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ConfigError(f"line {lineno}: {exc or 'malformed line'}") from None
    if genus is None:
        lengths = {len(h) for _, _, h in raw_curves if h is not None}
        if len(lengths) != 1:
            raise ConfigError("genus not given and not inferable from homology vectors")
        genus = lengths.pop() // 2
    curves = []
    for cid, kind, hom in raw_curves:
        hom = tuple(hom) if hom is not None else (0,) * (2 * genus)
        if kind == NONSEP:
            curves.append(Curve(cid, NONSEP, hom))
        elif kind.startswith("sep:"):
            curves.append(Curve(cid, SEP, hom, int(kind[4:])))
        else:
            raise ConfigError(f"curve {cid}: unknown kind {kind!r}")
    return CurveConfig(name, genus, tuple(curves), geo, aliases)


def format_config(cfg: CurveConfig) -> str:
    lines = [f"# {cfg.name}", f"genus {cfg.genus}"]
    for c in cfg.curves:
        lines.append(f"curve {c.id} {c.kind_label()} hom: " + " ".join(str(x) for x in c.homology))
    for key, n in sorted(cfg.geo_table.items(), key=lambda kv: sorted(kv[0])):
        pair = sorted(key) * (2 if len(key) == 1 else 1)
        lines.append(f"geo {pair[0]} {pair[1]} {'?' if n is UNKNOWN else n}")
    for alias, target in sorted(cfg.aliases.items()):
        lines.append(f"alias {alias} {target}")
    return "\n".join(lines) + "\n"
