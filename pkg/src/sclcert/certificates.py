"""Bound tables, the genus-2 strictness argument and JSON certificates."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import abelian, homology, lefschetz
from .quasimorphism import (
    NU, PRELUDE, PhiClass, RelativeBound, SclBound, genus2_separating_upper, nu_sigma_relation,
    nonseparating_upper, separating_upper, sigma,
)
from .rewriting import VerifiedIdentity


class CertificateError(ValueError):
    pass


class MissingPrerequisite(CertificateError):
    pass


def fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# --- exact Fourier-Motzkin -------------------------------------------------

OPS = ("<=", "<", "=", ">=", ">")


@dataclass(frozen=True)
class Constraint:
    """sum coeffs[v] * v  (op)  rhs."""
    coeffs: dict
    op: str
    rhs: Fraction
    label: str = ""

    def __post_init__(self):
        if self.op not in OPS:
            raise CertificateError(f"unknown comparison {self.op!r}")
        object.__setattr__(self, "coeffs", {v: Fraction(q) for v, q in self.coeffs.items() if q})
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def holds(self, point: dict) -> bool:
        lhs = sum((q * Fraction(point[v]) for v, q in self.coeffs.items()), Fraction(0))
        return {"<=": lhs <= self.rhs, "<": lhs < self.rhs, "=": lhs == self.rhs,
                ">=": lhs >= self.rhs, ">": lhs > self.rhs}[self.op]

    def __str__(self):
        terms = " + ".join(f"{fmt(q)}*{v}" for v, q in sorted(self.coeffs.items())) or "0"
        return f"{terms} {self.op} {fmt(self.rhs)}"


@dataclass(frozen=True)
class LinearInequalitySystem:
    variables: tuple
    constraints: tuple

    def __post_init__(self):
        for c in self.constraints:
            for v in c.coeffs:
                if v not in self.variables:
                    raise CertificateError(f"constraint {c} uses undeclared variable {v!r}")


@dataclass
class _Row:
    a: dict
    strict: bool
    b: Fraction
    combo: dict  # original constraint index -> multiplier on the constraint as written


def _rows(system: LinearInequalitySystem) -> list:
    rows = []
    for i, c in enumerate(system.constraints):
        if c.op in ("<=", "<", "="):
            rows.append(_Row(dict(c.coeffs), c.op == "<", c.rhs, {i: Fraction(1)}))
        if c.op in (">=", ">", "="):
            rows.append(_Row({v: -q for v, q in c.coeffs.items()}, c.op == ">", -c.rhs, {i: Fraction(-1)}))
    return rows


def _combine(p: _Row, n: _Row, v) -> _Row:
    lp, ln = 1 / p.a[v], 1 / -n.a[v]
    a = {}
    for row, lam in ((p, lp), (n, ln)):
        for k, q in row.a.items():
            a[k] = a.get(k, 0) + lam * q
    a = {k: q for k, q in a.items() if q and k != v}
    combo = dict()
    for row, lam in ((p, lp), (n, ln)):
        for k, q in row.combo.items():
            combo[k] = combo.get(k, 0) + lam * q
    return _Row(a, p.strict or n.strict, lp * p.b + ln * n.b, {k: q for k, q in combo.items() if q})


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: dict | None = None
    refutation: tuple = ()  # (constraint index, multiplier) pairs
    contradiction: str = ""


def _eliminate(rows, order):
    stages = []
    for v in order:
        pos = [r for r in rows if r.a.get(v, 0) > 0]
        neg = [r for r in rows if r.a.get(v, 0) < 0]
        rest = [r for r in rows if not r.a.get(v, 0)]
        stages.append((v, pos, neg))
        rows = rest + [_combine(p, n, v) for p in pos for n in neg]
    return rows, stages


def _pick(lo, lo_strict, hi, hi_strict) -> Fraction:
    if lo is not None and hi is not None:
        if lo == hi or not lo_strict:
            return lo
        if not hi_strict:
            return hi
        return (lo + hi) / 2
    if lo is not None:
        return lo + 1 if lo_strict else lo
    if hi is not None:
        return hi - 1 if hi_strict else hi
    return Fraction(0)


def feasible(system: LinearInequalitySystem) -> Feasibility:
    """Decide an exact rational system by Fourier-Motzkin elimination.

    Infeasible answers carry multipliers on the constraints as written
    (nonnegative on <= and <, nonpositive on >= and >, any sign on =) whose
    combination reads ``0 <= negative`` or ``0 < nonpositive``.  Feasible
    answers carry a witness point.
    """
    rows, stages = _eliminate(_rows(system), list(system.variables))
    for r in rows:
        if r.b < 0 or (r.strict and r.b <= 0):
            combo = tuple(sorted(r.combo.items()))
            text = f"0 {'<' if r.strict else '<='} {fmt(r.b)}"
            return Feasibility(False, None, combo, text)
    point = {}
    for v, pos, neg in reversed(stages):
        lo = hi = None
        lo_s = hi_s = False
        for r in pos + neg:
            slack = r.b - sum((q * point[k] for k, q in r.a.items() if k != v), Fraction(0))
            bound = slack / r.a[v]
            if r.a[v] > 0:
                if hi is None or bound < hi or (bound == hi and r.strict):
                    hi, hi_s = bound, r.strict
            else:
                if lo is None or bound > lo or (bound == lo and r.strict):
                    lo, lo_s = bound, r.strict
        point[v] = _pick(lo, lo_s, hi, hi_s)
    witness = {v: point[v] for v in system.variables}
    assert all(c.holds(witness) for c in system.constraints)
    return Feasibility(True, witness)


def check_refutation(system: LinearInequalitySystem, refutation) -> bool:
    """Replay a refutation: the combination must cancel every variable and be contradictory."""
    total = {}
    b = Fraction(0)
    strict = False
    for i, lam in refutation:
        c = system.constraints[i]
        lam = Fraction(lam)
        if c.op in ("<=", "<") and lam < 0 or c.op in (">=", ">") and lam > 0:
            return False
        # multipliers act on the raw constraint; >= rows take nonpositive ones
        for v, q in c.coeffs.items():
            total[v] = total.get(v, 0) + lam * q
        b += lam * c.rhs
        if c.op in ("<", ">") and lam:
            strict = True
    if any(total.values()):
        return False
    return b < 0 or (strict and b <= 0)


def upper_bound_of(system: LinearInequalitySystem, var: str):
    """Tightest upper bound on ``var`` implied by the system, or None."""
    others = [v for v in system.variables if v != var]
    rows, _ = _eliminate(_rows(system), others)
    best = None
    for r in rows:
        q = r.a.get(var, 0)
        if q > 0 and set(r.a) == {var}:
            val = r.b / q
            if best is None or val < best[0] or (val == best[0] and r.strict):
                best = (val, r.strict)
    return best


# --- strictness in genus 2 --------------------------------------------------

_DEFAULT = object()


def _relative_constraint(rel: RelativeBound, names: dict) -> Constraint:
    coeffs = {names[rel.pivot]: rel.coefficient}
    for k, q in rel.terms.items():
        coeffs[names[k]] = coeffs.get(names[k], 0) - q
    return Constraint(coeffs, "<=", rel.constant, str(rel))


@dataclass(frozen=True)
class StrictnessCertificate:
    system: LinearInequalitySystem
    result: Feasibility
    intermediate: Fraction
    lower: Fraction
    provenance: tuple = field(default=())

    @property
    def distinct(self) -> bool:
        return not self.result.feasible


def strictness_check(genus: int = 2, relation=_DEFAULT, lower=_DEFAULT) -> StrictnessCertificate:
    """Show scl(t_c) != scl(t_s) in M_2 by refuting their equality."""
    if genus != 2:
        raise CertificateError("the strictness argument is specific to genus 2")
    if relation is _DEFAULT:
        relation = nu_sigma_relation()
    if lower is _DEFAULT:
        lower = lefschetz.scl_lower_bound(2, lefschetz.CycleClass(1))
    if relation is None:
        raise MissingPrerequisite("the relation between scl(t_c) and scl(t_s) is required")
    if lower is None:
        raise MissingPrerequisite("a lower bound on scl(t_s) is required")
    low = lower.threshold if isinstance(lower, lefschetz.LowerBoundCertificate) else Fraction(lower)
    x, y = "scl(t_c)", "scl(t_s)"
    names = {NU: x, sigma(1): y}
    rel = _relative_constraint(relation, names)
    eq = Constraint({x: 1, y: -1}, "=", 0, "assume scl(t_c) = scl(t_s)")
    lb = Constraint({y: 1}, ">=", low, f"scl(t_s) >= {fmt(low)}")
    system = LinearInequalitySystem((x, y), (rel, eq, lb))
    inter = upper_bound_of(LinearInequalitySystem((x, y), (rel, eq)), y)
    if inter is None:
        raise CertificateError("relation and equality give no upper bound on scl(t_s)")
    result = feasible(system)
    prov = tuple(relation.provenance) + ({
        "step": "strictness",
        "system": [str(c) for c in system.constraints],
        "intermediate": f"equality implies {y} <= {fmt(inter[0])}",
        "verdict": "feasible" if result.feasible else "infeasible",
        "refutation": [f"{fmt(lam)} * ({system.constraints[i]})" for i, lam in result.refutation],
        "contradiction": result.contradiction or f"{fmt(inter[0])} >= {fmt(low)}",
    },)
    return StrictnessCertificate(system, result, inter[0], low, prov)


# --- bound tables -------------------------------------------------------------

@dataclass(frozen=True)
class BoundTableRow:
    group: str
    genus: int
    target: PhiClass
    lower: Fraction | None = None
    upper: Fraction | None = None
    lower_provenance: tuple = ()
    upper_provenance: tuple = ()

    def __post_init__(self):
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise CertificateError(f"{self.group}{self.genus} {self.target}: lower {self.lower} exceeds upper {self.upper}")

    def target_label(self) -> str:
        return "t_c" if not self.target.is_separating else (
            "t_s" if self.genus == 2 else f"t_s{self.target.h}")

    def __str__(self):
        lo = fmt(self.lower) if self.lower is not None else "-"
        hi = fmt(self.upper) if self.upper is not None else "-"
        return f"{self.group}_{self.genus}  {self.target_label():6s} [{lo}, {hi}]"


def _lower_entry(g, cls):
    cert = lefschetz.scl_lower_bound(g, cls)
    return cert.threshold, tuple({"step": "lefschetz", "note": n} for n in cert.notes())


def bounds(g: int, group: str = "m") -> list:
    group = group.upper()
    if group not in ("M", "H"):
        raise CertificateError(f"unknown group {group!r}")
    if g < 2:
        raise CertificateError("genus must be at least 2")
    rows = []
    if g == 2:
        # M_2 = H_2: both kinds of bound apply to either group
        up_c = nonseparating_upper(2)
        up_s = genus2_separating_upper()
        lo_c, pc = _lower_entry(2, lefschetz.CycleClass())
        lo_s, ps = _lower_entry(2, lefschetz.CycleClass(1))
        return [
            BoundTableRow(group, 2, NU, lo_c, up_c.value, pc, up_c.provenance),
            BoundTableRow(group, 2, sigma(1), lo_s, up_s.value, ps, up_s.provenance),
        ]
    if group == "M":
        up = nonseparating_upper(g)
        rows.append(BoundTableRow("M", g, NU, None, up.value, (), up.provenance))
        for h in range(1, g // 2 + 1):
            up = separating_upper(g, h)
            rows.append(BoundTableRow("M", g, sigma(h), None, up.value, (), up.provenance))
    else:
        lo, p = _lower_entry(g, lefschetz.CycleClass())
        rows.append(BoundTableRow("H", g, NU, lo, None, p))
        for h in range(1, g // 2 + 1):
            lo, p = _lower_entry(g, lefschetz.CycleClass(h))
            rows.append(BoundTableRow("H", g, sigma(h), lo, None, p))
    return rows


def genus2_chain() -> dict:
    """The genus-2 chain lower(t_c) <= upper(t_c) <= lower(t_s) <= upper(t_s)."""
    c, s = bounds(2, "m")
    chain = [c.lower, c.upper, s.lower, s.upper]
    if any(a > b for a, b in zip(chain, chain[1:])):
        raise CertificateError(f"bound chain out of order: {chain}")
    return {
        "chain": [fmt(q) for q in chain],
        "text": f"{fmt(c.lower)} <= scl(t_c) <= {fmt(c.upper)} <= scl(t_s) <= {fmt(s.upper)}",
        "coincidence": c.upper == s.lower,
    }


def table_rows(genera) -> list:
    out = []
    for g in genera:
        classes = [lefschetz.CycleClass()] + [lefschetz.CycleClass(h) for h in range(1, g // 2 + 1)]
        for cls in classes:
            cert = lefschetz.scl_lower_bound(g, cls)
            if g == 2:
                upper = nonseparating_upper(2) if cls.h is None else genus2_separating_upper()
            else:
                upper = nonseparating_upper(g) if cls.h is None else separating_upper(g, cls.h)
            out.append({
                "g": g,
                "h": "nonsep" if cls.h is None else cls.h,
                "lower_H": fmt(cert.threshold),
                "endo_kotschick": fmt(cert.comparison),
                "improves": cert.improves,
                "upper_M": fmt(upper.value),
            })
    return out


def format_table(rows, style: str = "csv") -> str:
    cols = ["g", "h", "lower_H", "endo_kotschick", "improves", "upper_M"]
    if style == "json":
        return canonical_json(rows)
    cell = lambda v: str(v).lower() if isinstance(v, bool) else str(v)
    if style == "csv":
        lines = [",".join(cols)] + [",".join(cell(r[c]) for c in cols) for r in rows]
        return "\n".join(lines) + "\n"
    if style == "md":
        lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
        lines += ["| " + " | ".join(cell(r[c]) for c in cols) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    raise CertificateError(f"unknown table format {style!r}")


# --- JSON certificates ----------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (str, int, bool)) or obj is None:
        return obj
    return str(obj)


def canonical_json(obj) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _identity_summary(provenance) -> tuple:
    ids = [r for r in provenance if isinstance(r, dict) and r.get("step") == "identity"]
    verdicts = [r["oracle"] for r in ids]
    verdict = "pass" if verdicts and all(v == "pass" for v in verdicts) else ("vacuous" if verdicts else "n/a")
    oracle = {"verdict": verdict, "convention": homology.CONVENTION}
    N = ids[0]["abelianization"]["N"] if ids else None
    residues = [r["abelianization"]["residues"] for r in ids]
    return oracle, {"N": N, "residues": residues}


def certificate(obj) -> dict:
    if isinstance(obj, SclBound):
        oracle, ab = _identity_summary(obj.provenance)
        return {
            "kind": "scl-bound", "group": obj.group, "genus": obj.genus, "target": str(obj.target),
            "bound": {"dir": obj.kind, "value": fmt(obj.value)},
            "provenance": [{"step": "prelude", "note": PRELUDE}, *obj.provenance],
            "oracle": oracle, "abelianization": ab,
        }
    if isinstance(obj, RelativeBound):
        oracle, ab = _identity_summary(obj.provenance)
        return {
            "kind": "relative-bound", "group": obj.group, "genus": obj.genus, "target": str(obj.pivot),
            "bound": {"dir": "upper", "value": str(obj), "coefficient": fmt(obj.coefficient),
                      "terms": {str(k): fmt(q) for k, q in sorted(obj.terms.items())},
                      "constant": fmt(obj.constant)},
            "provenance": [{"step": "prelude", "note": PRELUDE}, *obj.provenance],
            "oracle": oracle, "abelianization": ab,
        }
    if isinstance(obj, VerifiedIdentity):
        rec = obj.provenance()
        return {
            "kind": "identity", "group": "M", "genus": obj.config.genus,
            "target": f"{obj.lhs} = {obj.rhs}", "bound": None, "provenance": [rec],
            "oracle": {"verdict": obj.oracle, "convention": homology.CONVENTION},
            "abelianization": dict(obj.abelianization),
        }
    if isinstance(obj, lefschetz.LowerBoundCertificate):
        spec = abelian.GroupSpec(abelian.HYPERELLIPTIC, obj.g)
        weight = 1 if obj.cycle.h is None else abelian.separating_weight(obj.cycle.h)
        return {
            "kind": "lower-bound", "group": "H", "genus": obj.g,
            "target": "nu" if obj.cycle.h is None else f"sigma_{obj.cycle.h}",
            "bound": {"dir": "lower", "value": fmt(obj.threshold)},
            "provenance": [{"step": "lefschetz", "note": n} for n in obj.notes()] + [
                {"step": "rate", "value": fmt(obj.rate)},
                {"step": "threshold", "value": fmt(obj.threshold), "formula": "(1 + rate) / (4g)"},
                {"step": "comparison", "endo_kotschick": fmt(obj.comparison), "improves": obj.improves},
            ],
            "oracle": {"verdict": "n/a", "convention": homology.CONVENTION},
            "abelianization": {"N": spec.order, "residues": [],
                               "min_power": abelian.min_power_in_commutator(weight, spec),
                               "min_power_exact": spec.exact_order},
        }
    if isinstance(obj, StrictnessCertificate):
        oracle, ab = _identity_summary(obj.provenance)
        return {
            "kind": "refutation", "group": "M", "genus": 2, "target": "scl(t_c) != scl(t_s)",
            "bound": {"dir": "upper", "value": fmt(obj.intermediate), "lower": fmt(obj.lower),
                      "distinct": obj.distinct},
            "provenance": list(obj.provenance), "oracle": oracle, "abelianization": ab,
        }
    raise CertificateError(f"cannot certify object of type {type(obj).__name__}")


def emit_certificate(obj, path) -> Path:
    path = Path(path)
    path.write_text(canonical_json(certificate(obj)), encoding="utf-8")
    return path


def parse_certificate(text: str) -> dict:
    data = json.loads(text)
    missing = {"kind", "group", "genus", "target", "bound", "provenance", "oracle", "abelianization"} - set(data)
    if missing:
        raise CertificateError(f"certificate lacks fields {sorted(missing)}")
    return data


def bound_from_certificate(data: dict) -> SclBound:
    if data["kind"] != "scl-bound":
        raise CertificateError(f"not a bound certificate: {data['kind']}")
    prov = tuple(r for r in data["provenance"] if r.get("step") != "prelude")
    return SclBound(PhiClass.parse(data["target"]), data["bound"]["dir"], Fraction(data["bound"]["value"]),
                    data["genus"], data["group"], prov)
