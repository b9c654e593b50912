"""Formal calculus of homogeneous-quasimorphism values.

No quasimorphism is ever constructed.  A value phi(w) is tracked as a
rational combination of two kinds of symbols: ``nu`` = phi(t_c) for any
nonseparating c, and ``sigma_h`` = phi(t_s) for a separating s of genus h.
Conjugation invariance of homogeneous quasimorphisms, together with
t_{f(c)} = f t_c f^-1, collapses all twists of one topological type onto
one symbol; sigma_h and sigma_{g-h} coincide.

Values enter through words whose letters pairwise commute, and propagate
through verified identities, n-th roots and conjugation.  A defect
inequality |form| <= k D(phi) is produced only from a literal word
factorization, and Bavard duality turns it into bounds on scl.  All
arithmetic is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .rewriting import VerifiedIdentity, builtin_derivation, chain_derivation, check_derivation
from .surface import CurveConfig
from .words import TwistWord, conjugate, exponent_sums, free_reduce, parse_word

PRELUDE = (
    "phi is a homogeneous quasimorphism; phi(y x y^-1) = phi(x) and t_f(c) = f t_c f^-1, "
    "so phi takes one value nu on all nonseparating twists and one value sigma_h on all "
    "separating twists of genus h (sigma_h = sigma_(g-h))"
)


class CalculusError(ValueError):
    pass


class NonCommutingLetters(CalculusError):
    def __init__(self, pair):
        super().__init__(f"curves {pair[0]} and {pair[1]} are not disjoint")
        self.pair = pair


class UncertifiedFactorization(CalculusError):
    pass


class MissingBound(CalculusError):
    pass


@dataclass(frozen=True, order=True)
class PhiClass:
    h: int = 0  # 0 for the nonseparating class

    def __post_init__(self):
        if self.h < 0:
            raise CalculusError(f"separating genus must be positive, got {self.h}")

    @classmethod
    def separating(cls, h: int, g: int | None = None) -> "PhiClass":
        if h < 1 or (g is not None and h > g - 1):
            raise CalculusError(f"separating genus {h} out of range")
        return cls(min(h, g - h) if g is not None else h)

    @property
    def is_separating(self) -> bool:
        return self.h > 0

    def __str__(self):
        return f"sigma_{self.h}" if self.h else "nu"

    @classmethod
    def parse(cls, text: str) -> "PhiClass":
        if text == "nu":
            return cls()
        if text.startswith("sigma_"):
            return cls(int(text[6:]))
        raise CalculusError(f"unknown class {text!r}")


NU = PhiClass()


def sigma(h: int) -> PhiClass:
    return PhiClass(h)


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class PhiForm:
    """A finite formal sum  sum_k q_k * phi(class_k)  with exact rational q_k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for cls, q in dict(coeffs or {}).items():
            q = Fraction(q)
            if q:
                clean[cls] = q
        self.coeffs = dict(sorted(clean.items()))

    @classmethod
    def of(cls, klass: PhiClass, q=1) -> "PhiForm":
        return cls({klass: q})

    def __getitem__(self, klass):
        return self.coeffs.get(klass, Fraction(0))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, q in other.coeffs.items():
            out[k] = out.get(k, 0) + q
        return PhiForm(out)

    def __neg__(self):
        return PhiForm({k: -q for k, q in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q) -> "PhiForm":
        q = Fraction(q)
        return PhiForm({k: q * c for k, c in self.coeffs.items()})

    def __eq__(self, other):
        return isinstance(other, PhiForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def classes(self):
        return list(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, q in sorted(self.coeffs.items(), key=lambda kv: (not kv[0].is_separating, kv[0].h)):
            mag = abs(q)
            term = str(k) if mag == 1 else f"{_fmt(mag)}*{k}"
            parts.append(("- " if q < 0 else "+ ") + term)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    __repr__ = __str__


def phi_class(cfg: CurveConfig, cid: str) -> PhiClass:
    c = cfg.curve(cid)
    return PhiClass.separating(c.h, cfg.genus) if c.separating else NU


def phi_commuting_word(w: TwistWord, cfg: CurveConfig | None = None) -> PhiForm:
    """phi of a word whose distinct curves are pairwise disjoint."""
    cfg = cfg or w.config
    curves = sorted({g.curve for g in w.letters})
    for i, a in enumerate(curves):
        for b in curves[i + 1:]:
            if cfg.geo(a, b) != 0:
                raise NonCommutingLetters((a, b))
    form = PhiForm()
    for cid, n in exponent_sums(w).items():
        if n:
            form = form + PhiForm.of(phi_class(cfg, cid), n)
    return form


def phi_of_power_root(form: PhiForm, n: int) -> PhiForm:
    """phi(x) from phi(x^n) = n phi(x)."""
    if n == 0:
        raise CalculusError("cannot take a 0-th root")
    return form.scale(Fraction(1, n))


@dataclass(frozen=True)
class PhiEval:
    """The certified statement phi(word) = form, with how it was obtained."""
    word: TwistWord
    form: PhiForm
    provenance: tuple

    def __str__(self):
        return f"phi({self.word}) = {self.form}"


def _record(step: str, **info) -> dict:
    return {"step": step, **{k: str(v) if not isinstance(v, (list, dict)) else v for k, v in info.items()}}


def evaluate_commuting(w: TwistWord) -> PhiEval:
    form = phi_commuting_word(w)
    rec = _record("phi-commuting", word=w, value=form,
                  reason="pairwise disjoint twists commute; phi is additive on commuting elements and homogeneous")
    return PhiEval(w, form, (rec,))


def transfer(identity: VerifiedIdentity, ev: PhiEval) -> PhiEval:
    """Move a known value across a verified identity to its other side."""
    if ev.word.letters == identity.lhs.letters:
        other = identity.rhs
    elif ev.word.letters == identity.rhs.letters:
        other = identity.lhs
    else:
        raise UncertifiedFactorization(f"'{ev.word}' is neither side of the identity {identity.name}")
    rec = _record("phi-identity", identity=identity.name, word=other, value=ev.form)
    return PhiEval(other, ev.form, ev.provenance + (identity.provenance(), rec))


def root_eval(ev: PhiEval, n: int) -> PhiEval:
    """phi(u) from phi(u^n), where ev.word is literally u repeated n times."""
    L = ev.word.letters
    if n <= 0 or len(L) % n:
        raise UncertifiedFactorization(f"'{ev.word}' is not an {n}-th power")
    k = len(L) // n
    if L[:k] * n != L:
        raise UncertifiedFactorization(f"'{ev.word}' is not an {n}-th power")
    root = ev.word[:k]
    form = phi_of_power_root(ev.form, n)
    rec = _record("phi-root", word=root, power=n, value=form, reason="homogeneity phi(x^n) = n phi(x)")
    return PhiEval(root, form, ev.provenance + (rec,))


def phi_conj_invariant(u: TwistWord, ev: PhiEval) -> PhiEval:
    """phi(u w u^-1) = phi(w); the conjugate is returned freely reduced."""
    conj = conjugate(u, ev.word)
    reduced = free_reduce(conj)
    rec = _record("phi-conjugate", by=u, word=conj, reduced=reduced, value=ev.form,
                  reason="phi is constant on conjugacy classes")
    return PhiEval(reduced, ev.form, ev.provenance + (rec,))


@dataclass(frozen=True)
class DefectInequality:
    """|form(phi)| <= slack * D(phi) for every homogeneous quasimorphism phi."""
    form: PhiForm
    slack: Fraction
    genus: int
    provenance: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "slack", Fraction(self.slack))
        if self.slack < 0:
            raise CalculusError("defect slack must be nonnegative")

    def __str__(self):
        k = "D" if self.slack == 1 else f"{_fmt(self.slack)}*D"
        return f"|{self.form}| <= {k}"


def defect_split(whole: PhiEval, x: PhiEval, y: PhiEval) -> DefectInequality:
    """|phi(xy) - phi(x) - phi(y)| <= D(phi), for a word that literally is x then y."""
    for part in (whole, x, y):
        if not part.provenance:
            raise UncertifiedFactorization(f"{part} carries no provenance")
    if whole.word.letters != x.word.letters + y.word.letters:
        raise UncertifiedFactorization(f"'{whole.word}' is not '{x.word}' followed by '{y.word}'")
    form = whole.form - x.form - y.form
    rec = _record("defect", whole=whole, left=x, right=y, inequality=f"|{form}| <= D")
    prov = whole.provenance + x.provenance + y.provenance + (rec,)
    return DefectInequality(form, Fraction(1), whole.word.config.genus, prov)


@dataclass(frozen=True)
class SclBound:
    target: PhiClass
    kind: str
    value: Fraction
    genus: int
    group: str = "M"
    provenance: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.kind not in ("upper", "lower"):
            raise CalculusError(f"bound kind must be upper or lower, got {self.kind!r}")
        if self.value < 0:
            raise CalculusError("scl bounds are nonnegative")

    def __str__(self):
        rel = "<=" if self.kind == "upper" else ">="
        return f"scl_{self.group}{self.genus}({self.target}) {rel} {_fmt(self.value)}"


@dataclass(frozen=True)
class RelativeBound:
    """coefficient * scl(pivot) <= sum_j terms[j] * scl(j) + constant."""
    pivot: PhiClass
    coefficient: Fraction
    terms: dict
    constant: Fraction
    genus: int
    group: str = "M"
    provenance: tuple = field(default=())

    def __str__(self):
        lhs = f"scl({self.pivot})" if self.coefficient == 1 else f"{_fmt(self.coefficient)}*scl({self.pivot})"
        rhs = [(f"scl({k})" if q == 1 else f"{_fmt(q)}*scl({k})") for k, q in sorted(self.terms.items())]
        rhs.append(_fmt(self.constant))
        return f"{lhs} <= {' + '.join(rhs)}"


def bavard_single(ineq: DefectInequality) -> SclBound:
    """From |c phi(x)| <= k D(phi) conclude scl(x) <= k / 2|c|."""
    classes = ineq.form.classes()
    if len(classes) != 1:
        raise CalculusError(f"{ineq} does not involve exactly one class")
    target = classes[0]
    c = abs(ineq.form[target])
    value = ineq.slack / (2 * c)
    rec = _record("bavard", inequality=ineq, conclusion=f"scl({target}) <= {_fmt(value)}",
                  reason="|phi(x)| / 2D(phi) <= k / 2|c| for every phi; take the supremum")
    return SclBound(target, "upper", value, ineq.genus, "M", ineq.provenance + (rec,))


def bavard_relative(ineq: DefectInequality, pivot: PhiClass) -> RelativeBound:
    """Rearrange |a phi_p + sum c_j phi_j| <= k D into a scl(p) <= sum |c_j| scl(j) + k/2."""
    a = ineq.form[pivot]
    if not a:
        raise CalculusError(f"{pivot} does not occur in {ineq}")
    terms = {k: abs(q) for k, q in ineq.form.coeffs.items() if k != pivot}
    rel = RelativeBound(pivot, abs(a), terms, ineq.slack / 2, ineq.genus, "M")
    rec = _record("bavard-relative", inequality=ineq, conclusion=rel,
                  reason="triangle inequality, divide by 2D(phi), bound each ratio by its supremum")
    return RelativeBound(rel.pivot, rel.coefficient, rel.terms, rel.constant, rel.genus, rel.group,
                         ineq.provenance + (rec,))


def compose_bounds(rel: RelativeBound, known) -> SclBound:
    """Substitute known upper bounds into the right-hand side of a relative bound."""
    uppers = {b.target: b for b in known if b.kind == "upper"}
    total = rel.constant
    used = []
    for klass, q in sorted(rel.terms.items()):
        if klass not in uppers:
            raise MissingBound(f"no upper bound available for scl({klass})")
        total += q * uppers[klass].value
        used.append(uppers[klass])
    value = total / rel.coefficient
    prov = rel.provenance
    for b in used:
        prov = prov + b.provenance
    rec = _record("substitute", relation=rel, using=[str(b) for b in used],
                  conclusion=f"scl({rel.pivot}) <= {_fmt(value)}")
    return SclBound(rel.pivot, "upper", value, rel.genus, rel.group, prov + (rec,))


# --- pipelines -----------------------------------------------------------

PIPELINES = ("thm1-nonsep", "thm1-sep", "thm1-sep-g2", "lemma3")


def nonseparating_upper(g: int) -> SclBound:
    """scl(t_c) <= 1/10 in M_g via the chain relation."""
    vi = check_derivation(chain_derivation(g))
    cfg = vi.config
    value = transfer(vi, evaluate_commuting(vi.lhs))          # phi(Y^2) = -2 nu
    root = root_eval(value, 2)                                # phi(Y) = -nu
    conj = phi_conj_invariant(parse_word("a2", cfg), root)   # a2 a2 a3 a1
    left = evaluate_commuting(conj.word[:2])
    right = evaluate_commuting(conj.word[2:])
    return bavard_single(defect_split(conj, left, right))


def separating_upper(g: int, h: int = 1) -> SclBound:
    """scl(t_s) <= 1/2 in M_g, g >= 3, via the lantern relation."""
    if g < 3:
        raise CalculusError("the lantern pipeline needs genus >= 3")
    vi = check_derivation(builtin_derivation("D2", g, h))
    whole = transfer(vi, evaluate_commuting(vi.lhs))          # phi(t_x t_y) = sigma_h + 2 nu
    left = evaluate_commuting(whole.word[:1])
    right = evaluate_commuting(whole.word[1:])
    return bavard_single(defect_split(whole, left, right))


def genus2_separating_relation() -> RelativeBound:
    """scl(t_s) <= 2 scl(t_c) + 1/2 in M_2, via the genus-2 lantern."""
    vi = check_derivation(builtin_derivation("D3"))
    whole = transfer(vi, evaluate_commuting(vi.lhs))          # phi(t_s t_x) = 3 nu
    left = evaluate_commuting(whole.word[:1])
    right = evaluate_commuting(whole.word[1:])
    return bavard_relative(defect_split(whole, left, right), sigma(1))


def genus2_separating_upper() -> SclBound:
    return compose_bounds(genus2_separating_relation(), [nonseparating_upper(2)])


def nu_sigma_relation() -> RelativeBound:
    """6 scl(t_c) <= 1/2 scl(t_s) + 1/2 in M_2, via the two-chain relation."""
    vi = check_derivation(builtin_derivation("D4"))
    cfg = vi.config
    value = transfer(vi, evaluate_commuting(vi.lhs))          # phi(Y^2) = sigma_1 - 4 nu
    root = root_eval(value, 2)
    conj = phi_conj_invariant(parse_word("a2", cfg), root)   # a2 a2 a1 a1
    left = evaluate_commuting(conj.word[:2])
    right = evaluate_commuting(conj.word[2:])
    return bavard_relative(defect_split(conj, left, right), NU)


def run_pipeline(name: str, g: int, h: int = 1):
    if name == "thm1-nonsep":
        return nonseparating_upper(g)
    if name == "thm1-sep":
        return separating_upper(g, h)
    if name in ("thm1-sep-g2", "lemma3"):
        if g != 2:
            raise CalculusError(f"pipeline {name} exists only in genus 2")
        return genus2_separating_upper() if name == "thm1-sep-g2" else nu_sigma_relation()
    raise CalculusError(f"unknown pipeline {name!r}; expected one of {', '.join(PIPELINES)}")


def provenance_complete(result) -> bool:
    """True when the chain rests on at least one fully cross-checked identity."""
    ids = [r for r in result.provenance if r.get("step") == "identity"]
    if not ids:
        return False
    for r in ids:
        residues = r["abelianization"]["residues"]
        if r["checked"] != "rewrite" or r["oracle"] not in ("pass", "vacuous") or residues[0] != residues[1]:
            return False
    return True
