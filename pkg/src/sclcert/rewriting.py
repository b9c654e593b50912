"""Proof checker for identities between twist words.

A derivation is a start word, a list of local rewrite steps and an end
word.  Checking replays the steps; every step must apply exactly as written
(nothing is searched for or skipped), and the result must equal the end word
letter for letter.  A checked derivation is then cross-examined by the
homology oracle and the abelianization before it is handed out as a
``VerifiedIdentity``.

Steps act at a 0-based position, at the leftmost letter of their pattern:

``swap @i``               t_c^e t_d^f -> t_d^f t_c^e        (geo(c, d) = 0, or c = d)
``braid @i``              t_c t_d t_c -> t_d t_c t_d        (geo(c, d) = 1, all signs equal)
``cancel @i``             t_c^e t_c^-e -> (nothing)
``insert c e @i``         (nothing) -> t_c^e t_c^-e
``subst name fwd|bwd @i`` one side of a named relation -> the other side
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import abelian, homology
from .surface import CurveConfig, builtin_config
from .words import TwistGen, TwistWord, exponent_sums, free_reduce, multiply, parse_word

RULES = ("swap", "braid", "cancel", "insert", "subst")

# relation name -> (configuration, lhs, rhs, allowed genus)
RELATIONS = {
    "chain": ("chain5", "a3 a2 a1 a3 a2 a1 a3 a2 a1 a3 a2 a1", "a4 a5", lambda g: g >= 3),
    "chain2": ("chain5", "a3 a2 a1 a3 a2 a1 a3 a2 a1 a3 a2 a1", "a5 a5", lambda g: g == 2),
    "lantern": ("lantern", "s a b c", "x y z", lambda g: g >= 3),
    "lantern2": ("lantern2", "a1 a1 a5 a5", "a3 s x", lambda g: g == 2),
    "twochain": ("twochain", "s", "a2 a1 a2 a1 a2 a1 a2 a1 a2 a1 a2 a1", lambda g: g == 2),
}


class RuleNotApplicable(ValueError):
    def __init__(self, position: int, reason: str):
        super().__init__(f"@{position}: {reason}")
        self.position = position
        self.reason = reason


class DerivationError(ValueError):
    def __init__(self, index: int, step: "RewriteStep | None", reason: str):
        where = f"step {index + 1} ({step})" if step is not None else f"after {index} steps"
        super().__init__(f"{where}: {reason}")
        self.index = index
        self.step = step
        self.reason = reason


class InternalConsistencyError(AssertionError):
    """A checked identity failed an independent necessary condition."""


@dataclass(frozen=True)
class RelationInstance:
    name: str
    lhs: TwistWord
    rhs: TwistWord
    config: CurveConfig


def relation(name: str, cfg: CurveConfig) -> RelationInstance:
    if name not in RELATIONS:
        raise KeyError(f"unknown relation {name!r}")
    cname, lhs, rhs, genus_ok = RELATIONS[name]
    if cfg.name != cname or not genus_ok(cfg.genus):
        raise KeyError(f"relation {name} is not available on {cfg.name} (genus {cfg.genus})")
    return RelationInstance(name, parse_word(lhs, cfg), parse_word(rhs, cfg), cfg)


def relations_for(cfg: CurveConfig) -> dict:
    out = {}
    for name, (cname, _, _, genus_ok) in RELATIONS.items():
        if cname == cfg.name and genus_ok(cfg.genus):
            out[name] = relation(name, cfg)
    return out


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    position: int
    args: tuple = ()

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")
        if self.rule == "insert":
            curve, sign = self.args
            if sign not in (1, -1):
                raise ValueError(f"insert sign must be +1 or -1, got {sign}")
        elif self.rule == "subst":
            name, direction = self.args
            if direction not in ("fwd", "bwd"):
                raise ValueError(f"subst direction must be fwd or bwd, got {direction!r}")
        elif self.args:
            raise ValueError(f"{self.rule} takes no arguments")

    def __str__(self):
        if self.rule == "insert":
            curve, sign = self.args
            return f"insert {curve} {sign:+d} @{self.position}"
        return " ".join([self.rule, *map(str, self.args), f"@{self.position}"])

    @classmethod
    def parse(cls, text: str) -> "RewriteStep":
        tok = text.split()
        if not tok or not tok[-1].startswith("@"):
            raise ValueError(f"step {text!r} must end with @<position>")
        try:
            pos = int(tok[-1][1:])
        except ValueError:
            raise ValueError(f"bad position in step {text!r}") from None
        rule, args = tok[0], tok[1:-1]
        if rule == "insert":
            if len(args) != 2:
                raise ValueError(f"insert needs <curve> <+1|-1>, got {text!r}")
            return cls(rule, pos, (args[0], int(args[1])))
        if rule == "subst":
            if len(args) != 2:
                raise ValueError(f"subst needs <relation> <fwd|bwd>, got {text!r}")
            return cls(rule, pos, (args[0], args[1]))
        return cls(rule, pos, tuple(args))


def _letters_at(w, i, n):
    if i < 0 or i + n > len(w):
        raise RuleNotApplicable(i, f"needs {n} letters but word has length {len(w)}")
    return w.letters[i:i + n]


def apply_rule(w: TwistWord, step: RewriteStep, cfg: CurveConfig | None = None) -> TwistWord:
    cfg = cfg or w.config
    i = step.position
    L = w.letters
    if step.rule == "swap":
        p, q = _letters_at(w, i, 2)
        if p.curve != q.curve:
            n = cfg.geo(p.curve, q.curve)
            if n != 0:
                raise RuleNotApplicable(i, f"{p.curve} and {q.curve} are not disjoint (geo = {'?' if n is None else n})")
        new = L[:i] + (q, p) + L[i + 2:]
    elif step.rule == "braid":
        p, q, r = _letters_at(w, i, 3)
        if p != r or p.curve == q.curve:
            raise RuleNotApplicable(i, f"{p} {q} {r} is not of the form c d c")
        if p.sign != q.sign:
            raise RuleNotApplicable(i, "braid needs all letters of the same sign")
        n = cfg.geo(p.curve, q.curve)
        if n != 1:
            raise RuleNotApplicable(i, f"{p.curve} and {q.curve} do not meet once (geo = {'?' if n is None else n})")
        new = L[:i] + (q, p, q) + L[i + 3:]
    elif step.rule == "cancel":
        p, q = _letters_at(w, i, 2)
        if q != p.inverse():
            raise RuleNotApplicable(i, f"{p} {q} is not a cancelling pair")
        new = L[:i] + L[i + 2:]
    elif step.rule == "insert":
        if not 0 <= i <= len(w):
            raise RuleNotApplicable(i, f"insert position outside 0..{len(w)}")
        curve, sign = step.args
        gen = TwistGen(cfg.resolve(curve), sign)
        new = L[:i] + (gen, gen.inverse()) + L[i:]
    else:
        name, direction = step.args
        try:
            rel = relation(name, cfg)
        except KeyError as exc:
            raise RuleNotApplicable(i, exc.args[0]) from None
        old, repl = (rel.lhs, rel.rhs) if direction == "fwd" else (rel.rhs, rel.lhs)
        if _letters_at(w, i, len(old)) != old.letters:
            raise RuleNotApplicable(i, f"{name} {direction}: '{old}' does not occur verbatim")
        new = L[:i] + repl.letters + L[i + len(old):]
    return TwistWord(cfg, new)


@dataclass(frozen=True)
class Derivation:
    config: CurveConfig
    start: TwistWord
    steps: tuple
    end: TwistWord
    name: str = ""

    def replay(self):
        """Yield (step, word after step); raise DerivationError at the first bad step."""
        w = self.start
        for k, step in enumerate(self.steps):
            try:
                w = apply_rule(w, step, self.config)
            except RuleNotApplicable as exc:
                raise DerivationError(k, step, exc.reason) from None
            yield step, w


@dataclass(frozen=True)
class VerifiedIdentity:
    lhs: TwistWord
    rhs: TwistWord
    config: CurveConfig
    derivation: Derivation
    trace: tuple
    oracle: str
    abelianization: dict
    parents: tuple = field(default=())

    @property
    def name(self) -> str:
        return self.derivation.name

    def provenance(self) -> dict:
        record = {
            "step": "identity",
            "derivation": self.derivation.name,
            "config": f"{self.config.name} g={self.config.genus}",
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "start": str(self.derivation.start),
            "end": str(self.derivation.end),
            "trace": [f"{s} => {w}" for s, w in self.trace],
            "oracle": self.oracle,
            "abelianization": dict(self.abelianization),
            "checked": "rewrite",
        }
        if self.parents:
            record["derived_from"] = [p.provenance() for p in self.parents]
        return record


def _cross_check(lhs: TwistWord, rhs: TwistWord, cfg: CurveConfig):
    verdict = homology.check_identity(lhs, rhs, cfg)
    if verdict == homology.FAIL:
        raise InternalConsistencyError(f"homology images differ for '{lhs}' = '{rhs}'")
    spec = abelian.GroupSpec(abelian.FULL, cfg.genus)
    a, b = abelian.ab_image(lhs, spec, cfg), abelian.ab_image(rhs, spec, cfg)
    if a != b:
        raise InternalConsistencyError(f"abelianization images {a} != {b} mod {spec.order} for '{lhs}' = '{rhs}'")
    return verdict, {"N": spec.order, "residues": [a, b]}


def check_derivation(d: Derivation) -> VerifiedIdentity:
    trace = []
    w = d.start
    for step, w in d.replay():
        trace.append((str(step), str(w)))
    if w.letters != d.end.letters:
        raise DerivationError(len(d.steps), None, f"replay ends at '{w}', expected '{d.end}'")
    verdict, ab = _cross_check(d.start, d.end, d.config)
    return VerifiedIdentity(d.start, d.end, d.config, d, tuple(trace), verdict, ab)


def normalize_goal(v: VerifiedIdentity, left: TwistWord | None = None, right: TwistWord | None = None,
                   reduce: bool = False) -> VerifiedIdentity:
    """Multiply both sides of a verified identity by the same words."""
    left = left if left is not None else TwistWord(v.config)
    right = right if right is not None else TwistWord(v.config)
    lhs = multiply(multiply(left, v.lhs), right)
    rhs = multiply(multiply(left, v.rhs), right)
    if reduce:
        lhs, rhs = free_reduce(lhs), free_reduce(rhs)
    if left.is_empty() and right.is_empty() and not reduce:
        return v
    verdict, ab = _cross_check(lhs, rhs, v.config)
    name = f"{v.name}*" if v.name else "derived"
    d = Derivation(v.config, lhs, (), rhs, name)
    note = (("left-multiply", str(left)), ("right-multiply", str(right)), ("free-reduce", str(reduce)))
    return VerifiedIdentity(lhs, rhs, v.config, d, note, verdict, ab, (v,))


def relation_identity(name: str, cfg: CurveConfig) -> VerifiedIdentity:
    rel = relation(name, cfg)
    return check_derivation(Derivation(cfg, rel.lhs, (RewriteStep("subst", 0, (name, "fwd")),), rel.rhs, name))


# Scripts reconstruct the word manipulations by hand; they are checked, not searched.
_CHAIN_REARRANGE = ["swap @4", "swap @10", "braid @5", "braid @8", "braid @3", "braid @10"]
_TWOCHAIN_REARRANGE = ["braid @2", "braid @5", "braid @3", "braid @10"]

SCRIPTS = {
    "D1": ("chain5", "a4 a5 a3' a3' a1' a1'", "a2 a3 a1 a2 a2 a3 a1 a2",
           ["swap @1", "swap @0", "swap @2", "swap @1", "subst chain bwd @2", *_CHAIN_REARRANGE,
            "cancel @1", "cancel @0", "cancel @9", "cancel @8"]),
    "D1'": ("chain5", "a5 a5 a3' a3' a1' a1'", "a2 a3 a1 a2 a2 a3 a1 a2",
            ["swap @1", "swap @0", "swap @2", "swap @1", "subst chain2 bwd @2", *_CHAIN_REARRANGE,
             "cancel @1", "cancel @0", "cancel @9", "cancel @8"]),
    "D2": ("lantern", "s a b c z'", "x y", ["subst lantern fwd @0", "cancel @2"]),
    "D3": ("lantern2", "a1 a1 a5 a5 a3'", "s x",
           ["swap @3", "swap @2", "swap @1", "swap @0", "subst lantern2 fwd @1", "cancel @0"]),
    "D4": ("twochain", "s a1' a1' a1' a1'", "a2 a1 a1 a2 a2 a1 a1 a2",
           ["swap @0", "swap @1", "subst twochain fwd @2", *_TWOCHAIN_REARRANGE,
            "cancel @1", "cancel @0", "cancel @9", "cancel @8"]),
}

DEFAULT_GENUS = {"D1": 3, "D1'": 2, "D2": 3, "D3": 2, "D4": 2}


def builtin_derivation(name: str, g: int | None = None, h: int = 1) -> Derivation:
    if name not in SCRIPTS:
        raise KeyError(f"unknown derivation {name!r}; expected one of {', '.join(SCRIPTS)}")
    cname, start, end, steps = SCRIPTS[name]
    g = DEFAULT_GENUS[name] if g is None else g
    if name == "D1" and g < 3:
        raise ValueError("D1 needs genus >= 3; use D1' in genus 2")
    cfg = builtin_config(cname, g, h)
    return Derivation(cfg, parse_word(start, cfg), tuple(RewriteStep.parse(s) for s in steps),
                      parse_word(end, cfg), name)


def builtin_derivations() -> list:
    return [builtin_derivation(name) for name in SCRIPTS]


def chain_derivation(g: int) -> Derivation:
    """The chain rearrangement appropriate to genus g (D1' in genus 2, D1 above)."""
    return builtin_derivation("D1'" if g == 2 else "D1", g)


def parse_script(text: str) -> Derivation:
    """Read a derivation script.

    Directives: ``config: <name> g=<n> [h=<k>]``, ``start: <word>``,
    ``end: <word>``, ``name: <label>`` and one ``step: <rule> [args] @<i>``
    per step; ``#`` starts a comment.
    """
    cfg = start = end = None
    name = ""
    steps = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected '<key>: <value>'")
        key, value = key.strip(), value.strip()
        if key == "config":
            tok = value.split()
            opts = dict(t.split("=", 1) for t in tok[1:])
            cfg = builtin_config(tok[0], int(opts["g"]), int(opts.get("h", 1)))
        elif key == "name":
            name = value
        elif key in ("start", "end", "step"):
            if cfg is None:
                raise ValueError(f"line {lineno}: {key} before config")
            if key == "step":
                steps.append(RewriteStep.parse(value))
            elif key == "start":
                start = parse_word(value, cfg)
            else:
                end = parse_word(value, cfg)
        else:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
    if cfg is None or start is None or end is None:
        raise ValueError("script needs config, start and end")
    return Derivation(cfg, start, tuple(steps), end, name)


def format_script(d: Derivation) -> str:
    h = next((c.h for c in d.config.curves if c.separating), 1)
    head = f"config: {d.config.name} g={d.config.genus}" + (f" h={h}" if d.config.name == "lantern" else "")
    lines = [head]
    if d.name:
        lines.append(f"name: {d.name}")
    lines += [f"start: {d.start}", f"end: {d.end}"]
    lines += [f"step: {s}" for s in d.steps]
    return "\n".join(lines) + "\n"


def exponent_delta(name: str, cfg: CurveConfig) -> dict:
    """Exponent sums of rhs minus lhs for a named relation."""
    rel = relation(name, cfg)
    a, b = exponent_sums(rel.lhs), exponent_sums(rel.rhs)
    return {k: b[k] - a[k] for k in a}
