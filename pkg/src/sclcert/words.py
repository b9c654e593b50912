"""Words in signed Dehn-twist generators.

Words are plain letter sequences tied to a configuration.  They are never
reduced behind the caller's back: a derivation has to reproduce displayed
intermediate words letter for letter, uncancelled pairs included.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .surface import CurveConfig


class WordError(ValueError):
    pass


@dataclass(frozen=True)
class TwistGen:
    curve: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise WordError(f"sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> "TwistGen":
        return TwistGen(self.curve, -self.sign)

    def __str__(self):
        return self.curve if self.sign == 1 else self.curve + "'"


class TwistWord:
    __slots__ = ("config", "letters")

    def __init__(self, config: CurveConfig, letters=()):
        resolved = []
        for g in letters:
            if not isinstance(g, TwistGen):
                g = TwistGen(*g) if isinstance(g, tuple) else TwistGen(g)
            resolved.append(TwistGen(config.resolve(g.curve), g.sign))
        self.config = config
        self.letters = tuple(resolved)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return TwistWord(self.config, self.letters[item])
        return self.letters[item]

    def __eq__(self, other):
        if not isinstance(other, TwistWord):
            return NotImplemented
        return self.letters == other.letters and self.config == other.config

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other):
        return multiply(self, other)

    def __pow__(self, n: int):
        if n < 0:
            return invert(self) ** (-n)
        return TwistWord(self.config, self.letters * n)

    def __str__(self):
        return " ".join(str(g) for g in self.letters)

    def __repr__(self):
        return f"TwistWord({str(self)!r})"

    def is_empty(self) -> bool:
        return not self.letters


def parse_word(text: str, cfg: CurveConfig) -> TwistWord:
    """Parse ``"a4 a5 a3' a3'"``; a trailing prime marks an inverse twist."""
    letters = []
    for tok in text.split():
        sign = 1
        while tok.endswith("'"):
            tok, sign = tok[:-1], -sign
        if not tok:
            raise WordError(f"empty generator in {text!r}")
        letters.append(TwistGen(tok, sign))
    return TwistWord(cfg, letters)


def word(cfg: CurveConfig, text: str) -> TwistWord:
    return parse_word(text, cfg)


def _same_config(u: TwistWord, v: TwistWord) -> None:
    if u.config is not v.config and u.config != v.config:
        raise WordError(f"words live on different configurations ({u.config.name}, {v.config.name})")


def multiply(u: TwistWord, v: TwistWord) -> TwistWord:
    _same_config(u, v)
    return TwistWord(u.config, u.letters + v.letters)


def invert(w: TwistWord) -> TwistWord:
    return TwistWord(w.config, tuple(g.inverse() for g in reversed(w.letters)))


def free_reduce(w: TwistWord) -> TwistWord:
    stack = []
    for g in w.letters:
        if stack and stack[-1] == g.inverse():
            stack.pop()
        else:
            stack.append(g)
    return TwistWord(w.config, stack)


def exponent_sums(w: TwistWord) -> dict:
    sums = Counter({cid: 0 for cid in w.config.ids})
    for g in w.letters:
        sums[g.curve] += g.sign
    return dict(sums)


def conjugate(u: TwistWord, w: TwistWord) -> TwistWord:
    """The word u w u^-1 (unreduced)."""
    return multiply(multiply(u, w), invert(u))
