"""Random words and random applicable rewrite steps for property tests."""
import random

import numpy as np

from sclcert.rewriting import RewriteStep, relations_for
from sclcert.surface import builtin_config, omega
from sclcert.words import TwistGen, TwistWord

CONFIGS = [("chain5", 2), ("chain5", 3), ("chain5", 4), ("lantern", 3), ("lantern", 4),
           ("lantern2", 2), ("twochain", 2)]


def all_configs():
    return [builtin_config(name, g) for name, g in CONFIGS]


def random_word(cfg, rng, length=None):
    length = rng.randint(0, 12) if length is None else length
    return TwistWord(cfg, [TwistGen(rng.choice(cfg.ids), rng.choice((1, -1))) for _ in range(length)])


def _plant(cfg, rng, letters):
    w = random_word(cfg, rng)
    i = rng.randint(0, len(w))
    return TwistWord(cfg, w.letters[:i] + tuple(letters) + w.letters[i:]), i


def random_applicable(cfg, rule, rng):
    """A (word, step) pair where ``rule`` applies, or None if the config has no instance."""
    ids = cfg.ids
    if rule == "swap":
        pairs = [(a, b) for a in ids for b in ids if a == b or cfg.geo(a, b) == 0]
        a, b = rng.choice(pairs)
        w, i = _plant(cfg, rng, [TwistGen(a, rng.choice((1, -1))), TwistGen(b, rng.choice((1, -1)))])
        return w, RewriteStep("swap", i)
    if rule == "braid":
        pairs = [(a, b) for a in ids for b in ids if a != b and cfg.geo(a, b) == 1]
        if not pairs:
            return None
        a, b = rng.choice(pairs)
        e = rng.choice((1, -1))
        w, i = _plant(cfg, rng, [TwistGen(a, e), TwistGen(b, e), TwistGen(a, e)])
        return w, RewriteStep("braid", i)
    if rule == "cancel":
        gen = TwistGen(rng.choice(ids), rng.choice((1, -1)))
        w, i = _plant(cfg, rng, [gen, gen.inverse()])
        return w, RewriteStep("cancel", i)
    if rule == "insert":
        w = random_word(cfg, rng)
        return w, RewriteStep("insert", rng.randint(0, len(w)), (rng.choice(ids), rng.choice((1, -1))))
    rels = relations_for(cfg)
    if not rels:
        return None
    name = rng.choice(sorted(rels))
    direction = rng.choice(("fwd", "bwd"))
    side = rels[name].lhs if direction == "fwd" else rels[name].rhs
    w, i = _plant(cfg, rng, side.letters)
    return w, RewriteStep("subst", i, (name, direction))


def naive_image(w, cfg):
    """Sp image by pushing basis vectors through x -> x + e <x, v> v, rightmost letter first."""
    n = 2 * cfg.genus
    cols = []
    for k in range(n):
        x = [int(i == k) for i in range(n)]
        for gen in reversed(w.letters):
            v = cfg.curve(gen.curve).homology
            p = omega(x, v)
            x = [xi + gen.sign * p * vi for xi, vi in zip(x, v)]
        cols.append(x)
    return np.array(cols, dtype=object).T


def rng(seed=0):
    return random.Random(seed)
