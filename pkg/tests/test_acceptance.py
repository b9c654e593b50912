"""One test per acceptance criterion; the PASS/FAIL summary is printed by conftest."""
import random
from fractions import Fraction as F

import numpy as np
import pytest

from sclcert.abelian import FULL, HYPERELLIPTIC, GroupSpec, ab_image, min_power_in_commutator, separating_weight
from sclcert.certificates import bounds, check_refutation, genus2_chain, strictness_check
from sclcert.cli import main
from sclcert.homology import FAIL, PASS, VACUOUS, check_identity, is_symplectic, transvection, word_image
from sclcert.lefschetz import CycleClass, endo_kotschick, scl_lower_bound
from sclcert.quasimorphism import NU, nu_sigma_relation, nonseparating_upper, run_pipeline, separating_upper, sigma
from sclcert.rewriting import (
    RELATIONS, RULES, Derivation, DerivationError, RewriteStep, RuleNotApplicable, apply_rule, builtin_derivation,
    check_derivation, format_script, parse_script, relation_identity,
)
from sclcert.surface import builtin_config
from sclcert.words import parse_word

from helpers import all_configs, random_applicable, rng


def test_criterion_01_derivation_suite():
    ds = [builtin_derivation("D1", g) for g in (3, 4, 5)]
    ds += [builtin_derivation(n) for n in ("D1'", "D2", "D3", "D4")]
    for d in ds:
        v = check_derivation(d)
        assert v.oracle in (PASS, VACUOUS)
        a, b = v.abelianization["residues"]
        assert a == b
    d4 = check_derivation(builtin_derivation("D4"))
    cfg = d4.config
    assert d4.lhs == parse_word("s a1' a1' a1' a1'", cfg)
    assert d4.rhs == parse_word("a2 a1 a1 a2", cfg) ** 2


def test_criterion_02_upper_bounds():
    for g in range(2, 11):
        b = nonseparating_upper(g)
        assert (b.target, b.kind, b.value) == (NU, "upper", F(1, 10))
    for g in range(3, 11):
        for h in range(1, g // 2 + 1):
            b = separating_upper(g, h)
            assert (b.target, b.kind, b.value) == (sigma(h), "upper", F(1, 2))
    b = run_pipeline("thm1-sep-g2", 2)
    assert (b.target, b.kind, b.value) == (sigma(1), "upper", F(7, 10))


def test_criterion_03_lower_bounds():
    for g in range(2, 51):
        assert scl_lower_bound(g, CycleClass()).threshold == F(1, 4 * (2 * g + 1))
        for h in range(1, g // 2 + 1):
            assert scl_lower_bound(g, CycleClass(h)).threshold == F(h * (g - h), g * (2 * g + 1))
    assert scl_lower_bound(2, CycleClass()).threshold == F(1, 20)
    assert scl_lower_bound(2, CycleClass(1)).threshold == F(1, 10)


def test_criterion_04_genus2_chain_and_strictness():
    rows = {r.target: r for r in bounds(2, "m")}
    assert (rows[NU].lower, rows[NU].upper) == (F(1, 20), F(1, 10))
    assert (rows[sigma(1)].lower, rows[sigma(1)].upper) == (F(1, 10), F(7, 10))
    assert genus2_chain()["text"] == "1/20 <= scl(t_c) <= 1/10 <= scl(t_s) <= 7/10"
    cert = strictness_check(2)
    assert not cert.result.feasible and cert.distinct
    assert cert.intermediate == F(1, 11)
    assert check_refutation(cert.system, cert.result.refutation)


def test_criterion_05_nu_sigma_relation():
    rel = nu_sigma_relation()
    assert (rel.pivot, rel.coefficient, rel.terms, rel.constant) == (NU, 6, {sigma(1): F(1, 2)}, F(1, 2))
    assert str(rel) == "6*scl(nu) <= 1/2*scl(sigma_1) + 1/2"


def test_criterion_06_oracle_properties():
    rnd = random.Random(2026)
    for _ in range(1000):
        g = rnd.randint(1, 5)
        v = [rnd.randint(-6, 6) for _ in range(2 * g)]
        assert is_symplectic(transvection(v, rnd.choice((1, -1))))
    seen = 0
    for name, (cfg_name, _, _, allowed) in RELATIONS.items():
        for g in range(2, 6):
            if allowed(g):
                cfg = builtin_config(cfg_name, g)
                v = relation_identity(name, cfg)
                assert check_identity(v.lhs, v.rhs, cfg) != FAIL
                seen += 1
    assert seen >= len(RELATIONS)
    r = rng(6)
    for rule in RULES:
        done = 0
        while done < 100:
            for cfg in all_configs():
                got = random_applicable(cfg, rule, r)
                if got is None:
                    continue
                w, step = got
                assert np.array_equal(word_image(w), word_image(apply_rule(w, step)))
                done += 1


def test_criterion_07_abelianization():
    two = builtin_config("twochain", 2)
    m2 = GroupSpec(FULL, 2)
    assert ab_image(parse_word("a2 a1", two) ** 6, m2) == 2
    assert min_power_in_commutator(1, m2) == 10
    assert min_power_in_commutator(separating_weight(1), m2) == 5
    for g in range(2, 11):
        hg = GroupSpec(HYPERELLIPTIC, g)
        assert min_power_in_commutator(1, hg) == 4 * (2 * g + 1)
        for h in range(1, g // 2 + 1):
            assert (4 * (2 * g + 1)) % min_power_in_commutator(separating_weight(h), hg) == 0


def test_criterion_08_improves_on_comparison():
    for g in range(2, 51):
        for cls in [CycleClass()] + [CycleClass(h) for h in range(1, g // 2 + 1)]:
            assert scl_lower_bound(g, cls).threshold > endo_kotschick(g) == F(1, 18 * g - 6)


def test_criterion_09_negative():
    c3 = builtin_config("chain5", 3)
    crafted = {
        "swap": ("a1 a2", "swap @0"),
        "braid": ("a1 a2' a1", "braid @0"),
        "cancel": ("a1 a1", "cancel @0"),
        "insert": ("a1", "insert a2 +1 @5"),
        "subst": ("a3 a2 a1", "subst chain fwd @0"),
    }
    assert set(crafted) == set(RULES)
    for word, step in crafted.values():
        with pytest.raises(RuleNotApplicable):
            apply_rule(parse_word(word, c3), RewriteStep.parse(step))
    text = format_script(builtin_derivation("D1", 3))
    lines = text.splitlines()
    step_lines = [i for i, line in enumerate(lines) if line.startswith("step:")]
    assert lines[step_lines[5]] == "step: swap @4"
    lines[step_lines[5]] = "step: swap @3"
    with pytest.raises(DerivationError) as exc:
        check_derivation(parse_script("\n".join(lines)))
    assert exc.value.index == 5
    weak = strictness_check(2, lower=F(1, 12))
    assert weak.result.feasible and not weak.distinct


def test_criterion_10_deterministic_certificates(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["derive", "thm1-nonsep", "--genus", "4", "--emit", str(a)]) == 0
    assert main(["derive", "thm1-nonsep", "--genus", "4", "--emit", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
