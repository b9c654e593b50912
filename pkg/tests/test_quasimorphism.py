from fractions import Fraction as F

import pytest

from sclcert.quasimorphism import (
    NU, CalculusError, DefectInequality, MissingBound, NonCommutingLetters, PhiClass, PhiEval, PhiForm,
    SclBound, UncertifiedFactorization, bavard_relative, bavard_single, compose_bounds, defect_split,
    evaluate_commuting, genus2_separating_relation, nu_sigma_relation, nonseparating_upper,
    phi_commuting_word, phi_conj_invariant, phi_of_power_root, provenance_complete, root_eval, run_pipeline,
    separating_upper, sigma,
)
from sclcert.rewriting import builtin_derivation, check_derivation
from sclcert.surface import builtin_config
from sclcert.words import TwistWord, parse_word

S1 = sigma(1)


def form(**kw):
    return PhiForm({NU if k == "nu" else sigma(int(k[1:])): F(v) for k, v in kw.items()})


def ev(word, f):
    return PhiEval(word, f, ({"step": "given"},))


def test_phi_commuting_word(chain3, twochain):
    assert phi_commuting_word(parse_word("a4 a5 a3' a3' a1' a1'", chain3)) == form(nu=-2)
    assert phi_commuting_word(parse_word("s a1' a1' a1' a1'", twochain)) == form(s1=1, nu=-4)
    with pytest.raises(NonCommutingLetters):
        phi_commuting_word(parse_word("a1 a2", chain3))


def test_phi_commuting_word_genus_normalised():
    cfg = builtin_config("lantern", 5, 2)
    assert phi_commuting_word(parse_word("s", cfg)) == PhiForm.of(sigma(2))


def test_power_root():
    assert phi_of_power_root(form(nu=-2), 2) == form(nu=-1)
    assert phi_of_power_root(form(s1=1, nu=-4), 2) == form(s1=F(1, 2), nu=-2)
    assert phi_of_power_root(form(nu=3), 1) == form(nu=3)
    with pytest.raises(CalculusError):
        phi_of_power_root(form(nu=1), 0)


def test_form_arithmetic_and_canonical():
    assert (form(nu=1) - form(nu=1)).coeffs == {}
    assert str(form(s1=F(1, 2), nu=-6)) == "1/2*sigma_1 - 6*nu"
    assert str(form(nu=-1)) == "-nu"


def test_conjugation_transfer(chain3, twochain):
    Y = ev(parse_word("a2 a3 a1 a2", chain3), form(nu=-1))
    c = phi_conj_invariant(parse_word("a2", chain3), Y)
    assert str(c.word) == "a2 a2 a3 a1"
    assert c.form == form(nu=-1)
    Z = ev(parse_word("a2 a1 a1 a2", twochain), form(s1=F(1, 2), nu=-2))
    c = phi_conj_invariant(parse_word("a2", twochain), Z)
    assert str(c.word) == "a2 a2 a1 a1"
    assert c.form == form(s1=F(1, 2), nu=-2)
    same = phi_conj_invariant(TwistWord(chain3), Y)
    assert same.word == Y.word and same.form == Y.form


def test_defect_split_examples(chain3, lantern3, twochain):
    d = defect_split(ev(parse_word("a2 a2 a3 a1", chain3), form(nu=-1)),
                     evaluate_commuting(parse_word("a2 a2", chain3)),
                     evaluate_commuting(parse_word("a3 a1", chain3)))
    assert d.form == form(nu=-5) and d.slack == 1
    d = defect_split(ev(parse_word("x y", lantern3), form(s1=1, nu=2)),
                     evaluate_commuting(parse_word("x", lantern3)), evaluate_commuting(parse_word("y", lantern3)))
    assert d.form == form(s1=1)
    d = defect_split(ev(parse_word("a2 a2 a1 a1", twochain), form(s1=F(1, 2), nu=-2)),
                     evaluate_commuting(parse_word("a2 a2", twochain)),
                     evaluate_commuting(parse_word("a1 a1", twochain)))
    assert d.form == form(s1=F(1, 2), nu=-6)


def test_defect_split_needs_literal_factorization(chain3):
    whole = ev(parse_word("a2 a2 a3 a1", chain3), form(nu=-1))
    with pytest.raises(UncertifiedFactorization):
        defect_split(whole, evaluate_commuting(parse_word("a3 a1", chain3)),
                     evaluate_commuting(parse_word("a2 a2", chain3)))
    with pytest.raises(UncertifiedFactorization):
        defect_split(PhiEval(whole.word, whole.form, ()), evaluate_commuting(parse_word("a2 a2", chain3)),
                     evaluate_commuting(parse_word("a3 a1", chain3)))


def test_root_eval_needs_literal_power(chain3):
    with pytest.raises(UncertifiedFactorization):
        root_eval(ev(parse_word("a1 a2 a1", chain3), form(nu=3)), 2)


def test_bavard_single():
    assert bavard_single(DefectInequality(form(nu=5), 1, 2)).value == F(1, 10)
    assert bavard_single(DefectInequality(form(nu=-5), 1, 2)).value == F(1, 10)
    assert bavard_single(DefectInequality(form(s1=1), 1, 3)).value == F(1, 2)
    assert bavard_single(DefectInequality(form(nu=2), 0, 2)).value == 0
    with pytest.raises(CalculusError):
        bavard_single(DefectInequality(form(nu=1, s1=1), 1, 2))


def test_bavard_relative():
    r = bavard_relative(DefectInequality(form(s1=F(1, 2), nu=-6), 1, 2), NU)
    assert (r.coefficient, r.terms, r.constant) == (6, {S1: F(1, 2)}, F(1, 2))
    r = bavard_relative(DefectInequality(form(nu=2, s1=-1), 1, 2), S1)
    assert (r.coefficient, r.terms, r.constant) == (1, {NU: 2}, F(1, 2))
    r = bavard_relative(DefectInequality(form(nu=1), 1, 2), NU)
    assert (r.coefficient, r.terms, r.constant) == (1, {}, F(1, 2))
    with pytest.raises(CalculusError):
        bavard_relative(DefectInequality(form(nu=1), 1, 2), S1)


@pytest.mark.parametrize("c,k", [(F(5), F(1)), (F(1, 3), F(2)), (F(7, 2), F(0))])
def test_relative_agrees_with_single(c, k):
    ineq = DefectInequality(form(nu=c), k, 2)
    rel = bavard_relative(ineq, NU)
    assert compose_bounds(rel, []).value == bavard_single(ineq).value


def test_compose_bounds():
    rel = bavard_relative(DefectInequality(form(nu=2, s1=-1), 1, 2), S1)
    assert compose_bounds(rel, [SclBound(NU, "upper", F(1, 10), 2)]).value == F(7, 10)
    rel = bavard_relative(DefectInequality(form(s1=F(1, 2), nu=-6), 1, 2), NU)
    # (1/2 * 7/10 + 1/2) / 6 = (17/20) / 6
    assert compose_bounds(rel, [SclBound(S1, "upper", F(7, 10), 2)]).value == F(17, 120)
    with pytest.raises(MissingBound):
        compose_bounds(rel, [])


@pytest.mark.parametrize("g", range(2, 11))
def test_nonseparating_pipeline(g):
    b = nonseparating_upper(g)
    assert (b.target, b.kind, b.value) == (NU, "upper", F(1, 10))
    assert provenance_complete(b)


def test_separating_pipelines():
    for g in range(3, 9):
        for h in range(1, g // 2 + 1):
            b = separating_upper(g, h)
            assert (b.target, b.value) == (sigma(h), F(1, 2))
            assert provenance_complete(b)
    with pytest.raises(CalculusError):
        separating_upper(2)


def test_genus2_pipelines():
    rel = genus2_separating_relation()
    assert str(rel) == "scl(sigma_1) <= 2*scl(nu) + 1/2"
    b = run_pipeline("thm1-sep-g2", 2)
    assert b.value == F(7, 10) and b.target == S1
    assert provenance_complete(b)
    rel = nu_sigma_relation()
    assert str(rel) == "6*scl(nu) <= 1/2*scl(sigma_1) + 1/2"
    assert provenance_complete(rel)
    with pytest.raises(CalculusError):
        run_pipeline("lemma3", 3)
    with pytest.raises(CalculusError):
        run_pipeline("nope", 2)


def test_provenance_requires_identity():
    assert not provenance_complete(SclBound(NU, "upper", F(1, 10), 2))


def test_phi_class_parse():
    assert PhiClass.parse("nu") == NU
    assert PhiClass.parse("sigma_2") == sigma(2)
    assert PhiClass.separating(4, 5) == sigma(1)
