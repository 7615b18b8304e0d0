import pytest

from chevlab.factorize import (
    CaseMismatch,
    ConditionStar,
    NotShortRoot,
    ParabolicData,
    ResidueFieldF2,
    condition_star,
    levi_commutator_check,
    long_root_decomposition,
    long_word_factor_count,
    main_lemma_word,
    mixed_commutator_generators,
    relative_generators,
    unit_decompose,
)
from chevlab.reps import get_representation
from chevlab.rings import Ideal, Ring, enumerate_elements
from chevlab.roots import MainLemmaCase, get_system
from chevlab.words import LICENSED_TAGS, certificate_tags, evaluate

SYMBOLIC = Ring.polynomial(Ring.integers(), ("xi", "zeta", "eta"))
XI, ZETA, ETA = SYMBOLIC.vars()
IDEAL_I = Ideal.of(SYMBOLIC, [XI])
IDEAL_J = Ideal.of(SYMBOLIC, [ZETA])


@pytest.mark.parametrize("case", list(MainLemmaCase))
def test_main_lemma_symbolic(case):
    rep = get_representation(case.system_tag)
    fact = main_lemma_word(case, XI, ZETA, ETA, IDEAL_I, IDEAL_J)
    assert fact.verify(rep, SYMBOLIC, IDEAL_I, IDEAL_J)
    allowed = {t.__name__ for t in LICENSED_TAGS}
    for _, cert in fact.factors:
        assert certificate_tags(cert) <= allowed


def test_main_lemma_trivial_inputs():
    fact = main_lemma_word(MainLemmaCase.A2, SYMBOLIC.zero, ZETA, ETA, IDEAL_I, IDEAL_J)
    assert fact.factors == ()
    rep = get_representation("A2")
    assert evaluate(fact.target, rep, SYMBOLIC).is_identity
    fact = main_lemma_word(MainLemmaCase.A2, XI, ZETA, SYMBOLIC.zero, IDEAL_I, IDEAL_J)
    assert fact.factors == ()
    assert evaluate(fact.target, rep, SYMBOLIC).is_identity


def test_main_lemma_requires_membership():
    with pytest.raises(Exception):
        main_lemma_word(MainLemmaCase.A2, ETA, ZETA, XI, IDEAL_I, IDEAL_J)


def test_main_lemma_finite_ring_c2():
    ring = Ring.mod(9)
    ideal = Ideal.of(ring, [3])
    rep = get_representation("C2")
    for case in (MainLemmaCase.C2_LONG, MainLemmaCase.C2_SHORT):
        for xi in ideal.element_values():
            for zeta in ideal.element_values():
                for eta in enumerate_elements(ring):
                    fact = main_lemma_word(case, xi, zeta, eta, ideal, ideal)
                    assert fact.verify(rep, ring, ideal, ideal)


def test_unit_decompose_examples():
    z9 = Ring.mod(9)
    pairs = unit_decompose(z9)
    assert [(t.payload, r.payload) for t, r in pairs] == [(2, 5)]
    z27 = Ring.mod(27)
    pairs = unit_decompose(z27)
    assert [(t.payload, r.payload) for t, r in pairs] == [(2, 14)]
    with pytest.raises(ResidueFieldF2):
        unit_decompose(Ring.mod(4))


def test_long_root_c2_symbolic():
    ring = Ring.polynomial(Ring.integers(), ("xi",))
    (xi,) = ring.vars()
    ideal = Ideal.of(ring, [xi])
    rep = get_representation("C2")
    system = rep.system
    for beta in system.short_roots:
        word = long_root_decomposition(beta, xi, ideal, ring)
        assert evaluate(word, rep, ring) == rep.x(beta, xi)
        assert long_word_factor_count(word) <= 3
    with pytest.raises(NotShortRoot):
        long_root_decomposition(system.root((0, 1)), xi, ideal, ring)


def test_long_root_zero_coefficient():
    ring = Ring.polynomial(Ring.integers(), ("xi",))
    ideal = Ideal.of(ring, [ring.vars()[0]])
    system = get_system("C2")
    word = long_root_decomposition(system.root((1, 0)), ring.zero, ideal, ring)
    assert word.is_empty


def test_long_root_g2_exhaustive_z9():
    ring = Ring.mod(9)
    ideal = Ideal.of(ring, [3])
    rep = get_representation("G2")
    system = rep.system
    assert len(ideal.element_values()) == 3
    for beta in system.short_roots:
        for xi in ideal.element_values():
            word = long_root_decomposition(beta, xi, ideal, ring)
            assert evaluate(word, rep, ring) == rep.x(beta, xi)
            assert long_word_factor_count(word) <= 6


def test_long_root_g2_needs_odd_ring():
    ring = Ring.mod(4)
    ideal = Ideal.of(ring, [2])
    system = get_system("G2")
    with pytest.raises(ResidueFieldF2):
        long_root_decomposition(system.root((1, 0)), ring.element(2), ideal, ring)


def test_relative_generator_grid():
    ring = Ring.mod(8)
    ideal = Ideal.of(ring, [2])
    words = relative_generators("A2", ideal)
    assert len(words) == 6 * 4 * 8
    zero_ideal = Ideal.of(ring, [0])
    rep = get_representation("A2")
    for w in relative_generators("A2", zero_ideal):
        assert evaluate(w, rep, ring).is_identity


def test_relative_generators_stay_in_congruence_subgroup():
    from chevlab.reps import congruence_level_test
    from chevlab.subgroups import closure

    ring = Ring.mod(8)
    ideal = Ideal.of(ring, [2])
    rep = get_representation("A2")
    sub = closure(relative_generators("A2", ideal), rep, ring, bound=10**6)
    import numpy as np

    for mat in sub.stack:
        assert not np.any((mat - np.eye(3, dtype=np.int64)) % 2)


def test_mixed_generator_family():
    ring = Ring.mod(8)
    fam = mixed_commutator_generators("A2", Ideal.of(ring, [2]), Ideal.of(ring, [4]))
    per_bullet = {b: 0 for b in (1, 2, 3)}
    for item in fam.items:
        per_bullet[item.bullet] += 1
    assert per_bullet == {1: 384, 2: 384, 3: 384}  # 6*4*2*8 grid entries each
    rep = get_representation("A2")
    ideal_i, ideal_j = Ideal.of(ring, [2]), Ideal.of(ring, [4])
    from chevlab.words import validate_certificate

    for item in fam.items:
        if item.bullet == 1:
            assert item.certificate is None
        else:
            assert validate_certificate(
                item.certificate, item.word, ideal_i, ideal_j, rep, ring
            )


def test_condition_star_values():
    star = condition_star("C2", Ring.mod(27))
    assert star.satisfied is True
    star = condition_star("C2", Ring.mod(8))
    assert star.satisfied is False
    star = condition_star("G2", Ring.mod(9))
    assert star.satisfied is True
    star = condition_star("A2", Ring.mod(8))
    assert star.satisfied is True and not star.applies


def test_mixed_generators_warn_when_star_fails():
    ring = Ring.mod(4)
    fam = mixed_commutator_generators("C2", Ideal.of(ring, [2]), Ideal.of(ring, [2]))
    assert fam.warnings


def test_parabolic_data_shape():
    system = get_system("G2")
    p = ParabolicData.for_simple(system, 2)
    assert len(p.U_roots) == 5 and len(p.U_minus_roots) == 5
    assert set(p.levi_roots) == {system.root((0, 1)), system.root((0, -1))}


def test_levi_check_small_runs():
    ring = Ring.mod(8)
    ideal = Ideal.of(ring, [2])
    system = get_system("A2")
    for r in (1, 2):
        p = ParabolicData.for_simple(system, r)
        for minus in (False, True):
            rep = levi_commutator_check(p, ideal, ideal, ring, 50, seed=1, minus_side=minus)
            assert rep.passed


def test_levi_check_c2_z27_sample():
    ring = Ring.mod(27)
    ideal = Ideal.of(ring, [3])
    p = ParabolicData.for_simple(get_system("C2"), 1)
    rep = levi_commutator_check(p, ideal, ideal, ring, 100, seed=2)
    assert rep.passed
