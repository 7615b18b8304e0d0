import json

import pytest

from chevlab.constants import (
    chevalley_commutator_word,
    compute_table,
    constants_magnitudes,
    normalize_signs,
)
from chevlab.reps import get_representation
from chevlab.rings import Ring
from chevlab.roots import MainLemmaCase, OppositeRoots, get_system
from chevlab.words import evaluate


@pytest.mark.parametrize(
    "tag,mags", [("A2", {1}), ("C2", {1, 2}), ("G2", {1, 2, 3})]
)
def test_constant_magnitude_classes(tag, mags):
    table = compute_table(get_representation(tag))
    assert constants_magnitudes(table) == mags
    assert all(n != 0 for n in table.entries.values())


@pytest.mark.parametrize("tag", ["A2", "C2", "G2"])
def test_commutator_word_round_trip(tag):
    rep = get_representation(tag)
    table = compute_table(rep)
    ring = Ring.polynomial(Ring.integers(), ("xi", "zeta"))
    xi, zeta = ring.vars()
    for alpha in rep.system.roots:
        for beta in rep.system.roots:
            if beta in (alpha, -alpha):
                continue
            lhs = (
                rep.x(alpha, xi) * rep.x(beta, zeta)
                * rep.x(alpha, -xi) * rep.x(beta, -zeta)
            )
            word = chevalley_commutator_word(table, alpha, beta, xi, zeta)
            assert evaluate(word, rep, ring) == lhs


def test_commutator_word_edge_cases():
    rep = get_representation("A2")
    table = compute_table(rep)
    ring = Ring.polynomial(Ring.integers(), ("xi", "zeta"))
    xi, zeta = ring.vars()
    alpha = rep.system.root((1, 0))
    beta = rep.system.root((0, 1))
    assert chevalley_commutator_word(table, alpha, beta, ring.zero, zeta).is_empty
    with pytest.raises(OppositeRoots):
        chevalley_commutator_word(table, alpha, -alpha, xi, zeta)


def test_a2_display_constant():
    table = compute_table(get_representation("A2"))
    sn = normalize_signs(table, MainLemmaCase.A2)
    assert [n for _, _, _, n in sn.display] == [1]


def test_c2_displayed_form():
    # [x_gamma(theta), x_beta(xi)] = x_{beta+gamma}(theta xi) x_{beta+2gamma}(theta^2 xi)
    table = compute_table(get_representation("C2"))
    for case in (MainLemmaCase.C2_LONG, MainLemmaCase.C2_SHORT):
        sn = normalize_signs(table, case)
        beta, gamma = sn.pair
        assert [(i, j, n) for i, j, _, n in sn.display] == [(1, 1, 1), (2, 1, 1)]
        roots = [r for _, _, r, _ in sn.display]
        assert roots[0] == beta.plus(gamma)
        assert roots[1] == beta.times_plus(1, gamma, 2)


def test_g2_signature_and_auxiliary():
    table = compute_table(get_representation("G2"))
    sn = normalize_signs(table, MainLemmaCase.G2_SHORT)
    assert [n for _, _, _, n in sn.display] == [1, 1, 1, 2]
    assert sn.aux_constant == 3


def test_g2_auxiliary_relation_evaluates():
    # with the normalized parametrisation the whole commutator of the
    # (beta+2gamma, beta+gamma) pair is the single factor with constant 3
    rep = get_representation("G2")
    table = compute_table(rep)
    sn = normalize_signs(table, MainLemmaCase.G2_SHORT)
    beta, gamma = sn.pair
    a_root = beta.plus(gamma)
    b2g = beta.times_plus(1, gamma, 2)
    target = beta.times_plus(2, gamma, 3)
    ring = Ring.polynomial(Ring.integers(), ("xi", "eta"))
    xi, eta = ring.vars()
    lhs = (
        rep.x(b2g, sn.sign(b2g) * eta) * rep.x(a_root, sn.sign(a_root) * xi)
        * rep.x(b2g, -sn.sign(b2g) * eta) * rep.x(a_root, -sn.sign(a_root) * xi)
    )
    assert lhs == rep.x(target, sn.sign(target) * (3 * eta * xi))


def test_normalized_relations_survive_reparametrisation():
    # twisting by eps keeps every pair's commutator formula exact
    for case in MainLemmaCase:
        rep = get_representation(case.system_tag)
        table = compute_table(rep)
        sn = normalize_signs(table, case)
        ring = Ring.polynomial(Ring.integers(), ("xi", "zeta"))
        xi, zeta = ring.vars()
        for alpha in rep.system.roots:
            for beta in rep.system.roots:
                if beta in (alpha, -alpha):
                    continue
                lhs = (
                    rep.x(alpha, sn.sign(alpha) * xi)
                    * rep.x(beta, sn.sign(beta) * zeta)
                    * rep.x(alpha, -sn.sign(alpha) * xi)
                    * rep.x(beta, -sn.sign(beta) * zeta)
                )
                word = chevalley_commutator_word(
                    table, alpha, beta, sn.sign(alpha) * xi, sn.sign(beta) * zeta
                )
                assert evaluate(word, rep, ring) == lhs


def test_single_normalization_serves_all_cases_per_system():
    # the two C2 cases share one decomposition pair, hence one epsilon
    table = compute_table(get_representation("C2"))
    long_sn = normalize_signs(table, MainLemmaCase.C2_LONG)
    short_sn = normalize_signs(table, MainLemmaCase.C2_SHORT)
    assert long_sn.pair == short_sn.pair
    assert long_sn.eps == short_sn.eps


def test_table_records_serializable():
    table = compute_table(get_representation("G2"))
    records = table.to_records()
    assert {"alpha", "beta", "i", "j", "N"} == set(records[0])
    json.dumps(records)
