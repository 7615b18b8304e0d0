import random

import numpy as np
import pytest

from chevlab.reps import (
    PeelError,
    central_mod_test,
    congruence_level_test,
    get_representation,
    reduce_mod,
    unipotent_coordinates,
    verify_steinberg,
)
from chevlab.rings import Ideal, Ring, enumerate_elements
from chevlab.words import evaluate, x_word


Z8 = Ring.mod(8)
Z27 = Ring.mod(27)


def test_x_of_zero_is_identity():
    for tag in ("A2", "C2", "G2"):
        rep = get_representation(tag)
        for root in rep.system.roots:
            assert rep.x(root, Z8.zero).is_identity


def test_a2_generator_shape():
    rep = get_representation("A2")
    ring = Ring.polynomial(Ring.integers(), ("xi",))
    (xi,) = ring.vars()
    g = rep.x(rep.system.root((1, 0)), xi)
    mat = g.matrix()
    assert mat[0][1] == xi and mat[0][0] == ring.one
    assert all(mat[i][j].is_zero for i in range(3) for j in range(3)
               if i != j and (i, j) != (0, 1))


@pytest.mark.parametrize("tag", ["A2", "C2", "G2"])
def test_additivity_symbolic(tag):
    rep = get_representation(tag)
    ring = Ring.polynomial(Ring.integers(), ("xi", "zeta"))
    xi, zeta = ring.vars()
    for root in rep.system.roots:
        assert rep.x(root, xi) * rep.x(root, zeta) == rep.x(root, xi + zeta)


@pytest.mark.parametrize("tag", ["A2", "C2", "G2"])
def test_inverse_identity(tag):
    rep = get_representation(tag)
    ring = Ring.polynomial(Ring.integers(), ("xi",))
    (xi,) = ring.vars()
    for root in rep.system.roots:
        assert (rep.x(root, xi) * rep.x(root, -xi)).is_identity


@pytest.mark.parametrize("tag,adds,pairs", [("A2", 6, 24), ("C2", 8, 48), ("G2", 12, 120)])
def test_steinberg_full(tag, adds, pairs):
    report = verify_steinberg(get_representation(tag))
    assert report.passed
    counts = report.counts()
    assert counts["additivity"] == adds and counts["pairs"] == pairs


def test_c2_preserves_symplectic_form():
    rep = get_representation("C2")
    ring = Ring.polynomial(Ring.integers(), ("xi",))
    (xi,) = ring.vars()
    form = [[ring.element(v) for v in row] for row in rep.symplectic_form]
    for root in rep.system.roots:
        m = rep.x(root, xi).matrix()
        lhs = [[sum((m[k][i] * form[k][l] * m[l][j] for k in range(4) for l in range(4)),
                    ring.zero) for j in range(4)] for i in range(4)]
        assert lhs == form


def test_g2_blocks_detect_identity_together():
    rep = get_representation("G2")
    root = rep.system.root((1, 0))
    g = rep.x(root, Z27.element(9))
    assert not g.is_identity
    assert np.any(g.blocks[0] != np.eye(7, dtype=np.int64)) or np.any(
        g.blocks[1] != np.eye(14, dtype=np.int64)
    )


def test_z_generator_identities():
    rep = get_representation("C2")
    ring = Ring.polynomial(Ring.integers(), ("xi", "eta"))
    xi, eta = ring.vars()
    root = rep.system.root((0, 1))
    assert rep.z(root, xi, ring.zero) == rep.x(root, xi)
    assert rep.z(root, ring.zero, eta).is_identity
    # z lies in the level-(xi) congruence subgroup
    assert congruence_level_test(rep.z(root, xi, eta), Ideal.of(ring, [xi]))


def test_reduce_mod_examples():
    rep = get_representation("A2")
    root = rep.system.root((1, 0))
    g = reduce_mod(rep.x(root, Z8.element(2)), Ideal.of(Z8, [2]))
    assert g.is_identity
    g = reduce_mod(get_representation("C2").x(
        get_representation("C2").system.root((1, 0)), Z27.element(3)), Ideal.of(Z27, [3]))
    assert g.is_identity


def test_reduce_mod_multiplicative_random():
    rep = get_representation("A2")
    ideal = Ideal.of(Z8, [2])
    rng = random.Random(11)
    roots = rep.system.roots
    for _ in range(100):
        a = rep.x(rng.choice(roots), Z8.element(rng.randrange(8)))
        b = rep.x(rng.choice(roots), Z8.element(rng.randrange(8)))
        assert reduce_mod(a * b, ideal) == reduce_mod(a, ideal) * reduce_mod(b, ideal)


def test_congruence_level():
    rep = get_representation("A2")
    root = rep.system.root((1, 1))
    ideal = Ideal.of(Z8, [2])
    assert congruence_level_test(rep.x(root, Z8.element(4)), ideal)
    assert not congruence_level_test(rep.x(root, Z8.element(1)), ideal)


def test_congruence_level_subgroup_property():
    rep = get_representation("A2")
    ideal = Ideal.of(Z8, [2])
    rng = random.Random(5)
    roots = rep.system.roots
    for _ in range(60):
        g = rep.x(rng.choice(roots), Z8.element(rng.choice([0, 2, 4, 6])))
        h = rep.x(rng.choice(roots), Z8.element(rng.choice([0, 2, 4, 6])))
        assert congruence_level_test(g * h, ideal)


def test_central_mod():
    rep = get_representation("A2")
    ideal = Ideal.of(Z8, [2])
    root = rep.system.root((1, 0))
    # anything congruent to the identity is central mod I
    assert central_mod_test(rep.x(root, Z8.element(2)), ideal)
    assert not central_mod_test(rep.x(root, Z8.element(1)), ideal)


def test_centralizer_matches_center_bruteforce():
    # the centre of the reduced elementary group really is the centralizer
    # of the elementary generators: SL3(F2) trivial, Sp4(F3) = {+-1}
    from chevlab.subgroups import brute_center, reduced_elementary_group, _word_matrices

    rep = get_representation("A2")
    ring = Ring.mod(2)
    grp = reduced_elementary_group(rep, ring, bound=10**6)
    assert grp.cardinality == 168
    gens = _word_matrices(
        [x_word(r, t) for r in rep.system.roots for t in enumerate_elements(ring)
         if not t.is_zero], rep, ring)
    center = brute_center(grp, gens)
    assert center.shape[0] == 1

    rep = get_representation("C2")
    ring = Ring.mod(3)
    grp = reduced_elementary_group(rep, ring, bound=10**6)
    assert grp.cardinality == 51840
    gens = _word_matrices(
        [x_word(r, t) for r in rep.system.roots for t in enumerate_elements(ring)
         if not t.is_zero], rep, ring)
    center = brute_center(grp, gens)
    assert center.shape[0] == 2


def test_unipotent_coordinates_round_trip():
    rep = get_representation("C2")
    ring = Ring.polynomial(Ring.integers(), ("a", "b", "c"))
    a, b, c = ring.vars()
    system = rep.system
    roots = [system.root((1, 0)), system.root((1, 1)), system.root((2, 1))]
    g = rep.x(roots[0], a) * rep.x(roots[1], b) * rep.x(roots[2], c)
    coords = unipotent_coordinates(g, roots)
    assert [t for _, t in coords] == [a, b, c]


def test_unipotent_coordinates_rejects_outsiders():
    rep = get_representation("C2")
    system = rep.system
    g = rep.x(system.root((0, 1)), Z8.element(1))
    with pytest.raises(PeelError):
        unipotent_coordinates(g, [system.root((1, 0))])
