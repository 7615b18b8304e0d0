"""Faithful integer matrix representations of the rank-2 elementary groups.

* A2 acts on the natural 3-dimensional module (unimodular matrices),
* C2 on the natural 4-dimensional symplectic module,
* G2 on the direct sum of its 7-dimensional module and the 14-dimensional
  adjoint module, so that identity checks never depend on the coefficient
  ring's characteristic.

The root-vector matrices form an integral lattice basis on which every
divided power e^k/k! is again integral (asserted during construction), so
the one-parameter subgroups x_a(t) = sum t^k e^(k) are polynomial with
integer matrices and make sense over any coefficient ring.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .linalg import (
    ExactMatrix,
    imat_bracket,
    imat_from_entries,
    imat_identity,
    imat_is_zero,
    imat_mul,
    imat_scale,
    imat_to_int,
)
from .rings import (
    Ideal,
    MixedRings,
    Ring,
    RingElement,
    UnrepresentableQuotient,
    enumerate_elements,
    ring_quotient,
)
from .roots import Root, RootSystem, get_system


class RepresentationError(Exception):
    pass


class PeelError(RepresentationError):
    """A matrix did not factor through the expected root subgroups."""


@dataclass(frozen=True, eq=False)
class Representation:
    """Matrix model of one rank-2 elementary Chevalley group.

    Instances are singletons (one per system); identity comparison is fine.
    """

    name: str
    system: RootSystem
    block_dims: tuple[int, ...]
    # root -> tuple of integer block-matrix tuples, one entry per divided
    # power e^(k) = e^k/k! for k = 1 .. nilpotency-1
    powers: dict
    symplectic_form: tuple | None = None

    @property
    def dimension(self) -> int:
        return sum(self.block_dims)

    def nilpotent(self, root: Root):
        return self.powers[root][0]

    def identity(self, ring: Ring) -> "GroupElement":
        if ring.kind == "Zn":
            blocks = tuple(
                np.eye(d, dtype=np.int64) for d in self.block_dims
            )
            return GroupElement(self, ring, "np", blocks)
        blocks = tuple(ExactMatrix.identity(ring, d) for d in self.block_dims)
        return GroupElement(self, ring, "exact", blocks)

    def x(self, root: Root, coeff: RingElement) -> "GroupElement":
        """Elementary generator exp(coeff * e_root)."""
        if root.system != self.system.type_tag:
            raise RepresentationError(f"{root} does not belong to {self.name}")
        ring = coeff.ring
        power_blocks = self.powers[root]
        if ring.kind == "Zn":
            n = ring.modulus
            c = coeff.payload
            blocks = []
            for b, d in enumerate(self.block_dims):
                acc = np.eye(d, dtype=np.int64)
                ck = 1
                for k, mats in enumerate(power_blocks, start=1):
                    ck = (ck * c) % n
                    if ck:
                        acc = acc + ck * np.array(mats[b], dtype=np.int64)
                blocks.append(acc % n)
            return GroupElement(self, ring, "np", tuple(blocks))
        blocks = []
        for b, d in enumerate(self.block_dims):
            entries: dict = {}
            ck = ring.one
            for k, mats in enumerate(power_blocks, start=1):
                ck = ck * coeff
                if ck.is_zero:
                    break
                for i, row in enumerate(mats[b]):
                    for j, v in enumerate(row):
                        if v:
                            prev = entries.get((i, j))
                            term = ck * v
                            entries[(i, j)] = term if prev is None else prev + term
            for i in range(d):
                prev = entries.get((i, i))
                entries[(i, i)] = ring.one if prev is None else prev + ring.one
            blocks.append(ExactMatrix.build(ring, d, entries))
        return GroupElement(self, ring, "exact", tuple(blocks))

    def z(self, root: Root, xi: RingElement, eta: RingElement) -> "GroupElement":
        """Conjugated generator x_{-a}(eta) x_a(xi) x_{-a}(-eta)."""
        return self.x(-root, eta) * self.x(root, xi) * self.x(-root, -eta)


class GroupElement:
    """Immutable matrix group element, block-diagonal over its ring.

    Finite modular rings use a numpy backend; symbolic rings use exact
    sparse matrices of ring elements.  Equality and hashing go through a
    canonical byte key either way.
    """

    __slots__ = ("rep", "ring", "backend", "blocks", "_key")

    def __init__(self, rep: Representation, ring: Ring, backend: str, blocks: tuple):
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_key", None)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("GroupElement is immutable")

    def key(self) -> bytes:
        if self._key is None:
            if self.backend == "np":
                raw = b"".join(
                    np.ascontiguousarray(b % self.ring.modulus, dtype=np.int64).tobytes()
                    for b in self.blocks
                )
            else:
                raw = repr(tuple(b._key for b in self.blocks)).encode()
            object.__setattr__(self, "_key", raw)
        return self._key

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.ring != self.ring:
            raise MixedRings(f"{other.ring} vs {self.ring}")
        if self.backend == "np":
            n = self.ring.modulus
            blocks = tuple((a @ b) % n for a, b in zip(self.blocks, other.blocks))
            return GroupElement(self.rep, self.ring, "np", blocks)
        blocks = tuple(a * b for a, b in zip(self.blocks, other.blocks))
        return GroupElement(self.rep, self.ring, "exact", blocks)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupElement)
            and self.ring == other.ring
            and self.rep.name == other.rep.name
            and self.key() == other.key()
        )

    def __hash__(self) -> int:
        return hash((self.rep.name, self.ring, self.key()))

    @property
    def is_identity(self) -> bool:
        if self.backend == "np":
            n = self.ring.modulus
            return all(
                np.array_equal(b % n, np.eye(len(b), dtype=np.int64))
                for b in self.blocks
            )
        return all(b.is_identity for b in self.blocks)

    def entry(self, block: int, i: int, j: int) -> RingElement:
        if self.backend == "np":
            return self.ring.element(int(self.blocks[block][i, j]))
        return self.blocks[block].entry(i, j)

    def matrix(self) -> list[list[RingElement]]:
        """Full block-diagonal matrix as nested ring elements."""
        dim = self.rep.dimension
        zero = self.ring.zero
        out = [[zero] * dim for _ in range(dim)]
        off = 0
        for b, d in enumerate(self.rep.block_dims):
            for i in range(d):
                for j in range(d):
                    v = self.entry(b, i, j)
                    if not v.is_zero:
                        out[off + i][off + j] = v
            off += d
        return out

    def np_single(self) -> np.ndarray:
        """The (single) block as a numpy array; finite rings, rank-1 block."""
        if self.backend != "np" or len(self.blocks) != 1:
            raise RepresentationError("np_single needs a one-block modular element")
        return self.blocks[0]


# ---------------------------------------------------------------------------
# representation builders


def _chevalley_pair_division(system: RootSystem, step: Root, target_minus_step: Root) -> int:
    """|N| = p + 1 for the defining bracket [e_step, e_rest] = N e_target."""
    p, _ = system.root_string(step, target_minus_step)
    return p + 1


def _close_positive_vectors(system: RootSystem, seeds: dict) -> dict:
    """Extend simple root vectors to all roots of one sign via brackets.

    Composite vectors are defined recursively through the simple step
    e_(d+s) = [e_s, e_d] / (p+1); integrality of the division is asserted.
    """
    simple1, simple2 = system.simple_roots
    vectors = dict(seeds)
    pending = True
    while pending:
        pending = False
        for root in system.positive_roots:
            key = root.coords
            if key in vectors:
                continue
            for step in (simple1, simple2):
                rest = root.times_plus(1, step, -1)
                if rest is None or rest.coords not in vectors:
                    continue
                n = _chevalley_pair_division(system, step, rest)
                mat = imat_scale(
                    imat_bracket(vectors[step.coords], vectors[rest.coords]),
                    Fraction(1, n),
                )
                vectors[key] = mat
                pending = True
                break
    return vectors


def _divided_powers(mat: tuple) -> list[tuple]:
    """[e, e^2/2!, e^3/3!, ...] until zero; all asserted integral."""
    out = []
    power = mat
    k = 1
    fact = 1
    while not imat_is_zero(power):
        out.append(imat_to_int(imat_scale(power, Fraction(1, fact))))
        k += 1
        fact *= k
        power = imat_mul(power, mat)
        if k > 8:  # non-nilpotent would be a construction bug
            raise RepresentationError("root vector is not nilpotent")
    return out


def _build_block_vectors(system: RootSystem, e1, e2, f1, f2) -> dict:
    pos = _close_positive_vectors(
        system, {system.simple_roots[0].coords: e1, system.simple_roots[1].coords: e2}
    )
    neg_seeds = {
        (-system.simple_roots[0].coords[0], -system.simple_roots[0].coords[1]): f1,
        (-system.simple_roots[1].coords[0], -system.simple_roots[1].coords[1]): f2,
    }
    mirrored = RootSystem(
        system.type_tag,
        system.roots,
        (-system.simple_roots[0], -system.simple_roots[1]),
        tuple(-r for r in system.positive_roots),
    )
    neg = _close_positive_vectors(mirrored, neg_seeds)
    return {**pos, **neg}


def _adjoint_block(system: RootSystem, vectors: dict) -> dict:
    """14- (or dim-of-algebra) dimensional adjoint block from a 7-dim block.

    Basis: the root vectors in the fixed root order, then the two Cartan
    elements h1 = [e1, f1], h2 = [e2, f2].  Coordinates of every bracket in
    this basis are solved exactly and asserted integral.
    """
    order = [r.coords for r in system.roots]
    s1, s2 = system.simple_roots
    h1 = imat_bracket(vectors[s1.coords], vectors[(-s1).coords])
    h2 = imat_bracket(vectors[s2.coords], vectors[(-s2).coords])
    basis = [vectors[c] for c in order] + [h1, h2]
    dim_alg = len(basis)
    flat = [[x for row in m for x in row] for m in basis]

    def solve_coords(mat) -> list[Fraction]:
        target = [x for row in mat for x in row]
        cols = list(range(dim_alg))
        rows = [list(f) + [t] for f, t in zip(zip(*flat), target)]
        # exact Gaussian elimination on the (len(target) x dim_alg | 1) system
        sol = [Fraction(0)] * dim_alg
        pivots = []
        r = 0
        for c in cols:
            pivot = None
            for rr in range(r, len(rows)):
                if rows[rr][c] != 0:
                    pivot = rr
                    break
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            pv = rows[r][c]
            rows[r] = [x / pv for x in rows[r]]
            for rr in range(len(rows)):
                if rr != r and rows[rr][c] != 0:
                    f = rows[rr][c]
                    rows[rr] = [x - f * y for x, y in zip(rows[rr], rows[r])]
            pivots.append(c)
            r += 1
        for rr in range(r, len(rows)):
            if rows[rr][-1] != 0:
                raise RepresentationError("bracket outside the algebra span")
        for row, c in zip(rows, pivots):
            sol[c] = row[-1]
        return sol

    ad = {}
    for coords in order:
        e = vectors[coords]
        cols = []
        for b in basis:
            cols.append(solve_coords(imat_bracket(e, b)))
        ad[coords] = tuple(
            tuple(cols[j][i] for j in range(dim_alg)) for i in range(dim_alg)
        )
    return ad


@lru_cache(maxsize=None)
def get_representation(tag: str) -> Representation:
    if tag == "A2":
        return _build_a2()
    if tag == "C2":
        return _build_c2()
    if tag == "G2":
        return _build_g2()
    raise RepresentationError(f"unknown system {tag!r}")


def _build_a2() -> Representation:
    system = get_system("A2")
    pos_entries = {
        (1, 0): {(0, 1): 1},          # e_12
        (0, 1): {(1, 2): 1},          # e_23
        (1, 1): {(0, 2): 1},          # e_13
    }
    powers = {}
    for coords, entries in pos_entries.items():
        root = system.root(coords)
        mat = imat_from_entries(3, entries)
        neg = imat_from_entries(3, {(j, i): v for (i, j), v in entries.items()})
        powers[root] = tuple((blk,) for blk in _divided_powers(mat))
        powers[-root] = tuple((blk,) for blk in _divided_powers(neg))
    return Representation("A2", system, (3,), powers)


def _build_c2() -> Representation:
    # basis (e1, e2, f1, f2); form <e_i, f_i> = 1
    system = get_system("C2")
    e1 = imat_from_entries(4, {(0, 1): 1, (3, 2): -1})   # eps1 - eps2
    e2 = imat_from_entries(4, {(1, 3): 1})               # 2 eps2
    f1 = imat_from_entries(4, {(1, 0): 1, (2, 3): -1})
    f2 = imat_from_entries(4, {(3, 1): 1})
    vectors = _build_block_vectors(system, e1, e2, f1, f2)
    powers = {}
    for root in system.roots:
        powers[root] = tuple((blk,) for blk in _divided_powers(vectors[root.coords]))
    form = imat_to_int(
        imat_from_entries(4, {(0, 2): 1, (1, 3): 1, (2, 0): -1, (3, 1): -1})
    )
    return Representation("C2", system, (4,), powers, symplectic_form=form)


def _build_g2() -> Representation:
    # 7-dim block: weight basis v1..v7 with weights
    # 2a1+a2, a1+a2, a1, 0, -a1, -(a1+a2), -(2a1+a2); the four simple
    # generator matrices realize the Kostant lattice of the module.
    system = get_system("G2")
    e1 = imat_from_entries(7, {(0, 1): 1, (2, 3): 2, (3, 4): 1, (5, 6): 1})
    f1 = imat_from_entries(7, {(1, 0): 1, (3, 2): 1, (4, 3): 2, (6, 5): 1})
    e2 = imat_from_entries(7, {(1, 2): 1, (4, 5): 1})
    f2 = imat_from_entries(7, {(2, 1): 1, (5, 4): 1})
    vectors7 = _build_block_vectors(system, e1, e2, f1, f2)
    ad = _adjoint_block(system, vectors7)
    powers = {}
    for root in system.roots:
        p7 = _divided_powers(vectors7[root.coords])
        p14 = _divided_powers(ad[root.coords])
        depth = max(len(p7), len(p14))
        zero7 = imat_to_int(imat_scale(imat_identity(7), 0))
        zero14 = imat_to_int(imat_scale(imat_identity(14), 0))
        blocks = []
        for k in range(depth):
            b7 = p7[k] if k < len(p7) else zero7
            b14 = p14[k] if k < len(p14) else zero14
            blocks.append((b7, b14))
        powers[root] = tuple(blocks)
    return Representation("G2", system, (7, 14), powers)


# ---------------------------------------------------------------------------
# congruence and centrality tests


def reduce_mod(g: GroupElement, ideal: Ideal) -> GroupElement:
    """Entrywise reduction of a group element modulo an ideal."""
    if ideal.ring != g.ring:
        raise MixedRings(f"{ideal.ring} vs {g.ring}")
    quot, reduce_elem = ring_quotient(g.ring, ideal)
    if quot == g.ring:
        return g
    if quot.kind == "Zn" and g.backend == "np":
        n = quot.modulus
        blocks = tuple(b % n for b in g.blocks)
        return GroupElement(g.rep, quot, "np", blocks)
    if quot.kind == "Zn":
        blocks = []
        for b, d in enumerate(g.rep.block_dims):
            arr = np.zeros((d, d), dtype=np.int64)
            for i in range(d):
                for j in range(d):
                    arr[i, j] = reduce_elem(g.entry(b, i, j)).payload
            blocks.append(arr % quot.modulus)
        return GroupElement(g.rep, quot, "np", tuple(blocks))
    blocks = []
    for b, d in enumerate(g.rep.block_dims):
        entries = {}
        for i in range(d):
            for j in range(d):
                v = reduce_elem(g.entry(b, i, j))
                if not v.is_zero:
                    entries[(i, j)] = v
        blocks.append(ExactMatrix.build(quot, d, entries))
    return GroupElement(g.rep, quot, "exact", tuple(blocks))


def congruence_level_test(g: GroupElement, ideal: Ideal) -> bool:
    """Whether g is congruent to the identity entrywise modulo the ideal."""
    if ideal.ring != g.ring:
        raise MixedRings(f"{ideal.ring} vs {g.ring}")
    if g.backend == "np" and g.ring.kind == "Zn":
        (d,) = ideal.gens
        n = g.ring.modulus
        for b, dim in enumerate(g.rep.block_dims):
            delta = (g.blocks[b] - np.eye(dim, dtype=np.int64)) % n
            if d % n == 0:
                if np.any(delta):
                    return False
            elif np.any(delta % d):
                return False
        return True
    one = g.ring.one
    for b, dim in enumerate(g.rep.block_dims):
        for i in range(dim):
            for j in range(dim):
                v = g.entry(b, i, j)
                if i == j:
                    v = v - one
                if not ideal.contains(v):
                    return False
    return True


def central_mod_test(g: GroupElement, ideal: Ideal) -> bool:
    """Whether g reduces into the centralizer of all elementary generators.

    For the finite quotients used here that centralizer is the centre of
    the reduced group (asserted separately by brute force in the tests).
    """
    reduced = reduce_mod(g, ideal)
    ring = reduced.ring
    if not ring.is_finite:
        raise UnrepresentableQuotient("central test needs a finite quotient")
    for root in g.rep.system.roots:
        for t in enumerate_elements(ring):
            xg = g.rep.x(root, t)
            if xg * reduced != reduced * xg:
                return False
    return True


# ---------------------------------------------------------------------------
# unipotent coordinates (peeling)


def unipotent_coordinates(
    g: GroupElement, roots_in_order: list[Root]
) -> list[tuple[Root, RingElement]]:
    """Factor g as prod x_root(t_root) over the given ordered root list.

    The order must list each root before any root expressible as a sum of
    later ones (ordering by any linear functional positive on the set
    works).  Raises PeelError when g does not live in that product.
    """
    rep = g.rep
    ring = g.ring
    residual = g
    coords = []
    for idx, root in enumerate(roots_in_order):
        t = _leading_coefficient(residual, root)
        coords.append((root, t))
        if not t.is_zero:
            residual = rep.x(root, -t) * residual
    if not residual.is_identity:
        raise PeelError(
            "element does not factor through "
            + ",".join(r.name for r in roots_in_order)
        )
    return coords


def _leading_coefficient(g: GroupElement, root: Root) -> RingElement:
    nil = g.rep.powers[root][0]
    ring = g.ring
    best = None
    for b, block in enumerate(nil):
        for i, row in enumerate(block):
            for j, v in enumerate(row):
                if v == 0:
                    continue
                entry = g.entry(b, i, j)
                t = entry.divide_int(v)
                if t is not None:
                    if abs(v) == 1:
                        return t
                    if best is None:
                        best = t
    if best is None:
        raise PeelError(f"cannot read the {root.name} coordinate")
    return best


# ---------------------------------------------------------------------------
# Steinberg verification


@dataclass
class SteinbergReport:
    rep_name: str
    additivity: list[tuple[str, bool]]
    commutators: list[tuple[str, bool]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.additivity) and all(
            ok for _, ok in self.commutators
        )

    def counts(self) -> dict:
        return {
            "additivity": len(self.additivity),
            "pairs": len(self.commutators),
            "failures": [
                name
                for name, ok in self.additivity + self.commutators
                if not ok
            ],
        }


def verify_steinberg(rep: Representation) -> SteinbergReport:
    """Check additivity and every non-opposite Chevalley commutator
    relation symbolically over Z[xi, zeta]."""
    from . import constants  # deferred: constants builds on this module

    ring = Ring.polynomial(Ring.integers(), ("xi", "zeta"))
    xi, zeta = ring.vars()
    additivity = []
    for root in rep.system.roots:
        lhs = rep.x(root, xi) * rep.x(root, zeta)
        rhs = rep.x(root, xi + zeta)
        additivity.append((f"x_{root.name} additive", lhs == rhs))
    table = constants.compute_table(rep)
    commutators = []
    for alpha in rep.system.roots:
        for beta in rep.system.roots:
            if beta == alpha or beta == -alpha:
                continue
            lhs = (
                rep.x(alpha, xi)
                * rep.x(beta, zeta)
                * rep.x(alpha, -xi)
                * rep.x(beta, -zeta)
            )
            word = constants.chevalley_commutator_word(table, alpha, beta, xi, zeta)
            from .words import evaluate

            rhs = evaluate(word, rep, ring)
            commutators.append(
                (f"[x_{alpha.name}, x_{beta.name}]", lhs == rhs)
            )
    return SteinbergReport(rep.name, additivity, commutators)
