"""Exact arithmetic for Z, Z/n and polynomial rings over them.

Elements are immutable and canonical: residues live in [0, n), polynomial
terms are kept in a fixed graded-lexicographic order with no zero
coefficients.  Equality of elements is therefore representational equality,
and anything built from elements (matrices, words) hashes deterministically.

Ideals are finitely generated and kept in a normal form for which
membership is decidable by inspection:

* in Z, a single non-negative generator (gcd of the inputs);
* in Z/n, a single generator d dividing n;
* in a polynomial ring, a list of *terms* c*x^e (this covers variables,
  base-ring constants, and products of such, which is everything the
  symbolic verification needs).
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterator


class RingError(Exception):
    """Base class for ring-layer errors."""


class MixedRings(RingError):
    """Operands belong to different rings."""


class InfiniteRing(RingError):
    """Operation requires a finite ring."""


class UnsupportedIdealShape(RingError):
    """Ideal generators outside the supported term shape."""


class UnrepresentableQuotient(RingError):
    """Quotient ring cannot be represented."""


class ParseError(RingError):
    """Malformed ring / element / ideal specification string."""


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


@dataclass(frozen=True)
class Ring:
    """A commutative ring with 1: Z, Z/n, or polynomials over one of those."""

    kind: str  # "Z" | "Zn" | "poly"
    modulus: int | None = None
    base: "Ring | None" = None
    variables: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "Z":
            if self.modulus is not None or self.base is not None or self.variables:
                raise ValueError("malformed integer ring")
        elif self.kind == "Zn":
            if not isinstance(self.modulus, int) or self.modulus < 2:
                raise ValueError("modulus must be an integer >= 2")
            if self.base is not None or self.variables:
                raise ValueError("malformed modular ring")
        elif self.kind == "poly":
            if self.base is None or self.base.kind not in ("Z", "Zn"):
                raise ValueError("polynomial base must be Z or Z/n")
            if not self.variables:
                raise ValueError("polynomial ring needs at least one variable")
            if len(set(self.variables)) != len(self.variables):
                raise ValueError("duplicate variable names")
            for name in self.variables:
                if not _NAME_RE.match(name):
                    raise ValueError(f"bad variable name {name!r}")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def integers() -> "Ring":
        return Ring("Z")

    @staticmethod
    def mod(n: int) -> "Ring":
        return Ring("Zn", modulus=n)

    @staticmethod
    def polynomial(base: "Ring", variables: tuple[str, ...] | list[str]) -> "Ring":
        return Ring("poly", base=base, variables=tuple(variables))

    # -- elements ----------------------------------------------------------

    @property
    def zero(self) -> "RingElement":
        return self.element(0)

    @property
    def one(self) -> "RingElement":
        return self.element(1)

    def element(self, value: int) -> "RingElement":
        """Canonical element from an integer (constant for poly rings)."""
        if self.kind == "Z":
            return RingElement(self, int(value))
        if self.kind == "Zn":
            return RingElement(self, int(value) % self.modulus)
        c = self._cred(int(value))
        payload = () if c == 0 else (((0,) * len(self.variables), c),)
        return RingElement(self, payload)

    def var(self, name: str) -> "RingElement":
        if self.kind != "poly":
            raise RingError(f"{self} has no variables")
        i = self.variables.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(self.variables)))
        return RingElement(self, ((exp, 1),))

    def vars(self) -> tuple["RingElement", ...]:
        return tuple(self.var(v) for v in self.variables)

    def term(self, coeff: int, exponents: tuple[int, ...]) -> "RingElement":
        if self.kind != "poly":
            raise RingError(f"{self} has no monomials")
        c = self._cred(coeff)
        if c == 0:
            return self.zero
        return RingElement(self, ((tuple(exponents), c),))

    def from_dict(self, d: dict) -> "RingElement":
        """Element from an exponent->coefficient dict (poly rings only)."""
        items = []
        for exp, c in d.items():
            c = self._cred(c)
            if c:
                items.append((tuple(exp), c))
        items.sort(key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
        return RingElement(self, tuple(items))

    def _cred(self, c: int) -> int:
        """Reduce a base-ring coefficient canonically."""
        if self.kind == "poly" and self.base.kind == "Zn":
            return c % self.base.modulus
        return c

    # -- global properties -------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind == "Zn"

    @property
    def size(self) -> int:
        if self.kind != "Zn":
            raise InfiniteRing(str(self))
        return self.modulus

    def __str__(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "Zn":
            return f"Z/{self.modulus}"
        return f"{self.base}[{','.join(self.variables)}]"


class RingElement:
    """Immutable canonical element of a :class:`Ring`."""

    __slots__ = ("ring", "payload", "_hash")

    def __init__(self, ring: Ring, payload):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "payload", payload)
        object.__setattr__(self, "_hash", hash((ring, payload)))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("RingElement is immutable")

    # -- plumbing ----------------------------------------------------------

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise MixedRings(f"{other.ring} vs {self.ring}")
            return other
        if isinstance(other, int):
            return self.ring.element(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.element(other)
        return (
            isinstance(other, RingElement)
            and self.ring == other.ring
            and self.payload == other.payload
        )

    def __hash__(self) -> int:
        return self._hash

    @property
    def is_zero(self) -> bool:
        return self.payload == 0 or self.payload == ()

    @property
    def is_one(self) -> bool:
        return self == self.ring.one

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        r = self.ring
        if r.kind == "Z":
            return RingElement(r, self.payload + other.payload)
        if r.kind == "Zn":
            return RingElement(r, (self.payload + other.payload) % r.modulus)
        d = dict(self.payload)
        for exp, c in other.payload:
            d[exp] = d.get(exp, 0) + c
        return r.from_dict(d)

    __radd__ = __add__

    def __neg__(self):
        r = self.ring
        if r.kind == "Z":
            return RingElement(r, -self.payload)
        if r.kind == "Zn":
            return RingElement(r, (-self.payload) % r.modulus)
        return r.from_dict({exp: -c for exp, c in self.payload})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self.ring.element(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        r = self.ring
        if r.kind == "Z":
            return RingElement(r, self.payload * other.payload)
        if r.kind == "Zn":
            return RingElement(r, (self.payload * other.payload) % r.modulus)
        d: dict = {}
        for e1, c1 in self.payload:
            for e2, c2 in other.payload:
                exp = tuple(a + b for a, b in zip(e1, e2))
                d[exp] = d.get(exp, 0) + c1 * c2
        return r.from_dict(d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise RingError("negative powers are not defined")
        out = self.ring.one
        for _ in range(k):
            out = out * self
        return out

    def divide_int(self, k: int) -> "RingElement | None":
        """Exact division by a nonzero integer; None if not divisible."""
        r = self.ring
        if k in (1, -1):
            return self if k == 1 else -self
        if r.kind == "Z":
            if self.payload % k:
                return None
            return RingElement(r, self.payload // k)
        if r.kind == "Zn":
            g = math.gcd(k, r.modulus)
            if g == 1:
                return RingElement(r, (self.payload * pow(k, -1, r.modulus)) % r.modulus)
            if self.payload % g:
                return None
            # solve k*t = payload mod n on the divisible part
            n = r.modulus
            t = (self.payload // g) * pow(k // g, -1, n // g) % (n // g)
            return RingElement(r, t % n)
        base_mod = r.base.modulus if r.base.kind == "Zn" else None
        d = {}
        for exp, c in self.payload:
            if base_mod is None:
                if c % k:
                    return None
                d[exp] = c // k
            else:
                g = math.gcd(k, base_mod)
                if c % g:
                    return None
                d[exp] = (c // g) * pow(k // g, -1, base_mod // g) % (base_mod // g)
        return r.from_dict(d)

    # -- display -------------------------------------------------------------

    def __str__(self) -> str:
        return element_to_string(self)

    def __repr__(self) -> str:
        return f"<{self.ring}: {element_to_string(self)}>"


# ---------------------------------------------------------------------------
# ideals


@dataclass(frozen=True)
class Ideal:
    """Finitely generated ideal in normal form (see module docstring)."""

    ring: Ring
    gens: tuple

    @staticmethod
    def of(ring: Ring, elements) -> "Ideal":
        """Build an ideal from ring elements (or ints), normalizing."""
        elems = [e if isinstance(e, RingElement) else ring.element(e) for e in elements]
        for e in elems:
            if e.ring != ring:
                raise MixedRings(f"{e.ring} vs {ring}")
        if ring.kind == "Z":
            g = 0
            for e in elems:
                g = math.gcd(g, e.payload)
            return Ideal(ring, (g,))
        if ring.kind == "Zn":
            n = ring.modulus
            g = n
            for e in elems:
                g = math.gcd(g, e.payload)
            return Ideal(ring, (g,))
        terms = []
        for e in elems:
            if e.is_zero:
                continue
            if len(e.payload) != 1:
                raise UnsupportedIdealShape(
                    f"generator {e} is not a term (monomial times constant)"
                )
            terms.append(e.payload[0])
        return Ideal(ring, _normalize_terms(ring, terms))

    @staticmethod
    def zero(ring: Ring) -> "Ideal":
        return Ideal.of(ring, [])

    @staticmethod
    def unit(ring: Ring) -> "Ideal":
        return Ideal.of(ring, [ring.one])

    # -- membership ----------------------------------------------------------

    def contains(self, x: RingElement) -> bool:
        if x.ring != self.ring:
            raise MixedRings(f"{x.ring} vs {self.ring}")
        r = self.ring
        if r.kind == "Z":
            (g,) = self.gens
            return x.payload == 0 if g == 0 else x.payload % g == 0
        if r.kind == "Zn":
            (d,) = self.gens
            return x.payload % d == 0 if d else x.payload == 0
        if x.is_zero:
            return True
        base_mod = r.base.modulus if r.base.kind == "Zn" else 0
        for exp, c in x.payload:
            g = 0
            for gexp, gc in self.gens:
                if all(a >= b for a, b in zip(exp, gexp)):
                    g = math.gcd(g, gc)
            g = math.gcd(g, base_mod)
            if g == 0 or c % g:
                return False
        return True

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(e) for e in other.generator_elements())

    def same_as(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    # -- operations -----------------------------------------------------------

    def product(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise MixedRings(f"{other.ring} vs {self.ring}")
        pairs = [
            a * b
            for a in self.generator_elements()
            for b in other.generator_elements()
        ]
        return Ideal.of(self.ring, pairs)

    @property
    def is_zero(self) -> bool:
        r = self.ring
        if r.kind == "Z":
            return self.gens == (0,)
        if r.kind == "Zn":
            return self.gens[0] % r.modulus == 0
        return not self.gens

    def generator_elements(self) -> list[RingElement]:
        r = self.ring
        if r.kind in ("Z", "Zn"):
            return [r.element(self.gens[0])]
        return [RingElement(r, (t,)) for t in self.gens]

    def element_values(self) -> list[RingElement]:
        """All elements of the ideal (finite rings only), ascending."""
        r = self.ring
        if r.kind != "Zn":
            raise InfiniteRing(str(r))
        (d,) = self.gens
        if d % r.modulus == 0:
            return [r.zero]
        return [r.element(k) for k in range(0, r.modulus, d)]

    def __str__(self) -> str:
        gens = ",".join(element_to_string(e) for e in self.generator_elements())
        return f"({gens})"


def _normalize_terms(ring: Ring, terms: list) -> tuple:
    """Canonical generator list for a term ideal in a polynomial ring."""
    base_mod = ring.base.modulus if ring.base.kind == "Zn" else 0
    by_exp: dict = {}
    for exp, c in terms:
        c = abs(c) if base_mod == 0 else c % base_mod
        if base_mod and c == 0:
            continue
        by_exp[exp] = math.gcd(by_exp.get(exp, 0), c)
    items = [(exp, c) for exp, c in by_exp.items() if c]
    # drop a term when the others already generate it
    changed = True
    while changed:
        changed = False
        for i, (exp, c) in enumerate(items):
            g = 0
            for j, (oexp, oc) in enumerate(items):
                if j != i and all(a >= b for a, b in zip(exp, oexp)):
                    g = math.gcd(g, oc)
            g = math.gcd(g, base_mod)
            if g and c % g == 0:
                items.pop(i)
                changed = True
                break
    items.sort(key=lambda kv: ((sum(kv[0]), kv[0]), kv[1]))
    return tuple(items)


def ideal_membership(x: RingElement, ideal: Ideal) -> bool:
    return ideal.contains(x)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    return a.product(b)


# ---------------------------------------------------------------------------
# ring predicates and enumeration


def has_residue_field_f2(ring: Ring) -> bool:
    """Whether some maximal ideal of the ring has a 2-element residue field."""
    if ring.kind == "Z":
        return True
    if ring.kind == "Zn":
        return ring.modulus % 2 == 0
    return has_residue_field_f2(ring.base)


def theta_condition_holds(ring: Ring) -> bool:
    """Exhaustively check theta in theta^2*R + 2*theta*R for every theta.

    Only decidable here for finite rings; refuses to guess otherwise.
    """
    if ring.kind != "Zn":
        raise InfiniteRing(f"cannot decide theta condition over {ring}")
    n = ring.modulus
    for t in range(n):
        g = math.gcd(math.gcd((t * t) % n, (2 * t) % n), n)
        if g == 0:
            if t != 0:
                return False
        elif t % g:
            return False
    return True


def enumerate_elements(ring: Ring) -> Iterator[RingElement]:
    """Each element exactly once, in a deterministic order."""
    if ring.kind != "Zn":
        raise InfiniteRing(str(ring))
    for k in range(ring.modulus):
        yield ring.element(k)


def ring_quotient(ring: Ring, ideal: Ideal):
    """Quotient ring R/I plus the reduction map on elements.

    Supports Z/(m), Z/n/(d) and polynomial quotients by variable ideals.
    """
    if ideal.ring != ring:
        raise MixedRings(f"{ideal.ring} vs {ring}")
    if ring.kind == "Z":
        (g,) = ideal.gens
        if g == 0:
            return ring, lambda e: e
        if g == 1:
            raise UnrepresentableQuotient("quotient by the unit ideal")
        quot = Ring.mod(g)
        return quot, lambda e: quot.element(e.payload)
    if ring.kind == "Zn":
        (d,) = ideal.gens
        if d % ring.modulus == 0:
            return ring, lambda e: e
        if d == 1:
            raise UnrepresentableQuotient("quotient by the unit ideal")
        quot = Ring.mod(d)
        return quot, lambda e: quot.element(e.payload)
    # polynomial ring: allow generators that are plain variables plus an
    # optional base-constant part
    killed = []
    const = []
    for exp, c in ideal.gens:
        if sum(exp) == 0:
            const.append(c)
        elif sum(exp) == 1 and (abs(c) == 1 or (ring.base.kind == "Zn" and math.gcd(c, ring.base.modulus) == 1)):
            killed.append(exp.index(1))
        else:
            raise UnrepresentableQuotient(f"cannot quotient {ring} by {ideal}")
    base_q, base_map = ring_quotient(ring.base, Ideal.of(ring.base, [ring.base.element(c) for c in const]))
    keep = [i for i in range(len(ring.variables)) if i not in killed]
    if keep:
        quot = Ring.polynomial(base_q, tuple(ring.variables[i] for i in keep))

        def reduce_elem(e: RingElement) -> RingElement:
            d: dict = {}
            for exp, c in e.payload:
                if any(exp[i] for i in killed):
                    continue
                new_exp = tuple(exp[i] for i in keep)
                cc = base_map(ring.base.element(c)).payload
                d[new_exp] = d.get(new_exp, 0) + cc
            return quot.from_dict(d)

        return quot, reduce_elem

    def reduce_const(e: RingElement) -> RingElement:
        total = 0
        for exp, c in e.payload:
            if not any(exp):
                total += c
        return base_map(ring.base.element(total))

    return base_q, reduce_const


# ---------------------------------------------------------------------------
# parsing and printing


def parse_ring(spec: str) -> Ring:
    """Parse ring spec strings like "Z", "Z/8", "Z[xi,zeta]", "Z/9[t]"."""
    s = spec.strip().replace(" ", "")
    m = re.fullmatch(r"Z(?:/(\d+))?(?:\[([A-Za-z_0-9,]+)\])?", s)
    if not m:
        raise ParseError(f"bad ring spec {spec!r}")
    base = Ring.integers()
    if m.group(1) is not None:
        n = int(m.group(1))
        if n < 2:
            raise ParseError(f"modulus must be >= 2 in {spec!r}")
        base = Ring.mod(n)
    if m.group(2) is None:
        return base
    names = tuple(v for v in m.group(2).split(",") if v)
    if not names:
        raise ParseError(f"empty variable list in {spec!r}")
    return Ring.polynomial(base, names)


def element_to_string(e: RingElement) -> str:
    """Canonical, re-parseable text form of an element."""
    r = e.ring
    if r.kind in ("Z", "Zn"):
        return str(e.payload)
    if not e.payload:
        return "0"
    parts = []
    for exp, c in e.payload:
        factors = []
        for name, k in zip(r.variables, exp):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        if not factors:
            term = str(c)
        elif c == 1:
            term = "*".join(factors)
        elif c == -1:
            term = "-" + "*".join(factors)
        else:
            term = str(c) + "*" + "*".join(factors)
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += term if term.startswith("-") else "+" + term
    return out


_TOKEN_RE = re.compile(r"\d+|[A-Za-z_][A-Za-z_0-9]*|[-+*^()]")


def parse_element(ring: Ring, text: str) -> RingElement:
    """Parse an element expression: ints, variables, + - * ^ and parens."""
    tokens = _TOKEN_RE.findall(text.replace(" ", ""))
    if "".join(tokens) != text.replace(" ", ""):
        raise ParseError(f"bad element expression {text!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_expr() -> RingElement:
        node = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def parse_term() -> RingElement:
        node = parse_factor()
        while peek() == "*":
            take()
            node = node * parse_factor()
        return node

    def parse_factor() -> RingElement:
        node = parse_atom()
        if peek() == "^":
            take()
            tok = take()
            if tok is None or not tok.isdigit():
                raise ParseError(f"bad exponent in {text!r}")
            node = node ** int(tok)
        return node

    def parse_atom() -> RingElement:
        tok = take() if peek() is not None else None
        if tok is None:
            raise ParseError(f"unexpected end of {text!r}")
        if tok == "-":
            return -parse_factor()
        if tok == "+":
            return parse_factor()
        if tok == "(":
            node = parse_expr()
            if peek() != ")":
                raise ParseError(f"missing ')' in {text!r}")
            take()
            return node
        if tok.isdigit():
            return ring.element(int(tok))
        if ring.kind == "poly" and tok in ring.variables:
            return ring.var(tok)
        raise ParseError(f"unknown name {tok!r} in {text!r}")

    out = parse_expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input in {text!r}")
    return out


def parse_ideal(ring: Ring, text: str) -> Ideal:
    """Parse comma-separated ideal generators, e.g. "2", "xi", "3,t"."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    return Ideal.of(ring, [parse_element(ring, p) for p in parts])
