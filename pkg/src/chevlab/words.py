"""Group words over elementary and conjugated generators, plus membership
certificates.

Words store symbols, never matrices, so one factorization can be evaluated
over many coefficient rings.  Certificates are small proof trees whose
leaves are checkable by ideal membership and congruence tests; the
composite tags lean on the licensing facts that level-IJ elementary
subgroups sit inside the mixed commutator subgroup and that the latter is
normalized by every elementary element.
"""
from __future__ import annotations

from dataclasses import dataclass

from .reps import GroupElement, Representation, congruence_level_test
from .rings import Ideal, MixedRings, Ring, RingElement, element_to_string, parse_element
from .roots import Root, RootSystem, parse_root, root_name


class WordError(Exception):
    pass


@dataclass(frozen=True)
class XSym:
    root: Root
    coeff: RingElement


@dataclass(frozen=True)
class ZSym:
    root: Root
    xi: RingElement
    eta: RingElement


@dataclass(frozen=True)
class InvSym:
    inner: "XSym | ZSym | ConjSym"


@dataclass(frozen=True)
class ConjSym:
    """by * base * by^-1."""

    base: "Word"
    by: "Word"


Symbol = object  # XSym | ZSym | InvSym | ConjSym


@dataclass(frozen=True)
class Word:
    letters: tuple

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def inverse(self) -> "Word":
        return Word(tuple(_invert_symbol(s) for s in reversed(self.letters)))

    def free_reduce(self) -> "Word":
        letters = list(self.letters)
        changed = True
        while changed:
            changed = False
            out: list = []
            for sym in letters:
                sym = _reduce_symbol(sym)
                if sym is None:
                    changed = True
                    continue
                if out:
                    merged = _merge_symbols(out[-1], sym)
                    if merged is not None:
                        out.pop()
                        if merged != ():
                            out.append(merged)
                        changed = True
                        continue
                out.append(sym)
            letters = out
        return Word(tuple(letters))

    def walk_x_letters(self, include_conjugators: bool = True):
        """Yield every X symbol in the tree (optionally conjugators too)."""
        for sym in self.letters:
            yield from _walk_x(sym, include_conjugators)

    def __str__(self) -> str:
        return word_to_sexpr(self)


def x_word(root: Root, coeff: RingElement) -> Word:
    return Word((XSym(root, coeff),))


def z_word(root: Root, xi: RingElement, eta: RingElement) -> Word:
    return Word((ZSym(root, xi, eta),))


def conj_word(base: Word, by: Word) -> Word:
    if by.is_empty:
        return base
    if base.is_empty:
        return base
    return Word((ConjSym(base, by),))


def commutator(a: Word, b: Word) -> Word:
    return (a * b * a.inverse() * b.inverse()).free_reduce()


def _invert_symbol(sym):
    if isinstance(sym, XSym):
        return XSym(sym.root, -sym.coeff)
    if isinstance(sym, ZSym):
        return ZSym(sym.root, -sym.xi, sym.eta)
    if isinstance(sym, ConjSym):
        return ConjSym(sym.base.inverse(), sym.by)
    if isinstance(sym, InvSym):
        return sym.inner
    raise WordError(f"unknown symbol {sym!r}")


def _reduce_symbol(sym):
    """None to drop, otherwise a (possibly rewritten) symbol."""
    if isinstance(sym, XSym):
        return None if sym.coeff.is_zero else sym
    if isinstance(sym, ZSym):
        return None if sym.xi.is_zero else sym
    if isinstance(sym, InvSym):
        return _reduce_symbol(_invert_symbol(sym.inner))
    if isinstance(sym, ConjSym):
        base = sym.base.free_reduce()
        if base.is_empty:
            return None
        return ConjSym(base, sym.by.free_reduce())
    raise WordError(f"unknown symbol {sym!r}")


def _merge_symbols(a, b):
    """Merged symbol, () to cancel both, or None when not mergeable."""
    if isinstance(a, XSym) and isinstance(b, XSym) and a.root == b.root:
        total = a.coeff + b.coeff
        return () if total.is_zero else XSym(a.root, total)
    if (
        isinstance(a, ZSym)
        and isinstance(b, ZSym)
        and a.root == b.root
        and a.eta == b.eta
    ):
        total = a.xi + b.xi
        return () if total.is_zero else ZSym(a.root, total, a.eta)
    if isinstance(a, ConjSym) and isinstance(b, ConjSym) and a.by == b.by:
        base = (a.base * b.base).free_reduce()
        return () if base.is_empty else ConjSym(base, a.by)
    return None


def _walk_x(sym, include_conjugators):
    if isinstance(sym, XSym):
        yield sym, False
    elif isinstance(sym, ZSym):
        yield XSym(-sym.root, sym.eta), False
        yield XSym(sym.root, sym.xi), False
        yield XSym(-sym.root, -sym.eta), False
    elif isinstance(sym, InvSym):
        yield from _walk_x(_invert_symbol(sym.inner), include_conjugators)
    elif isinstance(sym, ConjSym):
        for letter in sym.base.letters:
            yield from _walk_x(letter, include_conjugators)
        if include_conjugators:
            for letter in sym.by.letters:
                for xs, _ in _walk_x(letter, include_conjugators):
                    yield xs, True


# ---------------------------------------------------------------------------
# evaluation


def evaluate(word: Word, rep: Representation, ring: Ring) -> GroupElement:
    """Left-to-right matrix product of the word in the representation."""
    out = rep.identity(ring)
    for sym in word.letters:
        out = out * _symbol_matrix(sym, rep, ring)
    return out


def _symbol_matrix(sym, rep: Representation, ring: Ring) -> GroupElement:
    if isinstance(sym, XSym):
        if sym.coeff.ring != ring:
            raise MixedRings(f"{sym.coeff.ring} vs {ring}")
        return rep.x(sym.root, sym.coeff)
    if isinstance(sym, ZSym):
        if sym.xi.ring != ring or sym.eta.ring != ring:
            raise MixedRings("z-symbol coefficients outside the ring")
        return rep.z(sym.root, sym.xi, sym.eta)
    if isinstance(sym, InvSym):
        return _symbol_matrix(_invert_symbol(sym.inner), rep, ring)
    if isinstance(sym, ConjSym):
        by = evaluate(sym.by, rep, ring)
        by_inv = evaluate(sym.by.inverse(), rep, ring)
        return by * evaluate(sym.base, rep, ring) * by_inv
    raise WordError(f"unknown symbol {sym!r}")


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class GenOfEI:
    """The word is one elementary letter with coefficient in the ideal."""

    ideal: Ideal


@dataclass(frozen=True)
class LevelElement:
    """Every letter is elementary with coefficient in the ideal."""

    ideal: Ideal


@dataclass(frozen=True)
class GenCommutator:
    """word = [a, b] with a's letters of level I and b's of level J
    (or the two roles swapped when flipped is set)."""

    a: Word
    b: Word
    flipped: bool = False


@dataclass(frozen=True)
class ConjugateOf:
    inner: object
    inner_word: Word
    by: Word


@dataclass(frozen=True)
class ProductOf:
    parts: tuple  # of (Word, certificate)


LICENSED_TAGS = (GenCommutator, ConjugateOf, ProductOf, LevelElement)


def validate_certificate(
    cert,
    word: Word,
    ideal_i: Ideal,
    ideal_j: Ideal,
    rep: Representation,
    ring: Ring,
) -> bool:
    """Check a certificate's leaves and shape against its word."""
    if isinstance(cert, GenOfEI):
        if len(word.letters) != 1:
            return False
        letters = list(word.walk_x_letters(include_conjugators=False))
        return len(letters) == 1 and cert.ideal.contains(letters[0][0].coeff)
    if isinstance(cert, LevelElement):
        for sym in word.letters:
            if not isinstance(sym, (XSym, InvSym)):
                return False
        for xsym, _ in word.walk_x_letters(include_conjugators=False):
            if not cert.ideal.contains(xsym.coeff):
                return False
        return congruence_level_test(evaluate(word, rep, ring), cert.ideal)
    if isinstance(cert, GenCommutator):
        side_a, side_b = (ideal_j, ideal_i) if cert.flipped else (ideal_i, ideal_j)
        for xsym, _ in cert.a.walk_x_letters(include_conjugators=False):
            if not side_a.contains(xsym.coeff):
                return False
        for xsym, _ in cert.b.walk_x_letters(include_conjugators=False):
            if not side_b.contains(xsym.coeff):
                return False
        expect = evaluate(commutator(cert.a, cert.b), rep, ring)
        return evaluate(word, rep, ring) == expect
    if isinstance(cert, ConjugateOf):
        if not validate_certificate(cert.inner, cert.inner_word, ideal_i, ideal_j, rep, ring):
            return False
        expect = evaluate(conj_word(cert.inner_word, cert.by), rep, ring)
        return evaluate(word, rep, ring) == expect
    if isinstance(cert, ProductOf):
        acc = rep.identity(ring)
        for part_word, part_cert in cert.parts:
            if not validate_certificate(part_cert, part_word, ideal_i, ideal_j, rep, ring):
                return False
            acc = acc * evaluate(part_word, rep, ring)
        return acc == evaluate(word, rep, ring)
    raise WordError(f"unknown certificate {cert!r}")


def certificate_tags(cert) -> set[str]:
    """The set of tag names appearing in a certificate tree."""
    out = {type(cert).__name__}
    if isinstance(cert, ConjugateOf):
        out |= certificate_tags(cert.inner)
    if isinstance(cert, ProductOf):
        for _, sub in cert.parts:
            out |= certificate_tags(sub)
    return out


def certificate_to_json(cert) -> dict:
    if isinstance(cert, GenOfEI):
        return {"tag": "GenOfEI", "ideal": str(cert.ideal)}
    if isinstance(cert, LevelElement):
        return {"tag": "LevelElement", "ideal": str(cert.ideal)}
    if isinstance(cert, GenCommutator):
        return {
            "tag": "GenCommutator",
            "a": word_to_sexpr(cert.a),
            "b": word_to_sexpr(cert.b),
            "flipped": cert.flipped,
        }
    if isinstance(cert, ConjugateOf):
        return {
            "tag": "ConjugateOf",
            "inner": certificate_to_json(cert.inner),
            "inner_word": word_to_sexpr(cert.inner_word),
            "by": word_to_sexpr(cert.by),
        }
    if isinstance(cert, ProductOf):
        return {
            "tag": "ProductOf",
            "parts": [
                {"word": word_to_sexpr(w), "certificate": certificate_to_json(c)}
                for w, c in cert.parts
            ],
        }
    raise WordError(f"unknown certificate {cert!r}")


# ---------------------------------------------------------------------------
# serialization


def _symbol_to_sexpr(sym) -> str:
    if isinstance(sym, XSym):
        return f"(x {root_name(sym.root)} {element_to_string(sym.coeff)})"
    if isinstance(sym, ZSym):
        return (
            f"(z {root_name(sym.root)} {element_to_string(sym.xi)} "
            f"{element_to_string(sym.eta)})"
        )
    if isinstance(sym, InvSym):
        return f"(inv {_symbol_to_sexpr(sym.inner)})"
    if isinstance(sym, ConjSym):
        return f"(conj {word_to_sexpr(sym.base)} {word_to_sexpr(sym.by)})"
    raise WordError(f"unknown symbol {sym!r}")


def word_to_sexpr(word: Word) -> str:
    if len(word.letters) == 1:
        return _symbol_to_sexpr(word.letters[0])
    return "(w " + " ".join(_symbol_to_sexpr(s) for s in word.letters) + ")" if word.letters else "(w)"


def _tokenize_sexpr(text: str) -> list[str]:
    out = []
    cur = ""
    for ch in text:
        if ch in "()":
            if cur:
                out.append(cur)
                cur = ""
            out.append(ch)
        elif ch.isspace():
            if cur:
                out.append(cur)
                cur = ""
        else:
            cur += ch
    if cur:
        out.append(cur)
    return out


def parse_word(ring: Ring, system: RootSystem, text: str) -> Word:
    tokens = _tokenize_sexpr(text)
    pos = 0

    def parse_node():
        nonlocal pos
        if tokens[pos] != "(":
            raise WordError(f"expected '(' at token {pos} of {text!r}")
        pos += 1
        head = tokens[pos]
        pos += 1
        if head == "x":
            root = parse_root(system, tokens[pos]); pos += 1
            coeff = parse_element(ring, tokens[pos]); pos += 1
            node = XSym(root, coeff)
        elif head == "z":
            root = parse_root(system, tokens[pos]); pos += 1
            xi = parse_element(ring, tokens[pos]); pos += 1
            eta = parse_element(ring, tokens[pos]); pos += 1
            node = ZSym(root, xi, eta)
        elif head == "inv":
            node = InvSym(parse_node())
        elif head == "conj":
            base = _node_to_word(parse_node())
            by = _node_to_word(parse_node())
            node = ConjSym(base, by)
        elif head == "w":
            symbols = []
            while tokens[pos] != ")":
                symbols.append(parse_node())
            node = Word(tuple(symbols))
        else:
            raise WordError(f"unknown head {head!r} in {text!r}")
        if tokens[pos] != ")":
            raise WordError(f"missing ')' in {text!r}")
        pos += 1
        return node

    node = parse_node()
    if pos != len(tokens):
        raise WordError(f"trailing tokens in {text!r}")
    return _node_to_word(node)


def _node_to_word(node) -> Word:
    if isinstance(node, Word):
        return node
    return Word((node,))
