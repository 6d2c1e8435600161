"""Noncommutative polynomials over a free monoid.

Words are plain tuples of generator indices into an :class:`Alphabet`;
tuples hash natively, which is all the interning we need for fast term
maps.  An :class:`NCPoly` maps words to Laurent-polynomial coefficients
and is kept canonical (no zero coefficients), so equality is structural.

Term orders are degree-lexicographic: total degree first, then the
letter-by-letter comparison under a configurable precedence permutation
of the alphabet.  Degree dominance is what makes every quadratic-to-
linear rule admissible regardless of the permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .coeffring import LaurentPoly, ParamRing
from .errors import (
    AlphabetMismatchError,
    IncompatibleRingError,
    ZeroPolynomialError,
)

Word = tuple  # tuple[int, ...]; indices into an Alphabet


@dataclass(frozen=True)
class Alphabet:
    """Ordered generator names for a free algebra."""

    symbols: tuple

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("generator names must be distinct")
        for name in self.symbols:
            if not name.isidentifier():
                raise ValueError(f"bad generator name {name!r}")

    def __len__(self):
        return len(self.symbols)

    def index(self, name: str) -> int:
        try:
            return self.symbols.index(name)
        except ValueError:
            raise ValueError(f"unknown generator {name!r}") from None

    def word(self, *names: str) -> Word:
        return tuple(self.index(n) for n in names)

    def render_word(self, w: Word) -> str:
        if not w:
            return "1"
        return "*".join(self.symbols[g] for g in w)

    def parse_word(self, text: str) -> Word:
        text = text.strip()
        if text == "1":
            return ()
        return tuple(self.index(part.strip()) for part in text.split("*"))


class TermOrder:
    """Degree-lexicographic word order seeded by an alphabet permutation.

    The permutation lists generator names from lowest to highest
    precedence-rank position, defaulting to the alphabet's own order.
    """

    __slots__ = ("alphabet", "precedence", "_rank")

    def __init__(self, alphabet: Alphabet, precedence: Sequence[str] | None = None):
        if precedence is None:
            precedence = alphabet.symbols
        precedence = tuple(precedence)
        if sorted(precedence) != sorted(alphabet.symbols):
            raise ValueError("precedence must permute the alphabet")
        self.alphabet = alphabet
        self.precedence = precedence
        rank = [0] * len(alphabet)
        for pos, name in enumerate(precedence):
            rank[alphabet.index(name)] = pos
        self._rank = tuple(rank)

    def key(self, w: Word):
        """Sort key: comparing keys compares words under the order."""
        return (len(w), tuple(self._rank[g] for g in w))

    def compare(self, u: Word, v: Word) -> int:
        ku, kv = self.key(u), self.key(v)
        if ku < kv:
            return -1
        if ku > kv:
            return 1
        return 0

    def __eq__(self, other):
        return (
            isinstance(other, TermOrder)
            and self.alphabet == other.alphabet
            and self.precedence == other.precedence
        )

    def __hash__(self):
        return hash((self.alphabet, self.precedence))

    def __repr__(self):
        return f"TermOrder({' < '.join(self.precedence)})"


def word_compare(u: Word, v: Word, order: TermOrder) -> int:
    """Compare two words under the given order (-1, 0 or +1)."""
    n = len(order.alphabet)
    for w in (u, v):
        if any(not (0 <= g < n) for g in w):
            raise AlphabetMismatchError("word does not fit the order's alphabet")
    return order.compare(u, v)


class NCPoly:
    """A finite sum of words with Laurent-polynomial coefficients.

    Instances are treated as immutable; arithmetic returns new objects.
    Scalar multiplication accepts ints, Fractions and LaurentPolys, all
    of which commute with every word.
    """

    __slots__ = ("alphabet", "ring", "terms")

    def __init__(self, alphabet: Alphabet, ring: ParamRing, terms: dict):
        self.alphabet = alphabet
        self.ring = ring
        self.terms = terms

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet, ring: ParamRing) -> "NCPoly":
        return cls(alphabet, ring, {})

    @classmethod
    def monomial(cls, alphabet, ring, word: Word, coeff=None) -> "NCPoly":
        if coeff is None:
            coeff = ring.one()
        elif isinstance(coeff, (int, Fraction)):
            coeff = ring.scalar(coeff)
        if coeff.is_zero():
            return cls.zero(alphabet, ring)
        return cls(alphabet, ring, {tuple(word): coeff})

    @classmethod
    def from_terms(cls, alphabet, ring, terms: Mapping) -> "NCPoly":
        out = {}
        n = len(alphabet)
        for word, coeff in terms.items():
            word = tuple(word)
            if any(not (0 <= g < n) for g in word):
                raise AlphabetMismatchError(f"bad letter in word {word!r}")
            if isinstance(coeff, (int, Fraction)):
                coeff = ring.scalar(coeff)
            if not coeff.is_zero():
                out[word] = coeff
        return cls(alphabet, ring, out)

    # -- predicates and views ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        """Maximal word length in the support; 0 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=0)

    def support(self):
        return self.terms.keys()

    def leading_term(self, order: TermOrder):
        """The (word, coefficient) pair maximal under the order."""
        if not self.terms:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        w = max(self.terms, key=order.key)
        return w, self.terms[w]

    def _require_compatible(self, other: "NCPoly"):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatchError("operands use different alphabets")
        if self.ring != other.ring:
            raise IncompatibleRingError("operands use different coefficient rings")

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = NCPoly.monomial(self.alphabet, self.ring, (), self._scalar(other))
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._require_compatible(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            if w in out:
                s = out[w] + c
                if s.is_zero():
                    del out[w]
                else:
                    out[w] = s
            else:
                out[w] = c
        return NCPoly(self.alphabet, self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.alphabet, self.ring, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            other = NCPoly.monomial(self.alphabet, self.ring, (), self._scalar(other))
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _scalar(self, value) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            if value.ring != self.ring:
                raise IncompatibleRingError("scalar lives over a different ring")
            return value
        return self.ring.scalar(value)

    def scale(self, value) -> "NCPoly":
        c0 = self._scalar(value)
        out = {}
        for w, c in self.terms.items():
            s = c * c0
            if not s.is_zero():
                out[w] = s
        return NCPoly(self.alphabet, self.ring, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._require_compatible(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                if w in out:
                    s = out[w] + c
                    if s.is_zero():
                        del out[w]
                    else:
                        out[w] = s
                elif not c.is_zero():
                    out[w] = c
        return NCPoly(self.alphabet, self.ring, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            return NotImplemented
        result = NCPoly.monomial(self.alphabet, self.ring, ())
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.ring == other.ring
            and self.terms == other.terms
        )

    __hash__ = None

    # -- rendering ------------------------------------------------------------

    def render(self) -> str:
        """Canonical text form, parseable by the expression grammar.

        Words are sorted descending by degree then alphabet position;
        this fixed convention (independent of any rewrite order) is what
        certificate hashes are computed over.
        """
        if not self.terms:
            return "0"
        pieces = []
        for w in sorted(self.terms, key=lambda w: (len(w), w), reverse=True):
            c = self.terms[w]
            negative = (
                len(c.terms) == 1
                and self.ring.base.is_negative(next(iter(c.terms.values())))
            )
            if negative:
                c = -c
            coeff_txt = c.render(as_factor=True)
            if not w:
                body = coeff_txt
            elif coeff_txt == "1":
                body = self.alphabet.render_word(w)
            else:
                body = coeff_txt + "*" + self.alphabet.render_word(w)
            pieces.append(("-" if negative else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"NCPoly({self.render()})"


#: 64-bit FNV-1a parameters
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


def fnv1a64(text: str) -> str:
    """64-bit FNV-1a of the UTF-8 bytes, as 16 lowercase hex digits."""
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return f"{h:016x}"


def canonical_hash(p: NCPoly) -> str:
    """Hash of the canonical rendering; what certificates pin down."""
    return fnv1a64(p.render())
