"""The braid group B3 = <b, c | b^3 = c^2> and its action.

Elements are kept in the normal form a^m * s1 ... sk, where a = b^3 =
c^2 generates the center and the tail s1 ... sk is a strictly
alternating word in the syllables {b, bb} and {c}.  Modulo the center
the group is Z3 * Z2, whose free-product normal form is unique, and the
a-exponent is tracked exactly through every rewrite, so two BraidWords
are equal in the group iff they are structurally equal.

The action on an algebra composes the shipped semilinear maps: a acts
by conjugation with T1, b and c by their generator tables.  Composition
follows group order, b3_act(u*v, p) = b3_act(u, b3_act(v, p)).
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Iterable, Union

from .algebras import (
    AlgebraPresentation,
    SemilinearMap,
    braid_b_map,
    braid_c_map,
    compose_maps,
    conjugation_map,
    identity_map,
    map_power,
    semilinear_apply,
    verify_map,
)
from .ncpoly import NCPoly

_LETTERS = frozenset("bBcCaA")


@dataclass(frozen=True)
class BraidWord:
    a_power: int
    tail: tuple  # syllables "b", "bb", "c", strictly alternating in type

    def __post_init__(self):
        last = None
        for syl in self.tail:
            if syl not in ("b", "bb", "c"):
                raise ValueError(f"bad syllable {syl!r}")
            kind = syl[0]
            if kind == last:
                raise ValueError("tail syllables must alternate")
            last = kind

    @classmethod
    def identity(cls) -> "BraidWord":
        return cls(0, ())

    @classmethod
    def from_letters(cls, letters: Iterable[str]) -> "BraidWord":
        """Normalize a letter sequence over b, B, c, C, a, A.

        Capitals are inverses, eliminated via b^-1 = a^-1 b^2 and
        c^-1 = a^-1 c; adjacent like syllables then merge modulo
        b^3 = c^2 = a.
        """
        a_power = 0
        stack: list = []

        def push_b(count: int):
            nonlocal a_power
            if stack and stack[-1][0] == "b":
                count += len(stack.pop())
            if count >= 3:
                a_power += count // 3
                count %= 3
            if count:
                stack.append("b" * count)

        def push_c():
            nonlocal a_power
            if stack and stack[-1] == "c":
                stack.pop()
                a_power += 1
            else:
                stack.append("c")

        for ch in letters:
            if ch == "a":
                a_power += 1
            elif ch == "A":
                a_power -= 1
            elif ch == "b":
                push_b(1)
            elif ch == "B":
                a_power -= 1
                push_b(2)
            elif ch == "c":
                push_c()
            elif ch == "C":
                a_power -= 1
                push_c()
            else:
                raise ValueError(f"bad braid letter {ch!r}")
        return cls(a_power, tuple(stack))

    @classmethod
    def parse(cls, text: str) -> "BraidWord":
        return cls.from_letters(ch for ch in text if not ch.isspace())

    def is_identity(self) -> bool:
        return self.a_power == 0 and not self.tail

    def letters(self) -> str:
        """Letter rendition; parsing it back reproduces the word."""
        prefix = ("a" if self.a_power > 0 else "A") * abs(self.a_power)
        return prefix + "".join(self.tail)

    def __str__(self):
        return self.letters() or "e"

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if not isinstance(other, BraidWord):
            return NotImplemented
        merged = BraidWord.from_letters("".join(self.tail) + "".join(other.tail))
        return BraidWord(self.a_power + other.a_power + merged.a_power, merged.tail)

    def inverse(self) -> "BraidWord":
        return BraidWord.from_letters(self.letters().swapcase()[::-1])

    def __pow__(self, power: int) -> "BraidWord":
        out = BraidWord.identity()
        base = self if power >= 0 else self.inverse()
        for _ in range(abs(power)):
            out = out * base
        return out


def b3_normal_form(letters: Union[str, Iterable[str], BraidWord]) -> BraidWord:
    if isinstance(letters, BraidWord):
        return letters
    if isinstance(letters, str):
        return BraidWord.parse(letters)
    return BraidWord.from_letters(letters)


class BraidAction:
    """Composed semilinear maps for braid words over one algebra,
    cached per normal form."""

    def __init__(self, algebra: AlgebraPresentation):
        self.algebra = algebra
        b = braid_b_map(algebra)
        self._syllable = {
            "b": b,
            "bb": compose_maps(b, b, name="b^2"),
            "c": braid_c_map(algebra),
        }
        self._a = conjugation_map(algebra)
        self._a_inv = conjugation_map(algebra, inverse=True)
        self._cache: dict = {}

    def map_for(self, w) -> SemilinearMap:
        w = b3_normal_form(w)
        cached = self._cache.get(w)
        if cached is not None:
            return cached
        phi = identity_map(self.algebra)
        for syllable in w.tail:
            phi = compose_maps(phi, self._syllable[syllable])
        central = self._a if w.a_power >= 0 else self._a_inv
        for _ in range(abs(w.a_power)):
            phi = compose_maps(central, phi)
        phi = SemilinearMap(str(w), self.algebra, phi.images, phi.param_map)
        self._cache[w] = phi
        return phi

    def act(self, w, p: NCPoly) -> NCPoly:
        return semilinear_apply(self.map_for(w), p)


_actions: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()


def _action_for(algebra: AlgebraPresentation) -> BraidAction:
    action = _actions.get(algebra)
    if action is None:
        action = BraidAction(algebra)
        _actions[algebra] = action
    return action


def b3_to_map(w, algebra: AlgebraPresentation) -> SemilinearMap:
    return _action_for(algebra).map_for(w)


def b3_act(w, p: NCPoly, algebra: AlgebraPresentation) -> NCPoly:
    return _action_for(algebra).act(w, p)


@dataclass(frozen=True)
class B3Report:
    """Outcome of the group-relation checks on an algebra."""

    agreements: tuple  # (label, generator, EqualityVerdict)
    inverses: tuple  # (label, generator, EqualityVerdict)
    well_defined: tuple  # (map name, MapReport)
    params_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.params_ok
            and all(v.equal for _, _, v in self.agreements)
            and all(v.equal for _, _, v in self.inverses)
            and all(report.ok for _, report in self.well_defined)
        )


def verify_b3_relations(algebra: AlgebraPresentation) -> B3Report:
    """Check b^3 = c^2 = a on the generator images, and exhibit
    b^-1 = a^-1 b^2 and c^-1 = a^-1 c as two-sided inverses."""
    action = _action_for(algebra)
    b = action._syllable["b"]
    c = action._syllable["c"]
    a = action._a
    b_cubed = map_power(b, 3, name="b^3")
    c_squared = map_power(c, 2, name="c^2")

    well_defined = tuple(
        (phi.name, verify_map(phi, algebra)) for phi in (b, c, a)
    )

    agreements = []
    pairs = ((b_cubed, c_squared), (b_cubed, a), (c_squared, a))
    for left, right in pairs:
        label = f"{left.name} = {right.name}"
        for gen_name in algebra.alphabet.symbols:
            verdict = algebra.check_equal(left.images[gen_name], right.images[gen_name])
            agreements.append((label, gen_name, verdict))

    inverses = []
    ident = identity_map(algebra)
    for phi, inv_word in ((b, "Abb"), (c, "Ac")):
        phi_inv = action.map_for(inv_word)
        for left, right, tag in (
            (phi, phi_inv, f"{phi.name}*({inv_word})"),
            (phi_inv, phi, f"({inv_word})*{phi.name}"),
        ):
            composed = compose_maps(left, right)
            for gen_name in algebra.alphabet.symbols:
                verdict = algebra.check_equal(
                    composed.images[gen_name], ident.images[gen_name]
                )
                inverses.append((tag, gen_name, verdict))

    params_ok = (
        b_cubed.param_map == a.param_map == c_squared.param_map == ident.param_map
    )
    return B3Report(tuple(agreements), tuple(inverses), well_defined, params_ok)
