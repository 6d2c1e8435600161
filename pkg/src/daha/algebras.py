"""Shipped algebra presentations and the structure maps between them.

Three presets:

* ``H_generic`` — the five-parameter double affine Hecke algebra of
  type (C1v, C1): Hecke quadratics for T0, T1, V0, V1 plus the product
  relation V0*T0*V1*T1 = q^-1.
* ``UDAHA_model`` — the universal variant, with the central traces
  cT0, cT1, cV0, cV1 adjoined as free (plain) parameters and the
  central product inverse Q adjoined invertibly.  It surjects onto
  H_generic by cTi -> ki+ki^-1, cVi -> li+li^-1, Q -> q, so identities
  proved here transfer.
* ``CentralPair`` — two generators u, v whose traces cu, cv are
  central; the minimal setting in which uv + (uv)^-1 = vu + (vu)^-1.

On top of the presets: inverse elimination (t^-1 = (t+t^-1) - t), the
elements x, y, z, semilinear endomorphisms (generator images plus a
permutation of the coefficient parameters), the braid-flavoured maps
on the four generators, parameter specialization, and extraction of
the Askey-Wilson-shaped form of the cyclic x, y, z relations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .coeffring import (
    RATIONALS,
    LaurentPoly,
    ParamRing,
    divide_exact,
    monomial_inverse,
    specialize,
)
from .errors import (
    ExtractionError,
    ParseError,
    PresentationError,
    UnsupportedPresetError,
)
from .exprs import PresentationSpec, load_presentation, parse_expr
from .ncpoly import Alphabet, NCPoly, TermOrder, Word
from .rewrite import EqualityVerdict, RewriteSystem

PRESET_NAMES = ("H_generic", "UDAHA_model", "CentralPair")


class AlgebraPresentation:
    """A named algebra: parameters, generators, axioms, rewrite system.

    The axiom list is immutable once built and survives completion
    untouched, even when inter-reduction retires the corresponding
    active rules; map verification and trace lookups go through it.
    """

    def __init__(
        self,
        name: str,
        ring: ParamRing,
        alphabet: Alphabet,
        order: Optional[TermOrder] = None,
    ):
        self.name = name
        self.ring = ring
        self.alphabet = alphabet
        self.system = RewriteSystem(alphabet, ring, order, name=name)
        self.axioms: list = []  # (lhs word, rhs NCPoly), in declaration order
        self._traces: dict = {}

    def __repr__(self):
        return f"AlgebraPresentation({self.name}, {len(self.axioms)} axioms)"

    # -- construction ------------------------------------------------------

    def add_axiom(self, lhs: Word, rhs: NCPoly):
        self.system.add_rule(lhs, rhs)
        self.axioms.append((tuple(lhs), rhs))

    # -- element builders -----------------------------------------------------

    def gen(self, name: str) -> NCPoly:
        return NCPoly.monomial(self.alphabet, self.ring, (self.alphabet.index(name),))

    def one(self) -> NCPoly:
        return NCPoly.monomial(self.alphabet, self.ring, ())

    def zero(self) -> NCPoly:
        return NCPoly.zero(self.alphabet, self.ring)

    def scalar(self, value) -> NCPoly:
        """Lift an int, Fraction or coefficient to a degree-0 element."""
        return NCPoly.monomial(self.alphabet, self.ring, (), value)

    def param(self, name: str, power: int = 1) -> LaurentPoly:
        return self.ring.param(name, power)

    def parse(self, text: str) -> NCPoly:
        return parse_expr(text, self.alphabet, self.ring, self.inv_word)

    # -- inverses via the quadratic axioms ---------------------------------------

    def trace(self, gen_name: str) -> LaurentPoly:
        """The central trace t of a generator, read off its quadratic
        axiom g*g -> t*g - 1."""
        if gen_name in self._traces:
            return self._traces[gen_name]
        g = self.alphabet.index(gen_name)
        for lhs, rhs in self.axioms:
            if lhs != (g, g):
                continue
            coeff = rhs.terms.get((g,))
            constant = rhs.terms.get(())
            if (
                coeff is not None
                and constant == self.ring.scalar(-1)
                and len(rhs.terms) == 2
            ):
                self._traces[gen_name] = coeff
                return coeff
            raise UnsupportedPresetError(
                f"the quadratic axiom for {gen_name} is not of trace form"
            )
        raise UnsupportedPresetError(f"no quadratic axiom for {gen_name}")

    def inv_word(self, word: Word) -> NCPoly:
        """Inverse of a product of generators: reversed product of the
        per-generator inverses (trace - g)."""
        out = self.one()
        for g in reversed(tuple(word)):
            name = self.alphabet.symbols[g]
            factor = self.scalar(self.trace(name)) - self.gen(name)
            out = out * factor
        return out

    def inv_element(self, m) -> NCPoly:
        """Inverse of a standard monomial (a word, or a one-term NCPoly
        whose coefficient is a unit)."""
        if isinstance(m, NCPoly):
            if len(m.terms) != 1:
                raise UnsupportedPresetError(
                    "only standard monomials have syntactic inverses"
                )
            word, coeff = next(iter(m.terms.items()))
            return self.inv_word(word) * monomial_inverse(coeff)
        return self.inv_word(tuple(m))

    # -- verification passthroughs ------------------------------------------------

    def complete(self, degree: int):
        return self.system.complete_to_degree(degree)

    def nf(self, p: NCPoly) -> NCPoly:
        return self.system.nf(p)

    def check_equal(self, p, r=None, verbose: bool = False) -> EqualityVerdict:
        return self.system.check_equal(p, r, verbose=verbose)


# -- presets ---------------------------------------------------------------


def _hecke_quadratic(pres: AlgebraPresentation, gen_name: str, trace: LaurentPoly):
    g = pres.alphabet.index(gen_name)
    rhs = NCPoly.from_terms(
        pres.alphabet, pres.ring, {(g,): trace, (): pres.ring.scalar(-1)}
    )
    pres.add_axiom((g, g), rhs)


def preset(name: str, order: Optional[Sequence[str]] = None) -> AlgebraPresentation:
    """One of the shipped presentations, optionally reordered."""
    if name == "H_generic":
        ring = ParamRing(
            RATIONALS,
            [("k0", True), ("k1", True), ("l0", True), ("l1", True), ("q", True)],
        )
        alphabet = Alphabet(("T0", "T1", "V0", "V1"))
        pres = AlgebraPresentation(
            name, ring, alphabet, TermOrder(alphabet, order) if order else None
        )
        for gen_name, sym in (("T0", "k0"), ("T1", "k1"), ("V0", "l0"), ("V1", "l1")):
            _hecke_quadratic(pres, gen_name, ring.param(sym) + ring.param(sym, -1))
        pres.add_axiom(
            alphabet.word("V0", "T0", "V1", "T1"),
            NCPoly.monomial(alphabet, ring, (), ring.param("q", -1)),
        )
        return pres
    if name == "UDAHA_model":
        ring = ParamRing(
            RATIONALS,
            [("cT0", False), ("cT1", False), ("cV0", False), ("cV1", False), ("Q", True)],
        )
        alphabet = Alphabet(("T0", "T1", "V0", "V1"))
        pres = AlgebraPresentation(
            name, ring, alphabet, TermOrder(alphabet, order) if order else None
        )
        for gen_name, sym in (("T0", "cT0"), ("T1", "cT1"), ("V0", "cV0"), ("V1", "cV1")):
            _hecke_quadratic(pres, gen_name, ring.param(sym))
        pres.add_axiom(
            alphabet.word("V0", "T0", "V1", "T1"),
            NCPoly.monomial(alphabet, ring, (), ring.param("Q", -1)),
        )
        return pres
    if name == "CentralPair":
        ring = ParamRing(
            RATIONALS,
            [("cu", False), ("cv", False)],
        )
        alphabet = Alphabet(("u", "v"))
        pres = AlgebraPresentation(
            name, ring, alphabet, TermOrder(alphabet, order) if order else None
        )
        _hecke_quadratic(pres, "u", ring.param("cu"))
        _hecke_quadratic(pres, "v", ring.param("cv"))
        return pres
    raise UnsupportedPresetError(f"unknown preset {name!r}")


def from_presentation(spec: PresentationSpec) -> AlgebraPresentation:
    """Build an algebra from a parsed presentation file."""
    try:
        ring = ParamRing(spec.base, spec.params)
        alphabet = Alphabet(spec.generators)
        order = TermOrder(alphabet, spec.order) if spec.order else None
    except ValueError as exc:
        raise PresentationError(str(exc)) from None
    pres = AlgebraPresentation(spec.name, ring, alphabet, order)
    for lhs_text, rhs_text in spec.rules:
        try:
            lhs = alphabet.parse_word(lhs_text)
            rhs = parse_expr(rhs_text, alphabet, ring)
        except (ParseError, ValueError) as exc:
            raise PresentationError(f"bad rule {lhs_text!r}: {exc}") from None
        try:
            pres.add_axiom(lhs, rhs)
        except Exception as exc:
            raise PresentationError(f"cannot orient rule {lhs_text!r}: {exc}") from None
    return pres


def load_algebra_file(path) -> AlgebraPresentation:
    with open(path, encoding="utf-8") as handle:
        return from_presentation(load_presentation(handle.read()))


def resolve_algebra(token: str) -> AlgebraPresentation:
    """A preset name, or a path to a presentation file."""
    if token in PRESET_NAMES:
        return preset(token)
    import os

    if os.path.exists(token):
        return load_algebra_file(token)
    raise UnsupportedPresetError(
        f"{token!r} is neither a preset ({', '.join(PRESET_NAMES)}) nor a file"
    )


# -- the x, y, z elements ----------------------------------------------------


@dataclass(frozen=True)
class XYZ:
    x: NCPoly
    y: NCPoly
    z: NCPoly

    def as_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "z": self.z}


def build_xyz(algebra: AlgebraPresentation) -> XYZ:
    """x = V0*T1 + (V0*T1)^-1 and the companions from V1*T1 and T0*T1."""
    for name in ("T0", "T1", "V0", "V1"):
        if name not in algebra.alphabet.symbols:
            raise UnsupportedPresetError(
                f"{algebra.name} has no generator {name}; x, y, z are undefined"
            )
    def pair(first, second):
        word = algebra.alphabet.word(first, second)
        return NCPoly.monomial(algebra.alphabet, algebra.ring, word) + algebra.inv_word(word)

    return XYZ(x=pair("V0", "T1"), y=pair("V1", "T1"), z=pair("T0", "T1"))


# -- semilinear maps ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SemilinearMap:
    """Generator images plus a permutation of the coefficient parameters.

    The parameter action is a ring automorphism (here always a
    flag-preserving permutation of the symbols), applied to every
    coefficient before the generator images are substituted.
    """

    name: str
    algebra: AlgebraPresentation
    images: Mapping[str, NCPoly]
    param_map: Mapping[str, str]

    def __post_init__(self):
        ring = self.algebra.ring
        if set(self.images) != set(self.algebra.alphabet.symbols):
            raise ValueError("images must cover the alphabet exactly")
        if set(self.param_map) != set(ring.params) or set(
            self.param_map.values()
        ) != set(ring.params):
            raise ValueError("parameter action must permute the parameters")
        for src, dst in self.param_map.items():
            if ring.is_invertible(src) != ring.is_invertible(dst):
                raise ValueError(
                    f"parameter action breaks invertibility at {src} -> {dst}"
                )

    def image(self, gen_name: str) -> NCPoly:
        return self.images[gen_name]

    def __repr__(self):
        return f"SemilinearMap({self.name} on {self.algebra.name})"


def apply_param_map(coeff: LaurentPoly, phi: SemilinearMap) -> LaurentPoly:
    ring = phi.algebra.ring
    position = [ring.index(phi.param_map[name]) for name in ring.params]
    out = {}
    for exps, c in coeff.terms.items():
        moved = [0] * len(exps)
        for i, e in enumerate(exps):
            moved[position[i]] = e
        out[tuple(moved)] = c
    return LaurentPoly(ring, out)


def semilinear_apply(phi: SemilinearMap, p: NCPoly) -> NCPoly:
    """Apply the map and reduce: parameters first, then letterwise
    substitution of generator images."""
    algebra = phi.algebra
    if p.alphabet != algebra.alphabet or p.ring != algebra.ring:
        raise ValueError("element does not live on the map's algebra")
    out = algebra.zero()
    symbols = algebra.alphabet.symbols
    for word, coeff in p.terms.items():
        factor = algebra.scalar(apply_param_map(coeff, phi))
        for letter in word:
            factor = factor * phi.images[symbols[letter]]
        out = out + factor
    return algebra.nf(out)


def identity_map(algebra: AlgebraPresentation) -> SemilinearMap:
    return SemilinearMap(
        "id",
        algebra,
        {name: algebra.gen(name) for name in algebra.alphabet.symbols},
        {name: name for name in algebra.ring.params},
    )


def compose_maps(phi: SemilinearMap, psi: SemilinearMap, name: Optional[str] = None) -> SemilinearMap:
    """phi after psi."""
    if phi.algebra is not psi.algebra:
        raise ValueError("cannot compose maps over different algebras")
    images = {
        gen_name: semilinear_apply(phi, image) for gen_name, image in psi.images.items()
    }
    param_map = {src: phi.param_map[dst] for src, dst in psi.param_map.items()}
    return SemilinearMap(name or f"{phi.name}*{psi.name}", phi.algebra, images, param_map)


def map_power(phi: SemilinearMap, power: int, name: Optional[str] = None) -> SemilinearMap:
    if power < 0:
        raise ValueError("negative map powers are not defined here")
    out = identity_map(phi.algebra)
    for _ in range(power):
        out = compose_maps(phi, out)
    return SemilinearMap(name or f"{phi.name}^{power}", phi.algebra, out.images, out.param_map)


@dataclass(frozen=True)
class MapReport:
    map_name: str
    axiom_verdicts: tuple  # of (axiom text, EqualityVerdict)

    @property
    def ok(self) -> bool:
        return all(verdict.equal for _, verdict in self.axiom_verdicts)


def verify_map(phi: SemilinearMap, algebra: AlgebraPresentation) -> MapReport:
    """Well-definedness: the image of every axiom reduces to zero."""
    if phi.algebra is not algebra:
        raise ValueError("map was built over a different algebra")
    verdicts = []
    for lhs, rhs in algebra.axioms:
        lhs_poly = NCPoly.monomial(algebra.alphabet, algebra.ring, lhs)
        verdict = algebra.check_equal(
            semilinear_apply(phi, lhs_poly), semilinear_apply(phi, rhs)
        )
        text = f"{algebra.alphabet.render_word(lhs)} -> {rhs.render()}"
        verdicts.append((text, verdict))
    return MapReport(phi.name, tuple(verdicts))


# -- the shipped maps -----------------------------------------------------------


def trace_symbol(algebra: AlgebraPresentation, gen_name: str) -> str:
    """The unique parameter symbol occurring in a generator's trace."""
    trace = algebra.trace(gen_name)
    seen = set()
    for exps in trace.terms:
        for i, e in enumerate(exps):
            if e != 0:
                seen.add(algebra.ring.params[i])
    if len(seen) != 1:
        raise UnsupportedPresetError(
            f"trace of {gen_name} does not carry a single parameter symbol"
        )
    return seen.pop()


def product_axiom(algebra: AlgebraPresentation):
    """The unique non-quadratic product axiom (lhs length > 2)."""
    found = [(lhs, rhs) for lhs, rhs in algebra.axioms if len(lhs) > 2]
    if len(found) != 1:
        raise UnsupportedPresetError(
            f"{algebra.name} lacks a unique product axiom"
        )
    return found[0]


def q_value(algebra: AlgebraPresentation) -> LaurentPoly:
    """The unit scalar q with product-axiom rhs q^-1 * 1."""
    lhs, rhs = product_axiom(algebra)
    if set(rhs.support()) != {()}:
        raise UnsupportedPresetError("product axiom rhs is not scalar")
    return monomial_inverse(rhs.terms[()])


def q_symbol(algebra: AlgebraPresentation) -> str:
    value = q_value(algebra)
    exps = next(iter(value.terms))
    names = [algebra.ring.params[i] for i, e in enumerate(exps) if e != 0]
    if len(names) != 1:
        raise UnsupportedPresetError("product axiom carries no single q symbol")
    return names[0]


def _fixed_params_map(algebra: AlgebraPresentation, moves: Mapping[str, str]) -> dict:
    out = {name: name for name in algebra.ring.params}
    out.update(moves)
    return out


def four_cycle(algebra: AlgebraPresentation) -> SemilinearMap:
    """V0 -> T0 -> V1 -> T1 -> V0, with the induced trace-symbol cycle."""
    images = {
        "V0": algebra.gen("T0"),
        "T0": algebra.gen("V1"),
        "V1": algebra.gen("T1"),
        "T1": algebra.gen("V0"),
    }
    moves = {}
    for src, dst in (("V0", "T0"), ("T0", "V1"), ("V1", "T1"), ("T1", "V0")):
        moves[trace_symbol(algebra, src)] = trace_symbol(algebra, dst)
    return SemilinearMap("four_cycle", algebra, images, _fixed_params_map(algebra, moves))


def conjugation_map(algebra: AlgebraPresentation, inverse: bool = False) -> SemilinearMap:
    """h -> T1^-1 * h * T1 (or its inverse), parameters untouched."""
    t1 = algebra.gen("T1")
    t1_inv = algebra.inv_word(algebra.alphabet.word("T1"))
    left, right = (t1, t1_inv) if inverse else (t1_inv, t1)
    images = {
        name: algebra.nf(left * algebra.gen(name) * right)
        for name in algebra.alphabet.symbols
    }
    name = "conj_T1_inv" if inverse else "conj_T1"
    return SemilinearMap(name, algebra, images, _fixed_params_map(algebra, {}))


def braid_b_map(algebra: AlgebraPresentation) -> SemilinearMap:
    """V0 -> T1^-1*V1*T1, T0 -> V0, V1 -> T0, T1 -> T1; traces follow."""
    t1 = algebra.gen("T1")
    t1_inv = algebra.inv_word(algebra.alphabet.word("T1"))
    images = {
        "V0": t1_inv * algebra.gen("V1") * t1,
        "T0": algebra.gen("V0"),
        "V1": algebra.gen("T0"),
        "T1": t1,
    }
    sym = {g: trace_symbol(algebra, g) for g in ("T0", "T1", "V0", "V1")}
    moves = {
        sym["V0"]: sym["V1"],
        sym["T0"]: sym["V0"],
        sym["V1"]: sym["T0"],
        sym["T1"]: sym["T1"],
    }
    return SemilinearMap("b", algebra, images, _fixed_params_map(algebra, moves))


def braid_c_map(algebra: AlgebraPresentation) -> SemilinearMap:
    """V0 -> T1^-1*V1*T1, T0 -> V0*T0*V0^-1, V1 -> V0, T1 -> T1."""
    t1 = algebra.gen("T1")
    t1_inv = algebra.inv_word(algebra.alphabet.word("T1"))
    v0 = algebra.gen("V0")
    v0_inv = algebra.inv_word(algebra.alphabet.word("V0"))
    images = {
        "V0": t1_inv * algebra.gen("V1") * t1,
        "T0": v0 * algebra.gen("T0") * v0_inv,
        "V1": v0,
        "T1": t1,
    }
    sym = {g: trace_symbol(algebra, g) for g in ("T0", "T1", "V0", "V1")}
    moves = {sym["V0"]: sym["V1"], sym["V1"]: sym["V0"]}
    return SemilinearMap("c", algebra, images, _fixed_params_map(algebra, moves))


# -- specialization ----------------------------------------------------------


def specialize_ncpoly(
    p: NCPoly,
    assignment: Mapping[str, LaurentPoly],
    target: AlgebraPresentation,
) -> NCPoly:
    """Push an element along a parameter specialization; generators map
    to the target generators of the same name."""
    out = {}
    for word, coeff in p.terms.items():
        moved = tuple(
            target.alphabet.index(p.alphabet.symbols[g]) for g in word
        )
        value = specialize(coeff, assignment, target.ring)
        if not value.is_zero():
            out[moved] = value
    return NCPoly(target.alphabet, target.ring, out)


def specialize_presentation(
    source: AlgebraPresentation,
    assignment: Mapping[str, LaurentPoly],
    target_ring: ParamRing,
    name: str,
) -> AlgebraPresentation:
    """The same axioms with specialized coefficients, as a new algebra."""
    order = TermOrder(source.alphabet, source.system.order.precedence)
    target = AlgebraPresentation(name, target_ring, source.alphabet, order)
    for lhs, rhs in source.axioms:
        terms = {
            word: specialize(coeff, assignment, target_ring)
            for word, coeff in rhs.terms.items()
        }
        target.add_axiom(lhs, NCPoly.from_terms(source.alphabet, target_ring, terms))
    return target


def surjection_assignment(
    source: AlgebraPresentation, target: AlgebraPresentation
) -> dict:
    """The parameter assignment realizing source -> target on traces and
    on the q symbol (for UDAHA_model -> H_generic: cTi -> ki+ki^-1,
    cVi -> li+li^-1, Q -> q)."""
    assignment = {}
    for gen_name in source.alphabet.symbols:
        assignment[trace_symbol(source, gen_name)] = target.trace(gen_name)
    assignment[q_symbol(source)] = target.ring.param(q_symbol(target))
    return assignment


# -- Askey-Wilson form ---------------------------------------------------------


@dataclass(frozen=True)
class AWRelation:
    """One cyclic relation q*A1*A2 - q^-1*A2*A1 = g*A3 + h."""

    name: str
    g: LaurentPoly
    h: NCPoly
    verdict: EqualityVerdict


@dataclass(frozen=True)
class AWForm:
    x: AWRelation
    y: AWRelation
    z: AWRelation

    def relations(self) -> tuple:
        return (self.z, self.x, self.y)


def aw_rhs(
    algebra: AlgebraPresentation, which: str, q: Optional[LaurentPoly] = None
) -> NCPoly:
    """The central right-hand sides of the cyclic x, y, z relations.

    `q` defaults to the presentation's own product-axiom value; callers
    verifying against a fixed external statement should pass the
    intended value explicitly.
    """
    qv = q_value(algebra) if q is None else q
    q_inv = monomial_inverse(qv)
    core = algebra.scalar(q_inv) * algebra.gen("T1") + algebra.scalar(
        qv
    ) * algebra.inv_word(algebra.alphabet.word("T1"))
    tT0 = algebra.trace("T0")
    tV0 = algebra.trace("V0")
    tV1 = algebra.trace("V1")
    table = {
        "z": (tV0 * tV1, tT0),
        "x": (tV1 * tT0, tV0),
        "y": (tT0 * tV0, tV1),
    }
    if which not in table:
        raise ValueError(f"no relation named {which!r}")
    constant, carrier = table[which]
    return algebra.scalar(constant) + algebra.scalar(carrier) * core


def aw_form_extract(algebra: AlgebraPresentation) -> AWForm:
    """Match the reduced cyclic relations against g*target + h with h
    supported on {1, T1}.

    The scalar g is recovered wordwise by exact division of coefficients
    on the support of the reduced target (off {1, T1}); disagreement
    between words, leftover support outside {1, T1}, or a failed final
    check_equal all raise :class:`ExtractionError`.
    """
    xyz = build_xyz(algebra)
    qv = q_value(algebra)
    q_inv = monomial_inverse(qv)
    one_word = ()
    t1_word = algebra.alphabet.word("T1")
    relations = {}
    for a1, a2, target_name in (("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")):
        elems = xyz.as_dict()
        combo = (
            algebra.scalar(qv) * elems[a1] * elems[a2]
            - algebra.scalar(q_inv) * elems[a2] * elems[a1]
        )
        reduced = algebra.nf(combo)
        target = algebra.nf(elems[target_name])
        g = None
        for word in target.support():
            if word in (one_word, t1_word):
                continue
            numerator = reduced.terms.get(word)
            if numerator is None:
                raise ExtractionError(
                    f"relation {target_name}: no {algebra.alphabet.render_word(word)} "
                    "term to divide"
                )
            ratio = divide_exact(numerator, target.terms[word])
            if g is None:
                g = ratio
            elif g != ratio:
                raise ExtractionError(
                    f"relation {target_name}: inconsistent scalar across words"
                )
        if g is None:
            raise ExtractionError(
                f"relation {target_name}: target support is degenerate"
            )
        h = reduced - target.scale(g)
        if not set(h.support()) <= {one_word, t1_word}:
            raise ExtractionError(
                f"relation {target_name}: remainder is not supported on 1, T1"
            )
        verdict = algebra.check_equal(
            combo, elems[target_name].scale(g) + h
        )
        if not verdict.equal:
            raise ExtractionError(
                f"relation {target_name}: extracted form failed verification"
            )
        relations[target_name] = AWRelation(target_name, g, h, verdict)
    return AWForm(x=relations["x"], y=relations["y"], z=relations["z"])
