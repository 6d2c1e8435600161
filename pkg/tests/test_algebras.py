"""Presentations, semilinear maps, specializations, and the cyclic form."""

import pytest

from daha import (
    NCPoly,
    PRESET_NAMES,
    PresentationError,
    SemilinearMap,
    UnsupportedPresetError,
    aw_form_extract,
    aw_rhs,
    braid_b_map,
    braid_c_map,
    build_xyz,
    compose_maps,
    conjugation_map,
    four_cycle,
    from_presentation,
    identity_map,
    load_presentation,
    map_power,
    preset,
    resolve_algebra,
    semilinear_apply,
    specialize_ncpoly,
    specialize_presentation,
    surjection_assignment,
    verify_map,
)
from daha.algebras import apply_param_map, product_axiom, q_symbol, q_value, trace_symbol
from daha.coeffring import RATIONALS, ParamRing


# -- presets -----------------------------------------------------------------

def test_preset_rings():
    assert set(PRESET_NAMES) == {"H_generic", "UDAHA_model", "CentralPair"}
    h = preset("H_generic")
    assert h.ring.params == ("k0", "k1", "l0", "l1", "q")
    assert all(h.ring.invertible)
    u = preset("UDAHA_model")
    assert u.ring.params == ("cT0", "cT1", "cV0", "cV1", "Q")
    assert u.ring.invertible == (False, False, False, False, True)
    c = preset("CentralPair")
    assert c.alphabet.symbols == ("u", "v")
    with pytest.raises(UnsupportedPresetError):
        preset("H_affine")


def test_axioms_survive_completion(udaha):
    # completion retires the degree-4 rule but the axiom list is the
    # stable interface that map verification walks
    assert len(udaha.axioms) == 5
    lhs, rhs = product_axiom(udaha)
    assert udaha.alphabet.render_word(lhs) == "V0*T0*V1*T1"
    assert rhs == udaha.scalar(udaha.param("Q", -1))


def test_traces(udaha, generic, central):
    assert udaha.trace("T0") == udaha.param("cT0")
    assert generic.trace("V1") == generic.param("l1") + generic.param("l1", -1)
    assert central.trace("u") == central.param("cu")
    with pytest.raises(ValueError):
        udaha.trace("u")


def test_trace_requires_hecke_shape():
    alg = from_presentation(load_presentation(
        "[algebra]\nname = unit\nparams = c\ngenerators = u\n"
        "[rules]\nu*u = 1\n"
    ))
    with pytest.raises(UnsupportedPresetError):
        alg.trace("u")


def test_q_helpers(udaha, generic, central):
    assert q_value(udaha) == udaha.param("Q")
    assert q_symbol(udaha) == "Q"
    assert q_symbol(generic) == "q"
    assert trace_symbol(udaha, "V1") == "cV1"
    assert trace_symbol(generic, "T0") == "k0"
    with pytest.raises(UnsupportedPresetError):
        product_axiom(central)


def test_resolve_algebra(data_dir):
    assert resolve_algebra("CentralPair").name == "CentralPair"
    loaded = resolve_algebra(str(data_dir / "udaha.alg"))
    assert loaded.name == "UDAHA_model"
    assert len(loaded.axioms) == 5
    with pytest.raises(UnsupportedPresetError):
        resolve_algebra("NoSuchAlgebra")


def test_from_presentation_rejects_bad_rules():
    with pytest.raises(PresentationError):
        from_presentation(load_presentation(
            "[algebra]\nname = bad\nparams = c\ngenerators = u\n"
            "[rules]\nu*u = w\n"
        ))
    with pytest.raises(PresentationError):
        from_presentation(load_presentation(
            "[algebra]\nname = bad\nparams = c\ngenerators = u\n"
            "[rules]\nu*u = u*u*u\n"  # not orientable
        ))
    with pytest.raises(PresentationError):
        from_presentation(load_presentation(
            "[algebra]\nname = bad\nparams = c\ngenerators = u, v\n"
            "[rules]\nu*u = 1\n[order]\npermutation = u\n"
        ))


# -- inverses -------------------------------------------------------------------

def test_inv_word_golden(udaha):
    got = udaha.inv_word(udaha.alphabet.word("V0", "T1"))
    t1v0 = udaha.gen("T1") * udaha.gen("V0")
    expected = (
        t1v0
        - udaha.param("cT1") * udaha.gen("V0")
        - udaha.param("cV0") * udaha.gen("T1")
        + udaha.scalar(udaha.param("cT1") * udaha.param("cV0"))
    )
    assert got == expected


def test_inverses_multiply_to_one(udaha, generic):
    for alg in (udaha, generic):
        for text in ("T0", "V1", "V0*T1", "T0*T1*V0"):
            p = alg.parse(text)
            inv = alg.inv_element(p)
            assert alg.nf(p * inv) == alg.one()
            assert alg.nf(inv * p) == alg.one()


def test_inv_element_monomial(udaha):
    m = udaha.gen("T0") * udaha.param("Q")
    inv = udaha.inv_element(m)
    assert udaha.nf(m * inv) == udaha.one()
    with pytest.raises(UnsupportedPresetError):
        udaha.inv_element(udaha.gen("T0") + 1)


# -- x, y, z ---------------------------------------------------------------------

def test_build_xyz(udaha):
    xyz = build_xyz(udaha)
    assert xyz.x == udaha.parse("V0*T1 + inv(V0*T1)")
    assert xyz.y == udaha.parse("V1*T1 + inv(V1*T1)")
    assert xyz.z == udaha.parse("T0*T1 + inv(T0*T1)")
    assert set(xyz.as_dict()) == {"x", "y", "z"}


def test_build_xyz_needs_daha_generators(central):
    with pytest.raises(UnsupportedPresetError):
        build_xyz(central)


# -- semilinear maps ---------------------------------------------------------------

def test_four_cycle_tables(udaha, generic):
    fc = four_cycle(udaha)
    assert {k: v.render() for k, v in fc.images.items()} == {
        "V0": "T0", "T0": "V1", "V1": "T1", "T1": "V0",
    }
    assert fc.param_map == {
        "cV0": "cT0", "cT0": "cV1", "cV1": "cT1", "cT1": "cV0", "Q": "Q",
    }
    assert four_cycle(generic).param_map == {
        "l0": "k0", "k0": "l1", "l1": "k1", "k1": "l0", "q": "q",
    }
    assert verify_map(fc, udaha).ok


def test_four_cycle_has_order_four(udaha):
    fourth = map_power(four_cycle(udaha), 4)
    for name in udaha.alphabet.symbols:
        assert udaha.nf(fourth.image(name)) == udaha.gen(name)
    assert fourth.param_map == {n: n for n in udaha.ring.params}


def test_braid_map_tables(udaha):
    B = braid_b_map(udaha)
    assert B.param_map == {
        "cT0": "cV0", "cT1": "cT1", "cV0": "cV1", "cV1": "cT0", "Q": "Q",
    }
    assert B.image("T0") == udaha.gen("V0")
    assert B.image("V1") == udaha.gen("T0")
    assert B.image("T1") == udaha.gen("T1")
    assert B.image("V0") == udaha.parse("inv(T1)*V1*T1")

    C = braid_c_map(udaha)
    assert C.param_map == {
        "cT0": "cT0", "cT1": "cT1", "cV0": "cV1", "cV1": "cV0", "Q": "Q",
    }
    assert C.image("V1") == udaha.gen("V0")
    assert C.image("T0") == udaha.parse("V0*T0*inv(V0)")
    assert verify_map(B, udaha).ok
    assert verify_map(C, udaha).ok


def test_conjugation_map_inverts(udaha):
    A = conjugation_map(udaha)
    A_inv = conjugation_map(udaha, inverse=True)
    assert A.image("T1") == udaha.gen("T1")
    both = compose_maps(A, A_inv)
    for name in udaha.alphabet.symbols:
        assert udaha.nf(both.image(name)) == udaha.gen(name)


def test_verify_map_rejects_non_homomorphism(udaha):
    swap = SemilinearMap(
        "swap01",
        udaha,
        {
            "T0": udaha.gen("T1"),
            "T1": udaha.gen("T0"),
            "V0": udaha.gen("V0"),
            "V1": udaha.gen("V1"),
        },
        {n: n for n in udaha.ring.params},
    )
    report = verify_map(swap, udaha)
    assert not report.ok
    failed = [text for text, verdict in report.axiom_verdicts if not verdict.equal]
    assert "T0*T0 -> cT0*T0 - 1" in failed


def test_semilinear_map_validation(udaha):
    gens = {n: udaha.gen(n) for n in udaha.alphabet.symbols}
    ident = {n: n for n in udaha.ring.params}
    with pytest.raises(ValueError):
        SemilinearMap("partial", udaha, {"T0": udaha.gen("T0")}, ident)
    with pytest.raises(ValueError):
        SemilinearMap("collapse", udaha, gens, dict(ident, cT0="cT1", cT1="cT1"))
    with pytest.raises(ValueError):
        SemilinearMap("flagbreak", udaha, gens, dict(ident, Q="cT0", cT0="Q"))


def test_apply_param_map(udaha):
    B = braid_b_map(udaha)
    coeff = udaha.param("Q") + udaha.param("cT0")
    assert apply_param_map(coeff, B) == udaha.param("Q") + udaha.param("cV0")


def test_semilinear_apply_acts_on_coefficients(udaha):
    B = braid_b_map(udaha)
    p = udaha.scalar(udaha.param("cV1"))
    assert semilinear_apply(B, p) == udaha.scalar(udaha.param("cT0"))
    # and multiplicatively on words
    lhs = semilinear_apply(B, udaha.parse("T0*V1"))
    assert lhs == udaha.nf(B.image("T0") * B.image("V1"))


def test_identity_and_composition_laws(udaha):
    fc = four_cycle(udaha)
    ident = identity_map(udaha)
    left = compose_maps(fc, ident)
    right = compose_maps(ident, fc)
    for name in udaha.alphabet.symbols:
        assert left.image(name) == fc.image(name)
        assert right.image(name) == fc.image(name)
    assert map_power(fc, 2).param_map == compose_maps(fc, fc).param_map
    assert map_power(fc, 0).param_map == ident.param_map


# -- specialization -----------------------------------------------------------------

def test_surjection_assignment_table(udaha, generic):
    assignment = surjection_assignment(udaha, generic)
    assert {k: v.render() for k, v in assignment.items()} == {
        "cT0": "k0 + k0^-1",
        "cT1": "k1 + k1^-1",
        "cV0": "l0 + l0^-1",
        "cV1": "l1 + l1^-1",
        "Q": "q",
    }


def test_specialize_ncpoly_pushes_identities(udaha, generic):
    assignment = surjection_assignment(udaha, generic)
    p = udaha.parse("V0*T0*V1*T1 - Q^-1")
    image = specialize_ncpoly(p, assignment, generic)
    assert generic.nf(image).is_zero()
    # a reduction done upstairs specializes to a reduction downstairs
    q = udaha.parse("V0*T1 + inv(V0*T1)")
    assert generic.nf(specialize_ncpoly(udaha.nf(q), assignment, generic)) == \
        generic.nf(specialize_ncpoly(q, assignment, generic))


def test_specialize_presentation():
    generic = preset("H_generic")
    ring = ParamRing(
        RATIONALS,
        [("k0", True), ("k1", True), ("l0", True), ("l1", True)],
    )
    at_one = specialize_presentation(generic, {"q": ring.scalar(1)}, ring, "H_q1")
    at_one.complete(6)
    assert at_one.name == "H_q1"
    assert at_one.nf(at_one.parse("V0*T0*V1*T1")) == at_one.one()


# -- the cyclic form ---------------------------------------------------------------

def test_aw_rhs_golden(udaha):
    qv = udaha.param("Q")
    core = udaha.parse("Q^-1*T1 + Q*inv(T1)")
    z = udaha.nf(
        udaha.scalar(udaha.param("cV0") * udaha.param("cV1"))
        + udaha.scalar(udaha.param("cT0")) * core
    )
    assert aw_rhs(udaha, "z") == z
    assert aw_rhs(udaha, "z", q=qv) == z
    with pytest.raises(ValueError):
        aw_rhs(udaha, "w")


def test_aw_form_extract(udaha):
    form = aw_form_extract(udaha)
    qv = udaha.param("Q")
    g_expected = -(qv ** 2 - qv ** -2)
    coeff = qv - qv ** -1
    for rel in form.relations():
        assert rel.verdict.equal
        assert rel.g == g_expected
        assert rel.h == udaha.nf(coeff * aw_rhs(udaha, rel.name))
    assert [rel.name for rel in form.relations()] == ["z", "x", "y"]
