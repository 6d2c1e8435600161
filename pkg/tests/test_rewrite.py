"""Rewriting: rule orientation, normal forms, completion, certificates."""

import dataclasses
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from daha import (
    RATIONALS,
    Alphabet,
    CertificateError,
    InsufficientCompletionError,
    NCPoly,
    OrientationError,
    ParamRing,
    ReductionStep,
    RewriteSystem,
    TermOrder,
    apply_step,
    make_rule,
    preset,
    replay,
)
from conftest import random_element

SETTINGS = {"max_examples": 40, "deadline": None}


# -- rule orientation -------------------------------------------------------------

def small_system():
    ab = Alphabet(("x", "y"))
    ring = ParamRing(RATIONALS, [])
    return ab, ring, TermOrder(ab)


def test_make_rule_accepts_descending():
    ab, ring, order = small_system()
    rhs = NCPoly.monomial(ab, ring, ab.word("y")) + 1
    rule = make_rule(order, 7, ab.word("x", "x"), rhs)
    assert rule.id == 7
    assert rule.render(ab) == "x*x -> y + 1"


def test_make_rule_rejects_bad_orientation():
    ab, ring, order = small_system()
    with pytest.raises(OrientationError):
        make_rule(order, 1, (), NCPoly.zero(ab, ring))
    same = NCPoly.monomial(ab, ring, ab.word("x", "x"))
    with pytest.raises(OrientationError):
        make_rule(order, 1, ab.word("x", "x"), same)
    higher = NCPoly.monomial(ab, ring, ab.word("y", "y"))
    with pytest.raises(OrientationError):
        make_rule(order, 1, ab.word("x", "x"), higher)


# -- single steps -------------------------------------------------------------------

def test_apply_step_golden(udaha):
    v0 = udaha.gen("V0")
    p = v0 * v0
    step = ReductionStep(3, 0, udaha.alphabet.word("V0", "V0"))
    out = apply_step(p, step, udaha.system.rules)
    assert out == udaha.param("cV0") * v0 - 1


def test_apply_step_rejects_mismatches(udaha):
    word = udaha.alphabet.word("V0", "V0")
    p = udaha.gen("V0") * udaha.gen("V0")
    with pytest.raises(CertificateError):
        apply_step(p, ReductionStep(999, 0, word), udaha.system.rules)
    with pytest.raises(CertificateError):
        apply_step(p, ReductionStep(3, 1, word), udaha.system.rules)
    absent = udaha.alphabet.word("T0", "T0")
    with pytest.raises(CertificateError):
        apply_step(p, ReductionStep(1, 0, absent), udaha.system.rules)


# -- normal forms ---------------------------------------------------------------------

def test_normal_form_golden(udaha, generic):
    # V0*(V0*T0*V1*T1) = V0*Q^-1, so the normal form is Q^-1 * V0
    p = udaha.parse("V0*V0*T0*V1*T1")
    assert udaha.nf(p) == udaha.param("Q", -1) * udaha.gen("V0")
    hq = generic.parse("V0*V0*T0*V1*T1")
    assert generic.nf(hq) == generic.param("q", -1) * generic.gen("V0")


def test_normal_form_fixes_irreducibles(udaha):
    p = udaha.parse("T0*T1*V0*V1") + udaha.parse("T1") - 3
    nf, steps = udaha.system.normal_form(p, record=True)
    assert nf == p
    assert steps == ()


def test_recorded_steps_replay_sequentially(udaha):
    rng = random.Random(7)
    for _ in range(25):
        p = random_element(udaha, rng, max_terms=3, max_len=4)
        nf, steps = udaha.system.normal_form(p, record=True)
        current = p
        for step in steps:
            current = apply_step(current, step, udaha.system.rules)
        assert current == nf
        assert udaha.nf(nf) == nf  # idempotent


def test_randomized_strategy_agrees(udaha):
    rng = random.Random(11)
    for _ in range(15):
        p = random_element(udaha, rng, max_terms=3, max_len=4)
        assert udaha.system.normal_form_random(p, rng) == udaha.nf(p)


@given(st.integers(0, 2 ** 32 - 1))
@settings(**SETTINGS)
def test_normal_form_is_linear(udaha, seed):
    rng = random.Random(seed)
    a = random_element(udaha, rng, max_terms=2, max_len=4)
    b = random_element(udaha, rng, max_terms=2, max_len=4)
    assert udaha.nf(a + b) == udaha.nf(a) + udaha.nf(b)
    assert udaha.nf(a.scale(-5)) == udaha.nf(a).scale(-5)


def test_irreducible_words_central(central):
    words = central.system.irreducible_words(4)
    rendered = [central.alphabet.render_word(w) for w in words]
    # alternating words in u, v only: the two squares are the only redexes
    assert rendered == [
        "1", "u", "v", "u*v", "v*u", "u*v*u", "v*u*v", "u*v*u*v", "v*u*v*u",
    ]


def test_irreducible_words_shape(udaha):
    words = udaha.system.irreducible_words(3)
    assert len([w for w in words if len(w) <= 2]) == 13
    for w in words:
        assert udaha.system.find_redex(w) is None
    # closed under taking prefixes
    word_set = set(words)
    for w in words:
        assert w[:-1] in word_set or not w


# -- equality checking ------------------------------------------------------------------

def test_check_equal_verdicts(udaha):
    good = udaha.check_equal(udaha.parse("V0*T0*V1*T1"), udaha.parse("Q^-1"))
    assert good.equal
    assert good.verdict == "proved-equal"
    assert good.residual.is_zero()
    assert good.summary().startswith("proved-equal")

    bad = udaha.check_equal(udaha.parse("T0*T1"), udaha.parse("T1*T0"))
    assert not bad.equal
    assert bad.verdict == "distinct-at-degree"
    assert not bad.residual.is_zero()
    assert "distinct-at-degree 10" in bad.summary()


def test_check_equal_requires_completion():
    fresh = preset("UDAHA_model")
    with pytest.raises(InsufficientCompletionError):
        fresh.check_equal(fresh.parse("T0*T1"), fresh.parse("T1*T0"))
    # a zero difference needs no completion at all
    assert fresh.check_equal(fresh.parse("T0"), fresh.parse("T0")).equal


# -- completion ------------------------------------------------------------------------

def test_completion_report_and_rules():
    alg = preset("UDAHA_model")
    report = alg.complete(6)
    assert report.degree == 6
    assert report.passes == 5
    assert report.rules_added == 8
    assert report.ambiguities_checked == 56
    rules = alg.system.sorted_rules()
    assert len(rules) == 8
    by_lhs = {alg.alphabet.render_word(r.lhs): r for r in rules}
    # the four squares survive interreduction verbatim
    assert by_lhs["T0*T0"].rhs == alg.param("cT0") * alg.gen("T0") - 1
    assert by_lhs["V1*V1"].rhs == alg.param("cV1") * alg.gen("V1") - 1
    # the degree-4 product axiom is replaced by straightening rules
    assert set(by_lhs) == {
        "T0*T0", "T1*T1", "V0*V0", "V1*V1",
        "V0*T0", "V0*T1", "V1*T1", "V1*T0",
    }
    assert (
        by_lhs["V0*T1"].render(alg.alphabet)
        == "V0*T1 -> Q*T0*V1 + cT1*V0 + cV0*T1 - cT1*cV0"
    )


def test_completion_is_idempotent():
    alg = preset("UDAHA_model")
    alg.complete(6)
    rules = {r.id for r in alg.system.sorted_rules()}
    again = alg.complete(6)
    assert (again.passes, again.rules_added, again.ambiguities_checked) == (0, 0, 0)
    extended = alg.complete(10)
    assert extended.rules_added == 0  # no ambiguities survive past degree 7
    assert {r.id for r in alg.system.sorted_rules()} == rules
    assert alg.system.confluence_degree == 10


def test_completion_detects_collapse():
    ab = Alphabet(("g",))
    ring = ParamRing(RATIONALS, [])
    system = RewriteSystem(ab, ring)
    one = NCPoly.monomial(ab, ring, ())
    system.add_rule(ab.word("g", "g"), one)
    system.add_rule(ab.word("g", "g", "g"), one.scale(2))
    # g^3 reduces to both g and 2, so g -> 2 and then 1 = g*g -> 4
    with pytest.raises(OrientationError):
        system.complete_to_degree(4)


# -- certificates --------------------------------------------------------------------------

def test_certificate_replay(udaha):
    p = udaha.parse("V0*V0*T0*V1*T1 - T1*T1")
    nf, cert = udaha.system.reduce_with_certificate(p)
    assert cert.initial == p.render()
    assert cert.final == nf.render()
    assert cert.confluence_degree == 10
    result = replay(cert)
    assert result.ok
    assert result.steps_applied == len(cert.steps) > 0


def test_certificate_verbose_states(udaha):
    p = udaha.parse("V1*V1*T0")
    nf, cert = udaha.system.reduce_with_certificate(p, verbose=True)
    assert cert.states is not None
    assert len(cert.states) == len(cert.steps)
    assert cert.states[-1] == nf.render()
    assert replay(cert).ok


def test_certificate_tampering_detected(udaha):
    p = udaha.parse("V0*V0*T0*V1*T1")
    _, cert = udaha.system.reduce_with_certificate(p)

    wrong_final = dataclasses.replace(cert, final_hash="0" * 16)
    outcome = replay(wrong_final)
    assert not outcome.ok
    assert "final hash" in outcome.message

    wrong_initial = dataclasses.replace(cert, initial_hash="f" * 16)
    assert "initial hash" in replay(wrong_initial).message

    bad_step = dataclasses.replace(
        cert, steps=(ReductionStep(999, 0, cert.steps[0].word),) + cert.steps[1:]
    )
    assert "unknown rule" in replay(bad_step).message

    dropped = dataclasses.replace(cert, steps=cert.steps[:-1])
    assert not replay(dropped).ok


def test_certificate_tampered_states(udaha):
    p = udaha.parse("T0*T0")
    _, cert = udaha.system.reduce_with_certificate(p, verbose=True)
    fudged = dataclasses.replace(cert, states=("0",) * len(cert.states))
    assert "state mismatch" in replay(fudged).message
