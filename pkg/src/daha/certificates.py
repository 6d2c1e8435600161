"""Serialization and replay of reduction certificates.

A certificate carries its own context: the algebra description, the
term order, a snapshot of the rules it used, and the rendered initial
element.  Replay therefore needs nothing from the producing session; it
rebuilds the ring and alphabet, re-applies every recorded step, and
compares hashes.  It deliberately does not re-run completion: a replay
validates the reduction trace, not the provenance of the rules.

Tampering surfaces as one of: a hash mismatch, a step that references
an unknown rule id, or a rule that does not match its recorded word and
position.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .coeffring import BaseRing, ParamRing
from .errors import CertificateError, DahaError
from .exprs import parse_expr
from .ncpoly import Alphabet, NCPoly, TermOrder, canonical_hash
from .rewrite import (
    ReductionCertificate,
    ReductionStep,
    RewriteRule,
    apply_step,
    make_rule,
)

FORMAT_NAME = "daha-reduction-certificate"
FORMAT_VERSION = 1


def certificate_to_json(cert: ReductionCertificate) -> dict:
    data = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "algebra": cert.algebra,
        "order": list(cert.order),
        "rules": [
            {"id": rule_id, "lhs": lhs, "rhs": rhs}
            for rule_id, lhs, rhs in cert.rules
        ],
        "initial": cert.initial,
        "initial_hash": cert.initial_hash,
        "steps": [
            {"rule": step[0], "position": step[1], "word": step[2]}
            for step in _rendered_steps(cert)
        ],
        "final": cert.final,
        "final_hash": cert.final_hash,
        "confluence_degree": cert.confluence_degree,
    }
    if cert.states is not None:
        data["states"] = list(cert.states)
    return data


def _rendered_steps(cert: ReductionCertificate):
    alphabet = Alphabet(tuple(cert.algebra["generators"]))
    for step in cert.steps:
        yield step.rule_id, step.position, alphabet.render_word(step.word)


def certificate_from_json(data: dict) -> ReductionCertificate:
    try:
        if data.get("format") != FORMAT_NAME:
            raise CertificateError("not a reduction certificate")
        if data.get("version") != FORMAT_VERSION:
            raise CertificateError(f"unsupported version {data.get('version')!r}")
        alphabet = Alphabet(tuple(data["algebra"]["generators"]))
        steps = tuple(
            ReductionStep(
                step["rule"], step["position"], alphabet.parse_word(step["word"])
            )
            for step in data["steps"]
        )
        states = data.get("states")
        return ReductionCertificate(
            algebra=data["algebra"],
            order=tuple(data["order"]),
            rules=tuple(
                (entry["id"], entry["lhs"], entry["rhs"]) for entry in data["rules"]
            ),
            initial=data["initial"],
            initial_hash=data["initial_hash"],
            steps=steps,
            final=data["final"],
            final_hash=data["final_hash"],
            confluence_degree=data["confluence_degree"],
            states=tuple(states) if states is not None else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from exc


def write_certificate(cert: ReductionCertificate, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(certificate_to_json(cert), handle, indent=2)
        handle.write("\n")


def read_certificate(path) -> ReductionCertificate:
    with open(path, encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise CertificateError(f"not valid JSON: {exc}") from exc
    return certificate_from_json(data)


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    message: str
    steps_applied: int


def replay(cert: ReductionCertificate) -> ReplayResult:
    """Re-run a certificate from scratch and verify both hashes.

    Never raises for tampered content; the failure reason comes back in
    the result so batch callers can report it.
    """
    try:
        steps_done = _replay_checked(cert)
    except DahaError as exc:
        return ReplayResult(False, str(exc), 0)
    return ReplayResult(True, "replayed clean", steps_done)


def _replay_checked(cert: ReductionCertificate) -> int:
    algebra = cert.algebra
    try:
        base = BaseRing.from_description(algebra["base"])
        ring = ParamRing(base, [tuple(entry) for entry in algebra["params"]])
        alphabet = Alphabet(tuple(algebra["generators"]))
        order = TermOrder(alphabet, cert.order)
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateError(f"bad algebra description: {exc}") from exc

    rules: dict[int, RewriteRule] = {}
    for rule_id, lhs_text, rhs_text in cert.rules:
        if rule_id in rules:
            raise CertificateError(f"duplicate rule id {rule_id}")
        try:
            lhs = alphabet.parse_word(lhs_text)
            rhs = parse_expr(rhs_text, alphabet, ring)
        except (DahaError, ValueError) as exc:
            raise CertificateError(f"bad rule {rule_id}: {exc}") from exc
        rules[rule_id] = make_rule(order, rule_id, lhs, rhs)

    try:
        current = parse_expr(cert.initial, alphabet, ring)
    except (DahaError, ValueError) as exc:
        raise CertificateError(f"bad initial element: {exc}") from exc
    if canonical_hash(current) != cert.initial_hash:
        raise CertificateError("initial hash mismatch")

    if cert.states is not None and len(cert.states) != len(cert.steps):
        raise CertificateError("state list does not match the step count")
    for index, step in enumerate(cert.steps):
        current = apply_step(current, step, rules)
        if cert.states is not None:
            if current.render() != cert.states[index]:
                raise CertificateError(f"state mismatch after step {index + 1}")

    if canonical_hash(current) != cert.final_hash:
        raise CertificateError("final hash mismatch")
    if current.render() != cert.final:
        raise CertificateError("final element does not match its rendering")
    return len(cert.steps)
