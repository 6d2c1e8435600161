"""Noncommutative rewriting with truncated critical-pair completion.

A :class:`RewriteSystem` holds rules `lhs -> rhs` where `lhs` is a word
that strictly dominates every word of `rhs` under a fixed deglex order.
Because degree dominates, every rule is degree-nonincreasing, so all
reductions of an element stay inside its degree slice and completion can
be truncated at a degree bound without losing soundness there.

Reduction is deterministic: highest remaining word first, leftmost
match, lowest rule id.  Normal forms are computed with a max-heap over
words; produced words are strictly smaller than the word being rewritten
under the order, which makes the heap pass equivalent to iterating
single deterministic steps while touching each word once.  The recorded
step list replays exactly on the input element, which is what the
certificate format relies on.

`proved-equal` verdicts are sound at any completion degree (rewriting
only subtracts multiples of relations); `distinct-at-degree` verdicts
additionally need confluence up to the degree of the difference, so
:meth:`RewriteSystem.check_equal` refuses to answer rather than guess
when completion has not been pushed far enough.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .coeffring import ParamRing, monomial_inverse
from .errors import (
    CertificateError,
    InsufficientCompletionError,
    OrientationError,
)
from .ncpoly import Alphabet, NCPoly, TermOrder, Word, canonical_hash


@dataclass(frozen=True, eq=False)
class RewriteRule:
    """An oriented relation `lhs -> rhs`; ids are stable within a system."""

    id: int
    lhs: Word
    rhs: NCPoly

    def render(self, alphabet: Alphabet) -> str:
        return f"{alphabet.render_word(self.lhs)} -> {self.rhs.render()}"


def make_rule(order: TermOrder, rule_id: int, lhs: Word, rhs: NCPoly) -> RewriteRule:
    """Validate orientation: every rhs word strictly below lhs."""
    lhs = tuple(lhs)
    if not lhs:
        raise OrientationError("a rule needs a nonempty left-hand side")
    for w in rhs.support():
        if order.compare(w, lhs) >= 0:
            raise OrientationError(
                f"rhs word {rhs.alphabet.render_word(w)} does not descend "
                f"from lhs {rhs.alphabet.render_word(lhs)}"
            )
    return RewriteRule(rule_id, lhs, rhs)


@dataclass(frozen=True)
class ReductionStep:
    """One rewrite: rule `rule_id` applied to term word `word` at `position`."""

    rule_id: int
    position: int
    word: Word


@dataclass(frozen=True)
class AmbiguityRecord:
    """A critical pair: two one-step reductions of the same word.

    `kind` is "overlap" (suffix of one lhs meets a prefix of the other)
    or "inclusion" (one lhs sits strictly inside the other).
    """

    kind: str
    word: Word
    rule1: int
    pos1: int
    rule2: int
    pos2: int


@dataclass(frozen=True)
class CompletionReport:
    degree: int
    passes: int
    rules_added: int
    ambiguities_checked: int


@dataclass(frozen=True)
class ReductionCertificate:
    """A replayable trace of one reduction to normal form.

    Contains everything needed to re-run the reduction without the
    originating system: the algebra description, the order, a snapshot
    of the active rules, and the element itself alongside its hash.
    `states` optionally lists the rendered element after every step.
    """

    algebra: dict
    order: tuple
    rules: tuple
    initial: str
    initial_hash: str
    steps: tuple
    final: str
    final_hash: str
    confluence_degree: int
    states: tuple | None = None


@dataclass(frozen=True)
class EqualityVerdict:
    """Outcome of a mechanical equality check.

    `verdict` is "proved-equal" or "distinct-at-degree"; the latter is
    decisive for elements of degree at most `degree`.  `residual` is the
    normal form of the difference (zero exactly when proved equal).
    """

    verdict: str
    residual: NCPoly
    certificate: ReductionCertificate
    degree: int

    @property
    def equal(self) -> bool:
        return self.verdict == "proved-equal"

    def summary(self) -> str:
        if self.equal:
            return f"proved-equal (residual 0, {len(self.certificate.steps)} steps)"
        return (
            f"distinct-at-degree {self.degree} "
            f"(residual {self.residual.render()})"
        )


def apply_step(p: NCPoly, step: ReductionStep, rules: Mapping[int, RewriteRule]) -> NCPoly:
    """Apply one recorded step to a full element; raises
    :class:`CertificateError` when the step does not fit."""
    rule = rules.get(step.rule_id)
    if rule is None:
        raise CertificateError(f"step references unknown rule id {step.rule_id}")
    word = step.word
    coeff = p.terms.get(word)
    if coeff is None:
        raise CertificateError(
            f"step touches absent word {p.alphabet.render_word(word)}"
        )
    size = len(rule.lhs)
    pos = step.position
    if pos < 0 or pos + size > len(word) or word[pos : pos + size] != rule.lhs:
        raise CertificateError(
            f"rule {step.rule_id} does not match "
            f"{p.alphabet.render_word(word)} at position {pos}"
        )
    pre = NCPoly.monomial(p.alphabet, p.ring, word[:pos], coeff)
    suf = NCPoly.monomial(p.alphabet, p.ring, word[pos + size :])
    return p - NCPoly.monomial(p.alphabet, p.ring, word, coeff) + pre * rule.rhs * suf


class RewriteSystem:
    """Rules over one alphabet and coefficient ring, plus completion state.

    `confluence_degree` is the largest degree bound completion has been
    run to; it only ever grows.  Rule ids are never reused, so a
    certificate's rule snapshot stays unambiguous even after
    inter-reduction has replaced or retired rules.
    """

    def __init__(
        self,
        alphabet: Alphabet,
        ring: ParamRing,
        order: TermOrder | None = None,
        name: str | None = None,
    ):
        if order is None:
            order = TermOrder(alphabet)
        if order.alphabet != alphabet:
            raise ValueError("order built over a different alphabet")
        self.alphabet = alphabet
        self.ring = ring
        self.order = order
        self.name = name
        self.rules: dict[int, RewriteRule] = {}
        self.confluence_degree = 0
        self._next_id = 1
        self._by_first: dict[int, list[RewriteRule]] = {}
        self._irreducible: set = set()

    # -- rule bookkeeping --------------------------------------------------

    def add_rule(self, lhs: Word, rhs: NCPoly) -> RewriteRule:
        rule = make_rule(self.order, self._next_id, lhs, rhs)
        self._next_id += 1
        self._register(rule)
        return rule

    def _register(self, rule: RewriteRule):
        self.rules[rule.id] = rule
        bucket = self._by_first.setdefault(rule.lhs[0], [])
        bucket.append(rule)
        bucket.sort(key=lambda r: r.id)
        self._irreducible.clear()

    def _unregister(self, rule_id: int):
        rule = self.rules.pop(rule_id)
        bucket = self._by_first[rule.lhs[0]]
        bucket.remove(rule)
        if not bucket:
            del self._by_first[rule.lhs[0]]
        self._irreducible.clear()

    def _replace_rhs(self, rule_id: int, rhs: NCPoly):
        old = self.rules[rule_id]
        new = make_rule(self.order, rule_id, old.lhs, rhs)
        self.rules[rule_id] = new
        bucket = self._by_first[old.lhs[0]]
        bucket[bucket.index(old)] = new

    def sorted_rules(self) -> list:
        return sorted(self.rules.values(), key=lambda r: r.id)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "base": self.ring.base.describe(),
            "params": [
                [name, bool(flag)]
                for name, flag in zip(self.ring.params, self.ring.invertible)
            ],
            "generators": list(self.alphabet.symbols),
        }

    # -- single steps ------------------------------------------------------

    def find_redex(self, word: Word):
        """Leftmost match, lowest rule id; None when `word` is irreducible."""
        if word in self._irreducible:
            return None
        n = len(word)
        for pos in range(n):
            bucket = self._by_first.get(word[pos])
            if not bucket:
                continue
            for rule in bucket:  # ascending id
                size = len(rule.lhs)
                if pos + size <= n and word[pos : pos + size] == rule.lhs:
                    return rule, pos
        self._irreducible.add(word)
        return None

    def reduce_once(self, p: NCPoly):
        """One deterministic step, or None when `p` is in normal form."""
        for word in sorted(p.terms, key=self.order.key, reverse=True):
            hit = self.find_redex(word)
            if hit is not None:
                rule, pos = hit
                step = ReductionStep(rule.id, pos, word)
                return apply_step(p, step, self.rules), step
        return None

    # -- normal forms --------------------------------------------------------

    def _neg_key(self, word: Word):
        length, ranks = self.order.key(word)
        return (-length, tuple(-r for r in ranks))

    def normal_form(self, p: NCPoly, record: bool = False):
        """Reduce to normal form; returns (nf, steps).

        Words are processed highest-first via a lazy-deletion max-heap.
        Every word a step produces is strictly smaller than the word it
        rewrote, so finished words are never revisited and the recorded
        steps replay verbatim on the original element.
        """
        if not p.terms:
            return p, ()
        pending = dict(p.terms)
        finished: dict = {}
        heap = [(self._neg_key(w), w) for w in pending]
        heapq.heapify(heap)
        steps = [] if record else None
        while heap:
            _, word = heapq.heappop(heap)
            coeff = pending.pop(word, None)
            if coeff is None:
                continue  # stale heap entry
            hit = self.find_redex(word)
            if hit is None:
                finished[word] = coeff
                continue
            rule, pos = hit
            if record:
                steps.append(ReductionStep(rule.id, pos, word))
            pre = word[:pos]
            suf = word[pos + len(rule.lhs) :]
            for w2, c2 in rule.rhs.terms.items():
                new_word = pre + w2 + suf
                c = coeff * c2
                if new_word in pending:
                    s = pending[new_word] + c
                    if s.is_zero():
                        del pending[new_word]
                    else:
                        pending[new_word] = s
                else:
                    pending[new_word] = c
                    heapq.heappush(heap, (self._neg_key(new_word), new_word))
        nf = NCPoly(self.alphabet, self.ring, finished)
        return nf, tuple(steps) if record else ()

    def nf(self, p: NCPoly) -> NCPoly:
        return self.normal_form(p)[0]

    def normal_form_random(self, p: NCPoly, rng) -> NCPoly:
        """Reduce with randomized word/position/rule choices.

        Agrees with :meth:`normal_form` once the system is confluent at
        the element's degree; used as a strategy-independence check.
        """
        while True:
            choices = []
            for word in p.terms:
                for pos in range(len(word)):
                    bucket = self._by_first.get(word[pos])
                    if not bucket:
                        continue
                    for rule in bucket:
                        size = len(rule.lhs)
                        if pos + size <= len(word) and word[pos : pos + size] == rule.lhs:
                            choices.append(ReductionStep(rule.id, pos, word))
            if not choices:
                return p
            step = rng.choice(choices)
            p = apply_step(p, step, self.rules)

    def irreducible_words(self, max_degree: int) -> list:
        """All normal-form words of degree at most `max_degree`."""
        lhs_words = {rule.lhs for rule in self.rules.values()}
        max_len = max((len(w) for w in lhs_words), default=0)
        out = [()]
        frontier = [()]
        for _ in range(max_degree):
            grown = []
            for word in frontier:
                for g in range(len(self.alphabet)):
                    cand = word + (g,)
                    top = min(max_len, len(cand))
                    if any(cand[len(cand) - k :] in lhs_words for k in range(1, top + 1)):
                        continue
                    grown.append(cand)
            out.extend(grown)
            frontier = grown
        return sorted(out, key=self.order.key)

    # -- certificates and equality -----------------------------------------------

    def reduce_with_certificate(self, p: NCPoly, verbose: bool = False):
        """Normal form plus a certificate that replays the reduction."""
        nf, steps = self.normal_form(p, record=True)
        states = None
        if verbose:
            states = []
            current = p
            for step in steps:
                current = apply_step(current, step, self.rules)
                states.append(current.render())
        cert = ReductionCertificate(
            algebra=self.describe(),
            order=self.order.precedence,
            rules=tuple(
                (r.id, self.alphabet.render_word(r.lhs), r.rhs.render())
                for r in self.sorted_rules()
            ),
            initial=p.render(),
            initial_hash=canonical_hash(p),
            steps=steps,
            final=nf.render(),
            final_hash=canonical_hash(nf),
            confluence_degree=self.confluence_degree,
            states=tuple(states) if states is not None else None,
        )
        return nf, cert

    def check_equal(self, p: NCPoly, r: NCPoly | None = None, verbose: bool = False) -> EqualityVerdict:
        """Decide p = r in the presented algebra, with a certificate.

        Reduction to zero proves equality outright.  A nonzero residual
        only proves inequality when the system is confluent past the
        difference's degree, so an under-completed system raises
        :class:`InsufficientCompletionError` instead of answering.
        """
        diff = p if r is None else p - r
        if diff and self.confluence_degree < diff.degree():
            raise InsufficientCompletionError(
                f"difference has degree {diff.degree()} but completion "
                f"only reached degree {self.confluence_degree}"
            )
        residual, cert = self.reduce_with_certificate(diff, verbose=verbose)
        verdict = "proved-equal" if residual.is_zero() else "distinct-at-degree"
        return EqualityVerdict(verdict, residual, cert, self.confluence_degree)

    # -- completion -----------------------------------------------------------

    def critical_pairs(self, max_degree: int) -> list:
        """All overlap and inclusion ambiguities up to `max_degree`."""
        records = []
        rules = self.sorted_rules()
        for r1 in rules:
            for r2 in rules:
                l1, l2 = r1.lhs, r2.lhs
                for k in range(1, min(len(l1), len(l2))):
                    if l1[len(l1) - k :] != l2[:k]:
                        continue
                    word = l1 + l2[k:]
                    if len(word) > max_degree:
                        continue
                    records.append(
                        AmbiguityRecord(
                            "overlap", word, r1.id, 0, r2.id, len(l1) - k
                        )
                    )
                if r1.id != r2.id and len(l2) < len(l1):
                    for pos in range(len(l1) - len(l2) + 1):
                        if l1[pos : pos + len(l2)] == l2 and len(l1) <= max_degree:
                            records.append(
                                AmbiguityRecord(
                                    "inclusion", l1, r1.id, 0, r2.id, pos
                                )
                            )
        return records

    def ambiguity_difference(self, amb: AmbiguityRecord) -> NCPoly:
        """Difference of the two one-step reductions of the ambiguous word."""
        start = NCPoly.monomial(self.alphabet, self.ring, amb.word)
        left = apply_step(start, ReductionStep(amb.rule1, amb.pos1, amb.word), self.rules)
        right = apply_step(start, ReductionStep(amb.rule2, amb.pos2, amb.word), self.rules)
        return left - right

    def _orient(self, diff: NCPoly) -> RewriteRule:
        """Turn a fully reduced nonzero relation into a rule."""
        word, coeff = diff.leading_term(self.order)
        if not word:
            raise OrientationError(
                "a nonzero scalar lies in the ideal; the presentation collapses"
            )
        if not coeff.is_unit():
            raise OrientationError(
                f"leading coefficient {coeff.render()} of a derived relation "
                "is not a unit; cannot orient"
            )
        head = NCPoly.monomial(self.alphabet, self.ring, word, coeff)
        rhs = (head - diff) * monomial_inverse(coeff)
        return self.add_rule(word, rhs)

    def _interreduce(self):
        """Keep the rule set reduced: no lhs reducible by the others, every
        rhs in normal form.  Rhs updates keep their rule id; a rule whose
        lhs falls gets retired and its surviving content re-oriented under
        a fresh id."""
        changed = True
        while changed:
            changed = False
            for rule_id in sorted(self.rules):
                rule = self.rules[rule_id]
                self._unregister(rule_id)
                if self.find_redex(rule.lhs) is not None:
                    relation = (
                        NCPoly.monomial(self.alphabet, self.ring, rule.lhs)
                        - rule.rhs
                    )
                    survivor = self.nf(relation)
                    if survivor:
                        self._orient(survivor)
                    changed = True
                    break
                self._register(rule)
                reduced = self.nf(rule.rhs)
                if reduced != rule.rhs:
                    self._replace_rhs(rule_id, reduced)
                    changed = True

    def complete_to_degree(self, degree: int) -> CompletionReport:
        """Resolve all ambiguities of degree at most `degree`.

        Repeatedly sweeps the critical pairs, orients every unresolved
        difference (smallest first) and inter-reduces, until a sweep
        finds nothing.  Terminates because each new rule strictly shrinks
        the finite set of irreducible words of bounded degree.
        """
        if degree <= self.confluence_degree:
            return CompletionReport(self.confluence_degree, 0, 0, 0)
        passes = 0
        added = 0
        checked = 0
        while True:
            passes += 1
            unresolved = []
            for amb in self.critical_pairs(degree):
                checked += 1
                diff = self.nf(self.ambiguity_difference(amb))
                if diff:
                    unresolved.append((diff, amb))
            if not unresolved:
                break
            unresolved.sort(
                key=lambda item: (
                    item[0].degree(),
                    self.order.key(item[0].leading_term(self.order)[0]),
                    item[1].rule1,
                    item[1].rule2,
                )
            )
            for diff, _ in unresolved:
                # earlier orientations in this sweep may already resolve it
                diff = self.nf(diff)
                if not diff:
                    continue
                self._orient(diff)
                added += 1
                self._interreduce()
        self.confluence_degree = max(self.confluence_degree, degree)
        return CompletionReport(degree, passes, added, checked)
