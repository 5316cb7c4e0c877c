"""Prefix-weight profiles, multisets of minima/maxima, and the weak
concatenability decision with replayable certificates.

The profile of a relator r is v_1, ..., v_l with v_t the image of the
length-t prefix; v_l is the identity because relators die under the
homomorphism.  In Min mode the extremum m is the order-minimum of the
profile.  Each boundary step whose endpoint pair {v_{t-1}, v_t} touches m
contributes a copy of its generator, tagged by the letter's sign (v_0 is
the identity and enters only as the value before letter 1).  For integer
targets with nonnegative weights this coincides with: a negative copy for
every prefix w a^-1 of weight m and a positive copy for every prefix w a
of weight m + phi(a).  Max mode replaces the minimum by the maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .homology import is_generalized_wirtinger
from .orders import (
    GT,
    LT,
    IntTarget,
    OrderedTarget,
    TargetAssignment,
    verify_assignment,
)
from .words import Presentation, flip_generator, letter_gen, validate

MIN = "min"
MAX = "max"


class NegativeWeight(ValueError):
    """Integer target with a negative generator weight; flip first."""


class NonVanishingRelatorWeight(ValueError):
    """The relator does not map to the identity; phi is not well defined."""


def prefix_profile(pres: Presentation, rel: int, target: OrderedTarget, assignment: TargetAssignment) -> list:
    """Images of the initial subwords of relator ``rel`` (length-1 up to full)."""
    if isinstance(target, IntTarget):
        for j in range(len(pres.generators)):
            if assignment.image(j) < 0:
                raise NegativeWeight(
                    f"generator {pres.generators[j]} has negative weight; flip it first"
                )
    word = pres.relators[rel]
    out = []
    acc = target.identity()
    for x in word:
        img = assignment.image(letter_gen(x))
        acc = target.multiply(acc, img if x > 0 else target.inverse(img))
        out.append(acc)
    if out and not target.equals(out[-1], target.identity()):
        raise NonVanishingRelatorWeight(
            f"relator {rel} has nonzero image {target.describe(out[-1])}"
        )
    return out


@dataclass(frozen=True)
class MinimaMultiset:
    """Per-relator copies of generators at the extremal prefix level."""

    relator: int
    mode: str
    extremum: object
    counts: dict  # 0-based gen index -> (positive copies, negative copies)

    def support(self) -> frozenset[int]:
        return frozenset(g for g, (p, n) in self.counts.items() if p + n > 0)

    def total(self) -> int:
        return sum(p + n for p, n in self.counts.values())

    def describe(self, pres: Presentation) -> str:
        bits = []
        for g in sorted(self.counts):
            p, n = self.counts[g]
            bits.append(f"{pres.generators[g]}:(+{p},-{n})")
        return "{" + ", ".join(bits) + "}"


def _extremal_multiset(pres, rel, target, assignment, mode) -> MinimaMultiset:
    profile = prefix_profile(pres, rel, target, assignment)
    if not profile:
        raise ValueError("empty relator has no extremal multiset")
    want = LT if mode == MIN else GT
    extremum = profile[0]
    for v in profile[1:]:
        if target.compare(v, extremum) == want:
            extremum = v
    word = pres.relators[rel]
    counts: dict[int, list[int]] = {}
    prev = target.identity()
    for x, cur in zip(word, profile):
        if target.equals(prev, extremum) or target.equals(cur, extremum):
            g = letter_gen(x)
            pair = counts.setdefault(g, [0, 0])
            pair[0 if x > 0 else 1] += 1
        prev = cur
    return MinimaMultiset(
        relator=rel,
        mode=mode,
        extremum=extremum,
        counts={g: (p, n) for g, (p, n) in counts.items()},
    )


def minima_multiset(pres, rel, target, assignment) -> MinimaMultiset:
    """Multiset of minima of relator ``rel`` with respect to the assignment."""
    return _extremal_multiset(pres, rel, target, assignment, MIN)


def maxima_multiset(pres, rel, target, assignment) -> MinimaMultiset:
    """Mirror image of :func:`minima_multiset` at the profile maximum."""
    return _extremal_multiset(pres, rel, target, assignment, MAX)


@dataclass(frozen=True)
class WitnessStep:
    gen: int
    positive: int
    negative: int


@dataclass(frozen=True)
class ConcatCertificate:
    """Replayable ordering of relators with a fresh unbalanced witness each."""

    ordering: tuple[int, ...]
    witnesses: tuple[WitnessStep, ...]


@dataclass(frozen=True)
class ConcatFailure:
    """Inclusion-maximal placeable subsets; the full set is unreachable."""

    maximal_reachable: tuple[tuple[int, ...], ...]


def replay_certificate(cert: ConcatCertificate, multisets) -> tuple[bool, str]:
    """Check a certificate step by step against raw multisets."""
    k = len(multisets)
    if sorted(cert.ordering) != sorted(m.relator for m in multisets):
        return False, "ordering is not a permutation of the relators"
    if len(cert.witnesses) != k:
        return False, "one witness required per step"
    by_rel = {m.relator: m for m in multisets}
    used: set[int] = set()
    for step, (rel, wit) in enumerate(zip(cert.ordering, cert.witnesses)):
        mult = by_rel[rel]
        p, n = mult.counts.get(wit.gen, (0, 0))
        if p + n == 0:
            return False, f"step {step}: witness not in the multiset of relator {rel}"
        if (p, n) != (wit.positive, wit.negative):
            return False, f"step {step}: witness counts do not match the multiset"
        if p == n:
            return False, f"step {step}: positive and negative copies are equal"
        if wit.gen in used:
            return False, f"step {step}: witness generator already used earlier"
        used |= mult.support()
    return True, "certificate replays"


def weak_concatenability(multisets) -> ConcatCertificate | ConcatFailure:
    """Subset dynamic program over placement states.

    A state S is reachable iff S is empty or some relator i in S admits a
    witness generator outside the supports of S minus i with unequal
    positive/negative copies.  The returned certificate uses deterministic
    tie-breaking: lowest relator index first, then lowest generator index.
    """
    k = len(multisets)
    if k == 0:
        return ConcatCertificate((), ())
    if len({m.mode for m in multisets}) != 1:
        raise ValueError("all multisets must share one mode")
    if k > 20:
        raise ValueError("placement search is desk-scale (k <= 20)")
    supports = [m.support() for m in multisets]
    usable = [
        sorted(g for g, (p, n) in m.counts.items() if p + n > 0 and p != n)
        for m in multisets
    ]
    union: list[frozenset[int]] = [frozenset()] * (1 << k)
    for s in range(1, 1 << k):
        low = (s & -s).bit_length() - 1
        union[s] = union[s & (s - 1)] | supports[low]

    def placeable(state: int, i: int) -> int | None:
        blocked = union[state]
        for g in usable[i]:
            if g not in blocked:
                return g
        return None

    full = (1 << k) - 1
    completable = [False] * (1 << k)
    completable[full] = True
    for state in range(full - 1, -1, -1):
        for i in range(k):
            if state & (1 << i):
                continue
            if completable[state | (1 << i)] and placeable(state, i) is not None:
                completable[state] = True
                break

    if completable[0]:
        ordering: list[int] = []
        witnesses: list[WitnessStep] = []
        state = 0
        while state != full:
            for i in range(k):
                bit = 1 << i
                if state & bit:
                    continue
                g = placeable(state, i)
                if g is not None and completable[state | bit]:
                    p, n = multisets[i].counts[g]
                    ordering.append(multisets[i].relator)
                    witnesses.append(WitnessStep(g, p, n))
                    state |= bit
                    break
        cert = ConcatCertificate(tuple(ordering), tuple(witnesses))
        ok, why = replay_certificate(cert, multisets)
        if not ok:
            raise AssertionError(f"constructed certificate does not replay: {why}")
        return cert

    reachable = {0}
    frontier = [0]
    while frontier:
        state = frontier.pop()
        for i in range(k):
            bit = 1 << i
            if state & bit or placeable(state, i) is None:
                continue
            nxt = state | bit
            if nxt not in reachable:
                reachable.add(nxt)
                frontier.append(nxt)
    maximal = [
        s for s in reachable if not any(t != s and t & s == s for t in reachable)
    ]
    as_tuples = sorted(
        tuple(multisets[i].relator for i in range(k) if s & (1 << i)) for s in maximal
    )
    return ConcatFailure(tuple(as_tuples))


@dataclass(frozen=True)
class HypothesisResult:
    key: str
    status: str  # "pass" | "fail" | "assumed"
    detail: str


@dataclass(frozen=True)
class CheckVerdict:
    """Outcome of the full concatenability pipeline for one assignment."""

    status: str  # "concatenable" | "not-concatenable" | "hypothesis-failure"
    hypotheses: tuple[HypothesisResult, ...]
    flips: frozenset[int]
    presentation: Presentation
    assignment: TargetAssignment | None
    mode: str
    multisets: tuple[MinimaMultiset, ...] | None
    certificate: ConcatCertificate | None
    failure: ConcatFailure | None


def check_presentation(
    pres: Presentation,
    target: OrderedTarget,
    assignment: TargetAssignment,
    mode: str = MIN,
) -> CheckVerdict:
    """Run every hypothesis check and decide weak concatenability.

    Integer targets are normalized first: generators with negative weight
    are flipped (and their weights negated), so the profile rules apply in
    their nonnegative form.
    """
    hyps: list[HypothesisResult] = []

    def failed(reason: str) -> CheckVerdict:
        return CheckVerdict(
            "hypothesis-failure", tuple(hyps), frozenset(), pres, None, mode, None, None, None
        )

    diags = validate(pres)
    if diags:
        hyps.append(
            HypothesisResult(
                "presentation-valid", "fail", "; ".join(str(d) for d in diags)
            )
        )
        return failed("invalid presentation")
    hyps.append(HypothesisResult("presentation-valid", "pass", "relators cyclically reduced"))

    wirt = is_generalized_wirtinger(pres)
    hyps.append(
        HypothesisResult(
            "h1-free-abelian-rank-n-k", "pass" if wirt.ok else "fail", wirt.reason
        )
    )
    if not wirt.ok:
        return failed(wirt.reason)

    flips: frozenset[int] = frozenset()
    work_pres = pres
    work_assignment = assignment
    if isinstance(target, IntTarget):
        weights = [assignment.image(j) for j in range(len(pres.generators))]
        gcd = math.gcd(*[abs(w) for w in weights]) if any(weights) else 0
        if gcd != 1:
            hyps.append(
                HypothesisResult(
                    "weights-surjective", "fail", f"gcd of weights is {gcd}, not 1"
                )
            )
            return failed("weights not surjective")
        hyps.append(HypothesisResult("weights-surjective", "pass", "gcd of weights is 1"))
        flips = frozenset(j for j, w in enumerate(weights) if w < 0)
        for j in flips:
            work_pres = flip_generator(work_pres, j)
        work_assignment = TargetAssignment.from_weights(work_pres, [abs(w) for w in weights])
        if flips:
            names = ", ".join(pres.generators[j] for j in sorted(flips))
            hyps.append(
                HypothesisResult("weights-nonnegative", "pass", f"flipped: {names}")
            )
        else:
            hyps.append(HypothesisResult("weights-nonnegative", "pass", "no flips needed"))
    else:
        hyps.append(
            HypothesisResult(
                "map-surjective", "assumed", "not checked for non-integer targets"
            )
        )
        hyps.append(
            HypothesisResult(
                "target-locally-indicable",
                "pass" if target.local_indicability == "known" else "assumed",
                target.name,
            )
        )

    if not verify_assignment(target, work_assignment, work_pres):
        hyps.append(
            HypothesisResult(
                "assignment-well-defined", "fail", "a relator has a nontrivial image"
            )
        )
        return failed("assignment not well defined")
    hyps.append(
        HypothesisResult("assignment-well-defined", "pass", "all relators map to identity")
    )

    multisets = tuple(
        _extremal_multiset(work_pres, i, target, work_assignment, mode)
        for i in range(len(work_pres.relators))
    )
    outcome = weak_concatenability(multisets)
    if isinstance(outcome, ConcatCertificate):
        return CheckVerdict(
            "concatenable",
            tuple(hyps),
            flips,
            work_pres,
            work_assignment,
            mode,
            multisets,
            outcome,
            None,
        )
    return CheckVerdict(
        "not-concatenable",
        tuple(hyps),
        flips,
        work_pres,
        work_assignment,
        mode,
        multisets,
        None,
        outcome,
    )
