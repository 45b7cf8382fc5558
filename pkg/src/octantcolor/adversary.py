"""The semi-online interval-coloring game and the adversary that wins it.

Protocol: the adversary inserts closed intervals one at a time; after each
insertion the algorithm may color any presented, still-uncolored intervals
(colors are irrevocable). The referee then checks properness at value d:
a point covered by at least d presented intervals must be covered by two
intervals of distinct assigned colors. Depth counts every presented
interval, colored or not; this is the strict reading of the model and is
what makes delaying a real cost.

The recursive strategy with budget n plays itself twice at budget n-1 in
disjoint fresh regions. If the two runs certify different coverage
profiles, taking per-color maxima already improves the budget. Otherwise
it presents one interval I spanning the second run's certified points plus
a fresh spare region, and forces the algorithm to color I by playing the
(d-1)-strategy inside the spare: while I and the whole chain of pending
forced intervals stay uncolored, any completed sub-play would leave a
point at depth d seeing at most one color, which the referee flags. Once
I receives color j, the j-th certified point of the second run gains one
same-colored covering interval, and the budget advances.

Regions are integer spans handed out by arithmetic on precomputed widths;
certified points live at half-integers so they never touch an endpoint.
By default a forcing sub-play is cut short the moment its target is
colored (only the target's color is consumed; the sub-play's points are
discarded, so the early exit is sound). `early_exit=False` plays
sub-strategies to completion instead; in that mode an algorithm that
colors two outer intervals of a pending chain can starve an inner forcing
of its purpose, which surfaces as StrategyInternalError rather than a
wrong result.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import IllegalAssignment, StrategyInternalError
from .geometry import format_coord
from .verify import IntervalViolation, interval_properness_violation

__all__ = [
    "GameView",
    "GameTranscript",
    "InsertEvent",
    "AssignEvent",
    "CheckEvent",
    "ViolationFound",
    "Exhausted",
    "StrategyOutcome",
    "referee_check",
    "run_strategy",
    "run_duel",
    "strategy_width",
    "interval_count_bound",
    "replay_transcript",
    "verify_exhausted_invariants",
    "EagerBalanced",
    "LazyThreshold",
    "RandomColorer",
    "sample_algorithms",
]


@dataclass(frozen=True)
class InsertEvent:
    interval_id: int
    left: int
    right: int


@dataclass(frozen=True)
class AssignEvent:
    interval_id: int
    color: int


@dataclass(frozen=True)
class CheckEvent:
    violation: Optional[IntervalViolation]


@dataclass(frozen=True)
class GameView:
    """Read-only game snapshot handed to algorithms after each insertion."""

    k: int
    d: int
    intervals: tuple
    colors: dict

    def uncolored_ids(self) -> tuple:
        return tuple(i for i, _, _ in self.intervals if i not in self.colors)


@dataclass(frozen=True)
class GameTranscript:
    events: tuple

    def lines(self) -> list:
        out = []
        for ev in self.events:
            if isinstance(ev, InsertEvent):
                out.append(f"INS {ev.interval_id} {ev.left} {ev.right}")
            elif isinstance(ev, AssignEvent):
                out.append(f"COL {ev.interval_id} {ev.color}")
            elif isinstance(ev, CheckEvent) and ev.violation is not None:
                ids = " ".join(str(i) for i in ev.violation.covering_ids)
                out.append(f"VIOLATION {format_coord(ev.violation.point)} {ids}")
        return out

    def n_inserts(self) -> int:
        return sum(1 for ev in self.events if isinstance(ev, InsertEvent))


def replay_transcript(transcript: GameTranscript):
    """Reapply events; returns (intervals, colors) of the final state."""
    intervals = []
    colors = {}
    for ev in transcript.events:
        if isinstance(ev, InsertEvent):
            assert ev.interval_id == len(intervals)
            intervals.append((ev.interval_id, ev.left, ev.right))
        elif isinstance(ev, AssignEvent):
            assert ev.interval_id not in colors
            colors[ev.interval_id] = ev.color
    return intervals, colors


@dataclass(frozen=True)
class ViolationFound:
    point: object
    covering_ids: tuple
    depth: int
    colors_present: tuple


@dataclass(frozen=True)
class Exhausted:
    points: tuple
    counts: tuple


@dataclass(frozen=True)
class StrategyOutcome:
    outcome: object
    transcript: GameTranscript

    @property
    def is_violation(self) -> bool:
        return isinstance(self.outcome, ViolationFound)


class _ViolationSignal(Exception):
    def __init__(self, violation: IntervalViolation):
        super().__init__("properness violated")
        self.violation = violation


class _ForcingSatisfied(Exception):
    def __init__(self, interval_id: int, color: int):
        super().__init__("forced interval colored")
        self.interval_id = interval_id
        self.color = color


def referee_check(state, colors: Optional[dict] = None, d: Optional[int] = None) -> Optional[IntervalViolation]:
    """Properness check: depth over every presented interval,
    two-distinct-colors over the assigned ones.

    Accepts either a GameView or (intervals, colors, d) triplet form.
    """
    if isinstance(state, GameView):
        intervals, colors, d = state.intervals, state.colors, state.d
    else:
        intervals = state
        if colors is None or d is None:
            raise TypeError("colors and d are required with a bare interval list")
    payload = [((l, r), colors.get(iid)) for iid, l, r in intervals]
    return interval_properness_violation(payload, d)


class _Engine:
    def __init__(self, k: int, d: int, algorithm, early_exit: bool = True):
        self.k = k
        self.d = d
        self.algorithm = algorithm
        self.early_exit = early_exit
        self.intervals = []
        self.colors = {}
        self.events = []
        self.forcing_stack = []

    def view(self) -> GameView:
        return GameView(self.k, self.d, tuple(self.intervals), dict(self.colors))

    def insert(self, left: int, right: int) -> int:
        iid = len(self.intervals)
        self.intervals.append((iid, left, right))
        self.events.append(InsertEvent(iid, left, right))
        return iid

    def respond(self):
        assignments = list(self.algorithm.on_insert(self.view()) or ())
        seen = set()
        for iid, color in assignments:
            if not isinstance(iid, int) or not 0 <= iid < len(self.intervals):
                raise IllegalAssignment(f"unknown interval id {iid!r}")
            if iid in self.colors or iid in seen:
                raise IllegalAssignment(f"interval {iid} is already colored")
            if not isinstance(color, int) or not 1 <= color <= self.k:
                raise IllegalAssignment(f"color {color!r} outside 1..{self.k}")
            seen.add(iid)
        for iid, color in assignments:
            self.colors[iid] = color
            self.events.append(AssignEvent(iid, color))
        violation = referee_check(self.intervals, self.colors, self.d)
        self.events.append(CheckEvent(violation))
        if violation is not None:
            raise _ViolationSignal(violation)
        if self.early_exit:
            for iid in self.forcing_stack:
                if iid in self.colors:
                    raise _ForcingSatisfied(iid, self.colors[iid])

    def transcript(self) -> GameTranscript:
        return GameTranscript(tuple(self.events))


@lru_cache(maxsize=None)
def strategy_width(k: int, d: int, n: int) -> int:
    """Integer span width consumed by the budget-n strategy."""
    if n == 0:
        return k
    return 2 * strategy_width(k, d, n - 1) + strategy_width(k, d - 1, k * (d - 1))


@lru_cache(maxsize=None)
def interval_count_bound(k: int, d: int, n: int) -> int:
    """Upper bound on intervals the budget-n strategy can present."""
    if n == 0:
        return 0
    return 2 * interval_count_bound(k, d, n - 1) + 1 + interval_count_bound(k, d - 1, k * (d - 1))


class _Strategy:
    def __init__(self, engine: _Engine):
        self.engine = engine

    def play(self, d: int, n: int, lo: int):
        """Run the budget-n strategy inside [lo, lo + width); returns the
        certified (points, counts) relative to this region."""
        k = self.engine.k
        if n == 0:
            points = tuple(Fraction(2 * (lo + i) + 1, 2) for i in range(k))
            return points, (0,) * k

        w = strategy_width(k, d, n - 1)
        pa, ta = self.play(d, n - 1, lo)
        pb, tb = self.play(d, n - 1, lo + w)
        if ta != tb:
            points = tuple(pa[i] if ta[i] >= tb[i] else pb[i] for i in range(k))
            counts = tuple(max(ta[i], tb[i]) for i in range(k))
            if sum(counts) < n:
                raise StrategyInternalError("maxima selection lost coverage budget")
            return points, counts

        spare_lo = lo + 2 * w
        spare_hi = spare_lo + strategy_width(k, d - 1, k * (d - 1))
        target = (lo + w, spare_hi - 1)
        color = self._force_color(target, d, spare_lo)
        points = tuple(pb[i] if i == color - 1 else pa[i] for i in range(k))
        counts = tuple(tb[i] + 1 if i == color - 1 else ta[i] for i in range(k))
        return points, counts

    def _force_color(self, target, d: int, spare_lo: int) -> int:
        """Insert the target interval and squeeze a color out of it by
        playing the (d-1)-strategy in the spare region."""
        engine = self.engine
        left, right = target
        self._assert_spare_fresh(spare_lo, strategy_width(engine.k, d - 1, engine.k * (d - 1)))
        iid = engine.insert(left, right)
        engine.forcing_stack.append(iid)
        try:
            engine.respond()
            self.play(d - 1, engine.k * (d - 1), spare_lo)
            color = engine.colors.get(iid)
            if color is None:
                raise StrategyInternalError(
                    "forcing sub-play exhausted with its target uncolored "
                    "and no violation flagged"
                )
            return color
        except _ForcingSatisfied as sig:
            if sig.interval_id == iid:
                return sig.color
            raise
        finally:
            engine.forcing_stack.pop()

    def _assert_spare_fresh(self, spare_lo: int, width: int):
        """Fresh-region bookkeeping: nothing but the pending forcing chain
        may overlap a spare span."""
        spare_hi = spare_lo + width
        chain = set(self.engine.forcing_stack)
        for iid, l, r in self.engine.intervals:
            if iid in chain:
                continue
            if l < spare_hi and r >= spare_lo:
                raise StrategyInternalError(
                    f"spare region [{spare_lo},{spare_hi}) overlaps interval {iid}"
                )


def verify_exhausted_invariants(transcript: GameTranscript, outcome: Exhausted, n: int):
    """Independent re-check of the certified state from the raw transcript:
    point i is covered by exactly counts[i] intervals, all colored i, and
    the counts sum to at least n."""
    intervals, colors = replay_transcript(transcript)
    for i, (point, expected) in enumerate(zip(outcome.points, outcome.counts), start=1):
        covering = [iid for iid, l, r in intervals if l <= point <= r]
        if len(covering) != expected:
            raise StrategyInternalError(
                f"point {point} covered {len(covering)} times, certified {expected}"
            )
        if any(colors.get(iid) != i for iid in covering):
            raise StrategyInternalError(f"point {point} has a covering interval not colored {i}")
    if sum(outcome.counts) < n:
        raise StrategyInternalError("certified counts fall short of the budget")


def run_strategy(k: int, d: int, n: int, algorithm, early_exit: bool = True) -> StrategyOutcome:
    """Play the budget-n adversary strategy against `algorithm`.

    Ends in ViolationFound the moment the referee sees an improper state,
    or in Exhausted with k certified points whose self-invariants are
    re-verified from the transcript. Requires d >= 2 (a value-1 duel has
    no meaningful recursion; see run_duel).
    """
    if k < 1:
        raise ValueError("k must be positive")
    if d < 2:
        raise ValueError("run_strategy requires d >= 2; run_duel handles d = 1")
    if n < 0:
        raise ValueError("n must be non-negative")
    engine = _Engine(k, d, algorithm, early_exit=early_exit)
    try:
        points, counts = _Strategy(engine).play(d, n, 0)
        transcript = engine.transcript()
        outcome = Exhausted(points, counts)
        verify_exhausted_invariants(transcript, outcome, n)
    except _ViolationSignal as sig:
        transcript = engine.transcript()
        v = sig.violation
        outcome = ViolationFound(v.point, v.covering_ids, v.depth, v.colors_present)
    if transcript.n_inserts() > interval_count_bound(k, d, n):
        raise StrategyInternalError("interval budget exceeded")
    return StrategyOutcome(outcome, transcript)


def run_duel(k: int, d: int, algorithm, early_exit: bool = True) -> StrategyOutcome:
    """Defeat a claimed value-d proper k-coloring algorithm outright.

    d = 1 needs a single interval: a depth-1 point can never be covered by
    two distinct colors. For d >= 2 the budget k*d strategy runs; if it
    somehow exhausts, some certified point is d-covered monochromatically
    by pigeonhole, which is itself the violation.
    """
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    if d == 1:
        engine = _Engine(k, d, algorithm, early_exit=early_exit)
        try:
            engine.insert(0, 2)
            engine.respond()
        except _ViolationSignal as sig:
            v = sig.violation
            return StrategyOutcome(
                ViolationFound(v.point, v.covering_ids, v.depth, v.colors_present),
                engine.transcript(),
            )
        raise StrategyInternalError("a depth-1 point with two distinct colors is impossible")

    result = run_strategy(k, d, k * d, algorithm, early_exit=early_exit)
    if result.is_violation:
        return result

    outcome = result.outcome
    worst = max(range(k), key=lambda i: outcome.counts[i])
    if outcome.counts[worst] < d:
        raise StrategyInternalError("exhausted strategy certified fewer than k*d coverings")
    intervals, _colors = replay_transcript(result.transcript)
    point = outcome.points[worst]
    covering = tuple(iid for iid, l, r in intervals if l <= point <= r)
    return StrategyOutcome(
        ViolationFound(point, covering, len(covering), (worst + 1,)),
        result.transcript,
    )


class EagerBalanced:
    """Colors every interval on arrival with the least-used color among the
    colored intervals it overlaps (ties to the smallest color)."""

    def on_insert(self, view: GameView):
        iid, left, right = view.intervals[-1]
        usage = {c: 0 for c in range(1, view.k + 1)}
        for oid, l, r in view.intervals[:-1]:
            color = view.colors.get(oid)
            if color is not None and l <= right and left <= r:
                usage[color] += 1
        pick = min(usage, key=lambda c: (usage[c], c))
        return [(iid, pick)]


class LazyThreshold:
    """Delays everything until some point reaches depth d-1 with fewer than
    two distinct assigned colors, then colors covering intervals greedily."""

    def on_insert(self, view: GameView):
        trigger = max(view.d - 1, 1)
        pending = {}
        for _round in range(4 * len(view.intervals) + 4):
            payload = [
                ((l, r), pending.get(i, view.colors.get(i)))
                for i, l, r in view.intervals
            ]
            witness = interval_properness_violation(payload, trigger)
            if witness is None:
                break
            present = set(witness.colors_present)
            progressed = False
            for cid in witness.covering_ids:
                if len(present) >= 2:
                    break
                if cid in view.colors or cid in pending:
                    continue
                color = next(
                    (c for c in range(1, view.k + 1) if c not in present), 1
                )
                pending[cid] = color
                present.add(color)
                progressed = True
            if not progressed:
                break
        return list(pending.items())


class RandomColorer:
    """Seeded coin flipper: usually colors the newcomer, occasionally one of
    the delayed intervals. Replays identically for a given seed."""

    def __init__(self, seed: int = 0):
        self.rng = random.Random(seed)

    def on_insert(self, view: GameView):
        out = []
        iid = view.intervals[-1][0]
        if self.rng.random() < 0.6:
            out.append((iid, self.rng.randint(1, view.k)))
        for oid, _, _ in view.intervals[:-1]:
            if oid not in view.colors and self.rng.random() < 0.1:
                out.append((oid, self.rng.randint(1, view.k)))
        return out


def sample_algorithms() -> dict:
    """Name -> class map of the bundled semi-online foils."""
    return {"eager": EagerBalanced, "lazy": LazyThreshold, "random": RandomColorer}
