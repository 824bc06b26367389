"""Finite-horizon sequential decision processes over a monad.

A process steps from state to state under chosen controls, collecting
exact rational rewards. The monad shapes the uncertainty of each step;
a measure turns a monadic structure of rewards into one number.

Two value functions are implemented. `val` is the textbook backward
recursion: it applies the measure at every recursion node, so the
number of measure applications grows with the tree of reachable
futures. `val_spec` first builds the full monadic structure of
accumulated reward sums and applies the measure exactly once at the
root. The two agree exactly when the measure is compatible with
shifting rewards by a constant, and `check_val_equiv` refuses to
compare them under a measure that fails that precondition, reporting
the shift witness instead.

Rewards ride inside monadic values as Rat leaves. Rat is a value
constructor that never appears in enumerated carriers; it exists so
monadic operations can transport exact rationals.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .instances import MonadInstance
from .reports import LawReport, QuantifierStat
from .values import (
    Atom,
    Base,
    Dist,
    FiniteType,
    Opt,
    Quantifier,
    Rat,
    Seq,
    Value,
    Vec,
    enumerate_carrier,
    enumerate_domain,
    render_value,
    sub_seed,
)

__all__ = [
    "Measure", "MEASURES", "get_measure", "CountingMeasure",
    "Sdp", "PolicySeq", "enumerate_policy_seqs", "policy_seq_count",
    "val", "rews", "val_spec",
    "check_measure_shift", "check_val_equiv",
]


# ---------------------------------------------------------------------------
# measures


@dataclass(frozen=True, slots=True)
class Measure:
    """Collapses one monadic structure of Rat leaves to a Fraction."""

    name: str
    apply: Callable[[Value], Fraction]


def _expected(mv: Value) -> Fraction:
    if not isinstance(mv, Dist):
        raise TypeError(f"expected-value measure needs a distribution, got {mv!r}")
    return sum((w * r.value for r, w in mv.entries), Fraction(0))


def _maximum(mv: Value) -> Fraction:
    if not isinstance(mv, Seq):
        raise TypeError(f"max measure needs a sequence, got {mv!r}")
    if not mv.items:
        raise ValueError("max measure is undefined on the empty sequence")
    return max(r.value for r in mv.items)


def _point(mv: Value) -> Fraction:
    if not isinstance(mv, Rat):
        raise TypeError(f"point measure needs a bare rational, got {mv!r}")
    return mv.value


def _default_zero(mv: Value) -> Fraction:
    if not isinstance(mv, Opt):
        raise TypeError(f"default-zero measure needs an optional, got {mv!r}")
    if mv.content is None:
        return Fraction(0)
    return mv.content.value


MEASURES = {
    "expected": Measure("expected", _expected),
    "max": Measure("max", _maximum),
    "point": Measure("point", _point),
    "default-zero": Measure("default-zero", _default_zero),
}


def get_measure(name: str) -> Measure:
    try:
        return MEASURES[name]
    except KeyError:
        raise KeyError(
            f"unknown measure {name!r}; known: {', '.join(sorted(MEASURES))}"
        )


class CountingMeasure:
    """Instrumented wrapper: same measure, plus an application counter."""

    def __init__(self, inner: Measure):
        self.inner = inner
        self.name = inner.name
        self.count = 0

    def apply(self, mv: Value) -> Fraction:
        self.count += 1
        return self.inner.apply(mv)


# ---------------------------------------------------------------------------
# the process


@dataclass(frozen=True, slots=True, eq=False)
class Sdp:
    """A finite-horizon decision process.

    admissible(t, x) lists the controls allowed at time t in state x, in
    the order policies enumerate them. next(t, x, y) is the monadic step
    and reward(t, x, y, x1) the exact reward for that transition.
    """

    name: str
    horizon: int
    states: FiniteType
    controls: FiniteType
    monad: MonadInstance
    measure: Measure | CountingMeasure
    next: Callable[[int, Atom, Atom], Value]
    reward: Callable[[int, Atom, Atom, Atom], Fraction]
    admissible: Callable[[int, Atom], tuple[Atom, ...]] | None = None

    def controls_at(self, t: int, x: Atom) -> tuple[Atom, ...]:
        if self.admissible is None:
            return enumerate_domain(self.controls)
        ys = self.admissible(t, x)
        if not ys:
            raise ValueError(f"no admissible control at t={t}, x={render_value(x)}")
        return ys


# a policy assigns a control to every state; a policy sequence is one
# policy per remaining step
Policy = tuple[Atom, ...]
PolicySeq = tuple[Policy, ...]


def policy_seq_count(sdp: Sdp, steps: int, t0: int = 0) -> int:
    total = 1
    for t in range(t0, t0 + steps):
        for x in enumerate_domain(sdp.states):
            total *= len(sdp.controls_at(t, x))
    return total


def enumerate_policy_seqs(sdp: Sdp, steps: int, q: Quantifier, t0: int = 0):
    """All policy sequences of the given length, lexicographically over
    admissible-control positions; seeded samples when the space exceeds
    the budget."""
    choice_lists: list[tuple[Atom, ...]] = []
    for t in range(t0, t0 + steps):
        for x in enumerate_domain(sdp.states):
            choice_lists.append(sdp.controls_at(t, x))
    total = policy_seq_count(sdp, steps, t0)
    n_states = sdp.states.size

    def assemble(flat: list[Atom]) -> PolicySeq:
        return tuple(
            tuple(flat[k * n_states : (k + 1) * n_states]) for k in range(steps)
        )

    if total <= q.budget:
        def gen_exhaustive():
            for flat in itertools.product(*choice_lists):
                yield assemble(list(flat))

        return gen_exhaustive(), total, "exhaustive"

    rng = random.Random(sub_seed(q.seed, 0))

    def gen_sampled():
        for _ in range(q.budget):
            yield assemble([choices[rng.randrange(len(choices))] for choices in choice_lists])

    return gen_sampled(), total, "sampled"


def render_policy_seq(ps: PolicySeq, n_states: int) -> str:
    return render_value(Seq(tuple(Vec(p, n_states) for p in ps)))


# ---------------------------------------------------------------------------
# value functions


def val(sdp: Sdp, ps: PolicySeq, x: Atom, t: int = 0) -> Fraction:
    """Backward-recursive value: measure at every node."""
    if not ps:
        return Fraction(0)
    y = ps[0][x.index]
    tail = ps[1:]
    m = sdp.monad
    mnext = sdp.next(t, x, y)
    rewards = m.map(
        lambda x1: Rat(
            Fraction(sdp.reward(t, x, y, x1)) + val(sdp, tail, x1, t + 1)
        ),
        mnext,
    )
    return sdp.measure.apply(rewards)


def rews(sdp: Sdp, ps: PolicySeq, x: Atom, t: int = 0) -> Value:
    """The monadic structure of total rewards along every future the
    policy sequence admits, with no measuring at all."""
    m = sdp.monad
    if not ps:
        return m.pure(Rat(Fraction(0)))
    y = ps[0][x.index]
    tail = ps[1:]
    return m.bind(
        sdp.next(t, x, y),
        lambda x1: m.map(
            lambda r: Rat(Fraction(sdp.reward(t, x, y, x1)) + r.value),
            rews(sdp, tail, x1, t + 1),
        ),
    )


def val_spec(sdp: Sdp, ps: PolicySeq, x: Atom, t: int = 0) -> Fraction:
    """Measure the whole reward structure once, at the root."""
    return sdp.measure.apply(rews(sdp, ps, x, t))


# ---------------------------------------------------------------------------
# the precondition and the equivalence


_SHIFT_RATES = (Fraction(0), Fraction(1), Fraction(1, 2))
_SHIFT_CONSTANTS = (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(-1))


def check_measure_shift(monad: MonadInstance, measure) -> LawReport:
    """Shift compatibility: measuring a structure with every reward
    bumped by c must equal c plus the original measurement.

    Quantifies over the bounded carrier of a three-point reward space
    (rates 0, 1, 1/2) transported into the monad, and a small grid of
    shift constants. Structures where the measure itself is undefined
    (the maximum of an empty sequence) are outside the measure's domain
    and are skipped, not failed; the skip count lands in the detail
    line."""
    t0 = time.perf_counter()
    report = LawReport(
        law_id="measureShift",
        instance=monad.name,
        sizes={"R": len(_SHIFT_RATES)},
        detail=f"measure={measure.name}",
    )
    base = FiniteType("R", len(_SHIFT_RATES))
    carrier = monad.carrier_of(Base(base))
    structures = [
        monad.map(lambda a: Rat(_SHIFT_RATES[a.index]), mv)
        for mv in enumerate_carrier(carrier)
    ]
    report.quantifiers = [
        QuantifierStat("mv", "M R", len(structures), "exhaustive", len(structures)),
        QuantifierStat("c", "shift grid", len(_SHIFT_CONSTANTS), "exhaustive", len(_SHIFT_CONSTANTS)),
    ]
    checked = 0
    skipped = 0
    for mv in structures:
        try:
            plain = measure.apply(mv)
        except ValueError:
            skipped += 1
            continue
        for c in _SHIFT_CONSTANTS:
            checked += 1
            shifted = measure.apply(monad.map(lambda r: Rat(c + r.value), mv))
            if shifted != plain + c:
                report.passed = False
                report.witness = {
                    "mv": render_value(mv),
                    "c": str(c),
                    "lhs": str(shifted),
                    "rhs": str(plain + c),
                }
                report.checked = checked
                report.elapsed_ms = (time.perf_counter() - t0) * 1000
                return report
    if skipped:
        report.detail += f" skipped={skipped} outside measure domain"
    report.checked = checked
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report


def check_val_equiv(sdp: Sdp, q: Quantifier) -> LawReport:
    """val and val_spec agree on every policy sequence and start state,
    provided the measure passes the shift-compatibility check. A failing
    precondition makes this report fail with the shift witness; the two
    value functions are not compared at all in that case."""
    t0 = time.perf_counter()
    report = LawReport(
        law_id="valSpec",
        instance=sdp.monad.name,
        sizes={
            "X": sdp.states.size,
            "Y": sdp.controls.size,
            "horizon": sdp.horizon,
        },
        detail=f"sdp={sdp.name} measure={sdp.measure.name}",
    )
    shift = check_measure_shift(sdp.monad, sdp.measure)
    if not shift.passed:
        report.passed = False
        report.witness = shift.witness
        report.diagnostic = (
            f"measure {sdp.measure.name!r} is not shift compatible; "
            "refusing to compare val with val_spec"
        )
        report.elapsed_ms = (time.perf_counter() - t0) * 1000
        return report

    seqs, total, mode = enumerate_policy_seqs(sdp, sdp.horizon, q)
    count = min(total, q.budget) if mode == "sampled" else total
    report.quantifiers = [
        QuantifierStat("ps", f"policy sequences (h={sdp.horizon})", total, mode, count),
        QuantifierStat("x", "X", sdp.states.size, "exhaustive", sdp.states.size),
    ]
    checked = 0
    for ps in seqs:
        for x in enumerate_domain(sdp.states):
            checked += 1
            lhs = val(sdp, ps, x)
            rhs = val_spec(sdp, ps, x)
            if lhs != rhs:
                report.passed = False
                report.witness = {
                    "ps": render_policy_seq(ps, sdp.states.size),
                    "x": render_value(x),
                    "lhs": str(lhs),
                    "rhs": str(rhs),
                }
                report.checked = checked
                report.elapsed_ms = (time.perf_counter() - t0) * 1000
                return report
    report.checked = checked
    report.elapsed_ms = (time.perf_counter() - t0) * 1000
    return report
