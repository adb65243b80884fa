"""Frequency side of the amplitude picture.

Amplitude magnitudes correspond to limiting relative frequencies: sampling a
normalized space N times and taking sqrt(count / N) recovers each magnitude
as N grows. Sampling is seeded and fully deterministic so every ledger is
reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from .amplitude import Amplitude, born_probability
from .errors import UsageError
from .events import SampleSpace

# Recorded in outputs so regression values stay pinned to one generator.
GENERATOR_ID = "numpy.random.PCG64"


@dataclass(frozen=True)
class TrialLedger:
    """Outcome counts from a seeded batch of trials."""

    counts: Dict[str, int]
    total_n: int
    seed: int

    def __post_init__(self) -> None:
        if self.total_n < 1:
            raise UsageError("total_n must be positive")
        if sum(self.counts.values()) != self.total_n:
            raise UsageError("counts must sum to total_n")


@dataclass(frozen=True)
class ConvergenceReport:
    """Estimated magnitudes and worst-case errors along a trial schedule."""

    schedule: Tuple[int, ...]
    estimates: Tuple[Dict[str, float], ...]
    max_errors: Tuple[float, ...]


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def child_seed(seed: int, index: int) -> int:
    """Derive an independent 64-bit seed for schedule entry `index`.

    Uses SeedSequence spawn keys so entries never share a stream.
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(index,))
    return int(ss.generate_state(1, np.uint64)[0])


def record_trials(space: SampleSpace, n: int, seed: int) -> TrialLedger:
    """Draw n outcomes from the space's Born distribution.

    Identical (space, n, seed) always yields an identical ledger.
    """
    if n < 1:
        raise UsageError("n must be positive")
    if not space.is_normalized:
        raise UsageError("record_trials requires a normalized space")
    probs = np.array([born_probability(a) for a in space.amplitudes])
    probs = probs / probs.sum()
    counts = _rng(seed).multinomial(n, probs)
    return TrialLedger(
        counts={lab: int(c) for lab, c in zip(space.labels, counts)},
        total_n=n,
        seed=seed,
    )


def amplitude_from_frequency(ledger: TrialLedger, label: str,
                             phase: float = 0.0) -> Amplitude:
    """Plug-in magnitude estimate sqrt(count / total) at the given phase.

    Composing with the Born rule returns count / total exactly, so the
    estimate is consistent at every finite N.
    """
    if label not in ledger.counts:
        raise UsageError(f"unknown outcome {label!r}")
    magnitude = math.sqrt(ledger.counts[label] / ledger.total_n)
    return Amplitude.from_polar(magnitude, phase)


def convergence_report(space: SampleSpace, schedule: Sequence[int],
                       seed: int) -> ConvergenceReport:
    """Estimate all magnitudes at each schedule point and report the max
    absolute error against the space's true magnitudes.

    Each schedule entry draws from its own derived seed stream; the raw seed
    is never reused across entries.
    """
    if len(schedule) == 0:
        raise UsageError("schedule must be non-empty")
    if any(n < 1 for n in schedule):
        raise UsageError("schedule entries must be positive")
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise UsageError("schedule must be strictly increasing")
    if not space.is_normalized:
        raise UsageError("convergence_report requires a normalized space")

    true_mags = {lab: a.magnitude
                 for lab, a in zip(space.labels, space.amplitudes)}
    estimates = []
    max_errors = []
    for k, n in enumerate(schedule):
        ledger = record_trials(space, n, child_seed(seed, k))
        row = {lab: math.sqrt(ledger.counts[lab] / n)
               for lab in space.labels}
        estimates.append(row)
        max_errors.append(max(abs(row[lab] - true_mags[lab])
                              for lab in space.labels))
    return ConvergenceReport(
        schedule=tuple(schedule),
        estimates=tuple(estimates),
        max_errors=tuple(max_errors),
    )
