"""N-slit interference engine.

Each slit contributes a two-leg path amplitude: source to slit, slit to
screen. Leg phases are 2*pi times the exact Euclidean leg length over the
wavelength (no small-angle approximation); leg magnitudes are uniform so
each slit's total amplitude has magnitude 1 / sqrt(n_slits). Arrival
probabilities are relative intensities under that convention, not
normalized over the screen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .amplitude import Amplitude, Probability, SignedProbability
from .errors import InvariantError, UsageError
from .events import SampleSpace, classical_space

DUAL_FORM_RTOL = 1e-12


@dataclass(frozen=True)
class SlitGeometry:
    """Planar geometry: x is the optical axis, y the transverse direction."""

    source: Tuple[float, float]
    slit_plane_x: float
    slit_offsets: Tuple[float, ...]
    screen_plane_x: float
    wavelength: float

    def __post_init__(self) -> None:
        if self.wavelength <= 0 or not math.isfinite(self.wavelength):
            raise UsageError("wavelength must be positive and finite")
        if not self.source[0] < self.slit_plane_x < self.screen_plane_x:
            raise UsageError(
                "planes must be ordered: source x < slit plane x < screen x")
        if len(self.slit_offsets) < 1:
            raise UsageError("at least one slit is required")
        if any(b <= a for a, b in zip(self.slit_offsets,
                                      self.slit_offsets[1:])):
            raise UsageError("slit offsets must be strictly increasing")

    @property
    def n_slits(self) -> int:
        return len(self.slit_offsets)


@dataclass(frozen=True)
class PathAmplitude:
    """Per-slit amplitude decomposed into its two legs."""

    slit_index: int
    leg_source_to_slit: Amplitude
    leg_slit_to_screen: Amplitude
    total: Amplitude


@dataclass(frozen=True)
class IntensityProfile:
    """Relative intensity sampled on a uniform transverse grid."""

    screen_points: Tuple[float, ...]
    probabilities: Tuple[float, ...]


@dataclass(frozen=True)
class DetectionReport:
    """Which-path detection: one ideal detector per slit.

    Cross terms are excluded by construction, so interference_part is the
    literal constant 0.0, never a cancelled sum.
    """

    per_detector_probability: Tuple[float, ...]
    total: Probability
    interference_part: SignedProbability

    def to_sample_space(self, labels: Optional[Sequence[str]] = None
                        ) -> SampleSpace:
        """View the detectors as a classical sample space (the situation
        with unexamined detectors is an ordinary exclusive-outcome draw)."""
        if labels is None:
            labels = [f"slit_{i}"
                      for i in range(len(self.per_detector_probability))]
        return classical_space(self.per_detector_probability, labels)


def _check_slit(geom: SlitGeometry, slit: int) -> None:
    if not 0 <= slit < geom.n_slits:
        raise UsageError(f"slit index {slit} out of range 0..{geom.n_slits - 1}")


def _leg_phase(length: float, wavelength: float) -> float:
    # Reduce cycles before scaling by 2*pi to keep cos/sin accurate for
    # paths that are millions of wavelengths long.
    return 2.0 * math.pi * math.fmod(length / wavelength, 1.0)


def _leg_lengths(geom: SlitGeometry, slit: int, y: float
                 ) -> Tuple[float, float]:
    sx, sy = geom.source
    off = geom.slit_offsets[slit]
    l1 = math.hypot(geom.slit_plane_x - sx, off - sy)
    l2 = math.hypot(geom.screen_plane_x - geom.slit_plane_x, y - off)
    return l1, l2


def _total_amplitude(geom: SlitGeometry, slit: int, y: float) -> complex:
    l1, l2 = _leg_lengths(geom, slit, y)
    phase = _leg_phase(l1, geom.wavelength) + _leg_phase(l2, geom.wavelength)
    mag = 1.0 / math.sqrt(geom.n_slits)
    return complex(mag * math.cos(phase), mag * math.sin(phase))


def path_amplitude(geom: SlitGeometry, slit: int, y: float) -> PathAmplitude:
    """Two-leg amplitude through one slit to screen point y.

    Both legs share magnitude n_slits**-0.25 so the pair multiplies to the
    per-slit total magnitude 1 / sqrt(n_slits).
    """
    _check_slit(geom, slit)
    l1, l2 = _leg_lengths(geom, slit, y)
    leg_mag = geom.n_slits ** -0.25
    leg1 = Amplitude.from_polar(leg_mag, _leg_phase(l1, geom.wavelength))
    leg2 = Amplitude.from_polar(leg_mag, _leg_phase(l2, geom.wavelength))
    total = complex(leg1.re, leg1.im) * complex(leg2.re, leg2.im)
    return PathAmplitude(
        slit_index=slit,
        leg_source_to_slit=leg1,
        leg_slit_to_screen=leg2,
        total=Amplitude(total.real, total.imag),
    )


def _open_list(geom: SlitGeometry, open_slits: Iterable[int]) -> list[int]:
    opened = sorted(set(open_slits))
    if not opened:
        raise UsageError("open_slits must be non-empty")
    for i in opened:
        _check_slit(geom, i)
    return opened


def arrival_probability(geom: SlitGeometry, y: float,
                        open_slits: Iterable[int]) -> Probability:
    """Relative intensity at screen point y with the given slits open.

    Computed twice, as |sum of amplitudes|^2 and as the full pairwise sum
    (self terms plus signed cross terms); the two forms must agree before
    the value is returned.
    """
    opened = _open_list(geom, open_slits)
    amps = [_total_amplitude(geom, i, y) for i in opened]

    total = sum(amps)
    direct = total.real * total.real + total.imag * total.imag

    pairwise = sum(a.real * a.real + a.imag * a.imag for a in amps)
    for i in range(len(amps)):
        for j in range(i + 1, len(amps)):
            pairwise += 2.0 * (amps[i].real * amps[j].real
                               + amps[i].imag * amps[j].imag)

    if abs(direct - pairwise) > DUAL_FORM_RTOL * max(1.0, abs(direct)):
        raise InvariantError(
            f"direct Born form {direct!r} disagrees with pairwise sum "
            f"{pairwise!r} at y={y!r}")
    return max(direct, 0.0)


def pairwise_interference(geom: SlitGeometry, y: float, i: int,
                          j: int) -> SignedProbability:
    """Signed cross term between slits i and j at screen point y."""
    _check_slit(geom, i)
    _check_slit(geom, j)
    if i == j:
        raise UsageError("pairwise interference needs two distinct slits")
    a = _total_amplitude(geom, i, y)
    b = _total_amplitude(geom, j, y)
    return 2.0 * (a.real * b.real + a.imag * b.imag)


def sorkin_invariant(geom: SlitGeometry, y: float,
                     triple: Sequence[int]) -> SignedProbability:
    """Third-order interference residual for three slits at screen point y.

    Computed operationally from seven subset-open runs; vanishes (to
    rounding) because the arrival probability contains only self and
    pairwise terms.
    """
    if len(triple) != 3 or len(set(triple)) != 3:
        raise UsageError("triple must contain three distinct slit indices")
    a, b, c = triple
    p = lambda *idx: arrival_probability(geom, y, idx)
    return (p(a, b, c)
            - p(a, b) - p(a, c) - p(b, c)
            + p(a) + p(b) + p(c))


def intensity_profile(geom: SlitGeometry, y_min: float, y_max: float,
                      n_points: int,
                      open_slits: Optional[Iterable[int]] = None
                      ) -> IntensityProfile:
    """Arrival probability on a uniform grid of n_points screen positions."""
    if not y_min < y_max:
        raise UsageError("y_min must be less than y_max")
    if n_points < 2:
        raise UsageError("n_points must be at least 2")
    if open_slits is None:
        open_slits = range(geom.n_slits)
    opened = _open_list(geom, open_slits)
    grid = np.linspace(y_min, y_max, n_points)
    probs = tuple(arrival_probability(geom, float(y), opened) for y in grid)
    return IntensityProfile(screen_points=tuple(float(y) for y in grid),
                            probabilities=probs)


def delayed_choice(geom: SlitGeometry,
                   y_detectors: Sequence[float]) -> DetectionReport:
    """Which-path mode: detector i accepts quanta only from slit i.

    Only the diagonal (self) terms survive, so each detector's probability
    is the single-slit arrival probability at its position and the
    interference part is structurally zero.
    """
    if len(y_detectors) != geom.n_slits:
        raise UsageError("need exactly one detector per slit")
    per = []
    for i, yd in enumerate(y_detectors):
        a = _total_amplitude(geom, i, yd)
        per.append(a.real * a.real + a.imag * a.imag)
    return DetectionReport(
        per_detector_probability=tuple(per),
        total=sum(per),
        interference_part=0.0,
    )


def refined_maxima(profile: IntensityProfile) -> list[float]:
    """Interior local maxima of a profile, refined by a parabolic fit
    through each peak and its two neighbours."""
    y = profile.screen_points
    p = profile.probabilities
    peaks = []
    for k in range(1, len(p) - 1):
        if p[k] > p[k - 1] and p[k] >= p[k + 1]:
            denom = p[k - 1] - 2.0 * p[k] + p[k + 1]
            if denom < 0:
                shift = 0.5 * (p[k - 1] - p[k + 1]) / denom
                peaks.append(y[k] + shift * (y[k + 1] - y[k]))
            else:
                peaks.append(y[k])
    return peaks


def fringe_spacing(profile: IntensityProfile) -> Optional[float]:
    """Median spacing between adjacent refined maxima, or None if fewer
    than two maxima exist."""
    peaks = refined_maxima(profile)
    if len(peaks) < 2:
        return None
    gaps = sorted(b - a for a, b in zip(peaks, peaks[1:]))
    mid = len(gaps) // 2
    if len(gaps) % 2:
        return gaps[mid]
    return 0.5 * (gaps[mid - 1] + gaps[mid])
