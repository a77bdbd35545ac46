"""Baseband pulse envelopes and frequency-offset coding schemes.

Waveforms are unit-energy complex envelopes supported on [0, T_p].  The only
kinds needed here are the rectangular pulse and the rectangular-envelope linear
chirp, optionally with a constant baseband frequency shift (used to fold a
uniform FO into a MIMO-style waveform).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .array_model import ArrayConfig

# Welch-constructed Costas permutation of order 16 (powers of 3 modulo 17).
DEFAULT_COSTAS_16 = (3, 9, 10, 13, 5, 15, 11, 16, 14, 8, 7, 4, 12, 2, 6, 1)


@dataclass(frozen=True)
class BasebandWaveform:
    """Unit-energy rectangular-envelope waveform on [0, T_p].

    s(t) = exp(j*pi*chirp_rate*t^2) * exp(j*2*pi*freq_offset*t) / sqrt(T_p)
    for 0 <= t <= T_p and 0 elsewhere.  chirp_rate is in Hz/s; a plain
    rectangular pulse has chirp_rate == freq_offset == 0.  `bandwidth` is the
    declared baseband bandwidth used for narrowband and sampling checks, not a
    computed spectral width.
    """

    pulse_duration: float
    chirp_rate: float = 0.0
    freq_offset: float = 0.0
    bandwidth: float = 0.0

    def __post_init__(self):
        if self.pulse_duration <= 0:
            raise ValueError("pulse_duration must be positive")

    @property
    def kind(self) -> str:
        return "rect" if self.chirp_rate == 0.0 else "chirp"

    @property
    def amplitude(self) -> float:
        "Normalization making the pulse unit energy."
        return 1.0 / np.sqrt(self.pulse_duration)

    def sample(self, t) -> np.ndarray:
        "Complex envelope at time(s) t; exactly zero outside [0, T_p]."
        t = np.asarray(t, dtype=float)
        inside = (t >= 0.0) & (t <= self.pulse_duration)
        phase = np.pi * self.chirp_rate * t * t + 2.0 * np.pi * self.freq_offset * t
        out = np.where(inside, self.amplitude * np.exp(1j * phase), 0.0 + 0.0j)
        return out


def rect_pulse(pulse_duration: float, bandwidth: float | None = None) -> BasebandWaveform:
    "Unit-energy rectangular pulse; declared bandwidth defaults to 1/T_p."
    b = 1.0 / pulse_duration if bandwidth is None else bandwidth
    return BasebandWaveform(pulse_duration=pulse_duration, bandwidth=b)


def sample_waveform(w: BasebandWaveform, t) -> np.ndarray:
    "Module-level alias for BasebandWaveform.sample."
    return w.sample(t)


def make_chirp_bank(config: ArrayConfig, base_rate_num: float = 100.0,
                    rate_step: float = 10.0) -> list[BasebandWaveform]:
    """One chirp per element with rate gamma_m = (base_rate_num + rate_step*m) / T_p^2.

    Element m sweeps roughly (base_rate_num + rate_step*m)/T_p of bandwidth over
    the pulse; that swept width is recorded as the declared bandwidth.
    """
    tp = config.pulse_duration
    bank = []
    for m in range(config.num_elements):
        rate = (base_rate_num + rate_step * m) / tp**2
        bank.append(BasebandWaveform(pulse_duration=tp, chirp_rate=rate, bandwidth=rate * tp))
    return bank


def with_freq_offset(w: BasebandWaveform, freq_offset: float) -> BasebandWaveform:
    "Copy of w with an added constant baseband frequency shift."
    return BasebandWaveform(
        pulse_duration=w.pulse_duration,
        chirp_rate=w.chirp_rate,
        freq_offset=w.freq_offset + freq_offset,
        bandwidth=w.bandwidth,
    )


@dataclass(frozen=True)
class FoCoding:
    """Frequency-offset coding scheme producing per-element offsets.

    Schemes: "random" (epsilon_m * scale, epsilon_m uniform on (0,1), seeded),
    "costas" (c_m * scale from a Costas code table), "logarithmic"
    (ln(m+1) * scale), "square" (m^2 * scale).
    """

    scheme: str
    scale: float
    seed: int | None = None
    costas_code: tuple[int, ...] = DEFAULT_COSTAS_16

    def __post_init__(self):
        if self.scheme not in ("random", "costas", "logarithmic", "square"):
            raise ValueError(f"unknown FO coding scheme {self.scheme!r}")
        if self.scheme == "random" and self.seed is None:
            raise ValueError("random FO coding requires a seed")


def generate_offsets(coding: FoCoding, num_elements: int) -> np.ndarray:
    "Per-element frequency offsets in Hz, length M, deterministic given the coding."
    m = np.arange(num_elements)
    if coding.scheme == "square":
        return m.astype(float) ** 2 * coding.scale
    if coding.scheme == "logarithmic":
        return np.log(m + 1.0) * coding.scale
    if coding.scheme == "costas":
        if len(coding.costas_code) < num_elements:
            raise ValueError(
                f"Costas table of length {len(coding.costas_code)} cannot cover {num_elements} elements"
            )
        return np.asarray(coding.costas_code[:num_elements], dtype=float) * coding.scale
    rng = np.random.default_rng(coding.seed)
    return rng.random(num_elements) * coding.scale
