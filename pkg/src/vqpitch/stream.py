"""Causal streaming VQT with cached samples and buffer refilling.

A stream keeps the last W samples in a ring. Each pushed chunk of h samples
yields one frame. With refilling (factor m), the analysis window is built
from the last W - r samples followed by the newest r samples repeated in
original order, r = floor(m * (W - h)); this centers the window closer to
the newest audio and cuts the window lag from W/2 to roughly h/2 samples
at m = 0.5. The zero variant fills those r positions with zeros instead.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ChunkSizeMismatch, InvalidConfig
from .vqt import VqtFrame, VqtFrames, build_kernels

REFILL_MODES = ("none", "refill", "zero")


def refill_length(padded_length, hop, m):
    if not 0.0 <= m <= 0.5:
        raise InvalidConfig(f"refill factor m={m} outside [0, 0.5]")
    return int(np.floor(m * (padded_length - hop)))


class StreamState:
    """Per-stream mutable state; one instance per audio stream."""

    def __init__(self, kernels, hop, refill_factor=0.0, mode="none"):
        if mode not in REFILL_MODES:
            raise InvalidConfig(f"unknown refill mode {mode!r}")
        if hop < 1:
            raise InvalidConfig("hop must be >= 1")
        self.kernels = kernels
        self.hop = int(hop)
        self.mode = mode
        self.refill_factor = float(refill_factor)
        self.refill = refill_length(kernels.padded_length, self.hop, self.refill_factor)
        self.ring = np.zeros(kernels.padded_length, dtype=np.float64)
        self.samples_seen = 0

    @property
    def warming_up(self):
        return self.samples_seen < self.kernels.padded_length

    def window(self):
        """Assemble the analysis window for the current ring contents."""
        w = self.kernels.padded_length
        if self.mode == "none" or self.refill == 0:
            return self.ring.copy()
        r = self.refill
        out = np.empty(w, dtype=self.ring.dtype)
        out[:w - r] = self.ring[r:]
        if self.mode == "refill":
            out[w - r:] = self.ring[w - r:]
        else:
            out[w - r:] = 0.0
        return out


def push_chunk(state, chunk):
    """Consume one hop-sized chunk and return the resulting frame.

    The frame's nominal center depends on the refill mode: without refilling
    it sits W/2 samples in the past; with refilling it moves to within
    floor(W/2 - m(W - h)) samples of the newest sample.
    """
    chunk = np.asarray(chunk, dtype=np.float64).reshape(-1)
    if chunk.size != state.hop:
        raise ChunkSizeMismatch(
            f"expected chunk of {state.hop} samples, got {chunk.size}"
        )
    state.ring = np.roll(state.ring, -state.hop)
    state.ring[-state.hop:] = chunk
    state.samples_seen += chunk.size

    window = state.window().astype(state.kernels.bank_real.dtype)
    coeffs = (window @ state.kernels.bank_real) - 1j * (window @ state.kernels.bank_imag)

    w = state.kernels.padded_length
    lag = window_lag_samples(w, state.hop, state.refill_factor if state.mode != "none" else 0.0)
    center = (state.samples_seen - lag) / state.kernels.config.sample_rate
    return VqtFrame(coeffs=coeffs, time_s=center, warming_up=state.warming_up)


def window_lag_samples(padded_length, hop, m):
    """floor(W/2 - m (W - h)): samples between newest input and frame center."""
    return int(np.floor(padded_length / 2.0 - m * (padded_length - hop)))


@dataclass
class LatencyReport:
    window_lag: float
    compute_time: float

    @property
    def total(self):
        return self.window_lag + self.compute_time


def latency(cfg, m=0.0, compute_time=0.0):
    """Latency of a stream under config cfg with refill factor m.

    total = floor(W/2 - m (W - hop)) / f_s + compute_time; m = 0 gives the
    plain half-window lag W / (2 f_s) + compute_time.
    """
    if not 0.0 <= m <= 0.5:
        raise InvalidConfig(f"refill factor m={m} outside [0, 0.5]")
    kernels = build_kernels(cfg)
    lag = window_lag_samples(kernels.padded_length, cfg.hop, m)
    return LatencyReport(window_lag=lag / cfg.sample_rate, compute_time=compute_time)


def vqt_streamed(kernels, audio, hop, m=0.0, mode="refill"):
    """Offline emulation of the causal refill/zero window construction.

    Frame t is aligned to sample t*hop (reflect-padded like vqt_offline) but
    built from the causal window whose newest sample is t*hop + lag, where
    lag = floor(W/2 - m (W - hop)). With m = 0 and mode "none" this equals
    vqt_offline. Used to generate training/eval frames for refill models.
    """
    if mode not in REFILL_MODES:
        raise InvalidConfig(f"unknown refill mode {mode!r}")
    audio = np.asarray(audio, dtype=np.float64).reshape(-1)
    w = kernels.padded_length
    eff_m = 0.0 if mode == "none" else m
    r = refill_length(w, hop, eff_m)
    lag = window_lag_samples(w, hop, eff_m)

    half = w // 2
    padded = np.pad(audio, (half, half + w), mode="reflect")
    n_frames = audio.size // hop + 1
    # newest sample of frame t sits at position t*hop + lag in audio coords
    newest = np.arange(n_frames) * hop + lag + half
    offsets = np.arange(w)
    idx = (newest[:, None] + 1) - w + r + offsets[None, :]
    windows = padded[idx]
    if r > 0:
        if mode == "refill":
            windows[:, w - r:] = windows[:, w - 2 * r:w - r]
        elif mode == "zero":
            windows[:, w - r:] = 0.0
    windows = windows.astype(kernels.bank_real.dtype)
    coeffs = (windows @ kernels.bank_real) - 1j * (windows @ kernels.bank_imag)
    times = np.arange(n_frames) * (hop / kernels.config.sample_rate)
    return VqtFrames(coeffs, times)
