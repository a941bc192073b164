"""Variable-Q transform frontend.

Analysis kernels live on a geometric frequency grid f_k = f_min * 2^(k/(12B)).
The bandwidth parameter gamma shortens low-frequency windows; gamma = 0
recovers constant-Q kernels. Frames are computed as inner products between
the audio window and complex kernels zero-padded to a power-of-two length.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyAudio, InvalidConfig, NyquistViolation, ShiftOutOfRange

DEFAULT_F_MIN = 27.5
DEFAULT_BINS_PER_SEMITONE = 3
DEFAULT_N_BINS = 99 * DEFAULT_BINS_PER_SEMITONE
DEFAULT_GAMMA = 7.0
DEFAULT_K_MAX = 16


def zeta(bins_per_semitone):
    """Relative bandwidth constant 2^(1/(12B)) - 1 of the geometric grid."""
    return 2.0 ** (1.0 / (12 * bins_per_semitone)) - 1.0


def max_bins(f_min, bins_per_semitone, sample_rate):
    """Largest bin count whose top center frequency stays below Nyquist."""
    nyquist = sample_rate / 2.0
    # f_{F-1} = f_min * 2^((F-1)/(12B)) < nyquist
    top = int(np.floor(12 * bins_per_semitone * np.log2(nyquist / f_min)))
    return top + 1 if f_min * 2.0 ** (top / (12.0 * bins_per_semitone)) < nyquist else top


@dataclass(frozen=True)
class VqtConfig:
    """Analysis grid and windowing parameters.

    q_scale rescales the Q factor Q = q_scale / zeta(B); with q_scale = 1
    adjacent bins' bandwidths touch, matching the usual CQT toolbox choice.
    """

    sample_rate: float
    f_min: float = DEFAULT_F_MIN
    bins_per_semitone: int = DEFAULT_BINS_PER_SEMITONE
    n_bins: int = DEFAULT_N_BINS
    gamma: float = DEFAULT_GAMMA
    hop: int = 160
    q_scale: float = 1.0
    k_max: int = DEFAULT_K_MAX

    def __post_init__(self):
        if self.f_min <= 0:
            raise InvalidConfig(f"f_min must be positive, got {self.f_min}")
        if self.bins_per_semitone < 1:
            raise InvalidConfig("bins_per_semitone must be >= 1")
        if self.n_bins < 2 * self.k_max + 1:
            raise InvalidConfig(
                f"n_bins={self.n_bins} too small for k_max={self.k_max}"
            )
        if self.gamma < 0:
            raise InvalidConfig("gamma must be >= 0")
        if self.hop < 1:
            raise InvalidConfig("hop must be >= 1")
        if self.q_scale <= 0:
            raise InvalidConfig("q_scale must be positive")
        if self.sample_rate <= 0:
            raise InvalidConfig("sample_rate must be positive")

    @property
    def q_factor(self):
        return self.q_scale / zeta(self.bins_per_semitone)

    @property
    def crop_length(self):
        return self.n_bins - 2 * self.k_max

    def bin_frequencies(self):
        k = np.arange(self.n_bins)
        return self.f_min * 2.0 ** (k / (12.0 * self.bins_per_semitone))

    def frequency_to_bin(self, f):
        """Fractional bin index of frequency f on this grid."""
        return 12.0 * self.bins_per_semitone * np.log2(f / self.f_min)


@dataclass
class VqtKernels:
    """Complex analysis kernel bank, centered and zero-padded to length W."""

    config: VqtConfig
    frequencies: np.ndarray      # (F,) center frequencies in Hz
    window_lengths: np.ndarray   # (F,) active window length per bin
    padded_length: int           # W, power of two >= max window length
    bank_real: np.ndarray        # (W, F) float
    bank_imag: np.ndarray        # (W, F) float
    norms: np.ndarray            # (F,) L1 norm applied per bin

    @property
    def n_bins(self):
        return self.config.n_bins

    def bank_complex(self):
        return self.bank_real + 1j * self.bank_imag


def window_length(f_k, cfg):
    """Analysis window length ceil(Q f_s / (f_k + gamma/zeta)) in samples."""
    z = zeta(cfg.bins_per_semitone)
    return int(np.ceil(cfg.q_factor * cfg.sample_rate / (f_k + cfg.gamma / z)))


def build_kernels(cfg, dtype=np.float64):
    """Construct the kernel bank for a config.

    Each bin k gets a Hann-windowed complex exponential at f_k over w_k
    samples, L1-normalized, centered in the padded length W. Raises
    NyquistViolation when the top center frequency reaches f_s / 2.
    """
    freqs = cfg.bin_frequencies()
    if freqs[-1] >= cfg.sample_rate / 2.0:
        raise NyquistViolation(
            f"top bin at {freqs[-1]:.1f} Hz exceeds Nyquist "
            f"{cfg.sample_rate / 2.0:.1f} Hz; reduce n_bins (max "
            f"{max_bins(cfg.f_min, cfg.bins_per_semitone, cfg.sample_rate)})"
        )
    lengths = np.array([window_length(f, cfg) for f in freqs], dtype=np.int64)
    w_max = int(lengths[0])
    padded = 1
    while padded < w_max:
        padded *= 2

    bank_r = np.zeros((padded, cfg.n_bins), dtype=dtype)
    bank_i = np.zeros((padded, cfg.n_bins), dtype=dtype)
    norms = np.zeros(cfg.n_bins, dtype=dtype)
    for k, (f_k, w_k) in enumerate(zip(freqs, lengths)):
        n = np.arange(w_k, dtype=np.float64)
        phase = 2.0 * np.pi * f_k * (n - (w_k - 1) / 2.0) / cfg.sample_rate
        win = np.hanning(w_k)
        kr = win * np.cos(phase)
        ki = win * np.sin(phase)
        l1 = np.sum(np.abs(kr + 1j * ki))
        norms[k] = l1
        start = (padded - w_k) // 2
        bank_r[start:start + w_k, k] = kr / l1
        bank_i[start:start + w_k, k] = ki / l1

    return VqtKernels(
        config=cfg,
        frequencies=freqs,
        window_lengths=lengths,
        padded_length=padded,
        bank_real=bank_r,
        bank_imag=bank_i,
        norms=norms,
    )


@dataclass
class VqtFrame:
    """One spectral frame: complex coefficients plus derived magnitude."""

    coeffs: np.ndarray
    time_s: float
    magnitude: np.ndarray = field(default=None)
    warming_up: bool = False

    def __post_init__(self):
        if self.magnitude is None:
            self.magnitude = np.abs(self.coeffs)


class VqtFrames:
    """Sequence of frames stored as dense (n_frames, F) arrays."""

    def __init__(self, coeffs, times):
        self.coeffs = coeffs
        self.times = np.asarray(times, dtype=np.float64)
        self.magnitude = np.abs(coeffs)

    def __len__(self):
        return self.coeffs.shape[0]

    def __getitem__(self, t):
        if isinstance(t, slice):
            return VqtFrames(self.coeffs[t], self.times[t])
        return VqtFrame(coeffs=self.coeffs[t], time_s=float(self.times[t]),
                        magnitude=self.magnitude[t])

    @property
    def n_bins(self):
        return self.coeffs.shape[1]


def _window_matrix(audio, padded_length, hop, n_frames):
    """Rows are length-W windows centered at t*hop over reflect-padded audio."""
    half = padded_length // 2
    padded = np.pad(audio, (half, half + padded_length), mode="reflect")
    idx = np.arange(n_frames)[:, None] * hop + np.arange(padded_length)[None, :]
    return padded[idx]


def vqt_offline(kernels, audio, hop=None):
    """Compute frames of an in-memory signal.

    Frame t is centered at sample t*hop; the audio is reflect-padded by W/2
    so frame 0 is centered at sample 0. Frame count is floor(len/hop) + 1.
    """
    audio = np.asarray(audio, dtype=np.float64).reshape(-1)
    if audio.size == 0:
        raise EmptyAudio("cannot transform empty audio")
    if hop is None:
        hop = kernels.config.hop
    if hop < 1:
        raise InvalidConfig("hop must be >= 1")

    n_frames = audio.size // hop + 1
    windows = _window_matrix(audio, kernels.padded_length, hop, n_frames)
    windows = windows.astype(kernels.bank_real.dtype)
    # matched filter: X_k = <window, conj(kernel_k)>
    coeffs = (windows @ kernels.bank_real) - 1j * (windows @ kernels.bank_imag)
    times = np.arange(n_frames) * (hop / kernels.config.sample_rate)
    return VqtFrames(coeffs, times)


@dataclass
class FramePair:
    """Equal-length crops of one frame offset by k bins."""

    base: np.ndarray
    shifted: np.ndarray
    shift: int


def crop_pair(frame, k, k_max=DEFAULT_K_MAX):
    """Extract the centered crop and its k-bin translated sibling.

    Works on the magnitude view. The base crop starts at bin k_max and has
    length F' = F - 2*k_max; the shifted crop starts at k_max + k.
    """
    mag = frame.magnitude if isinstance(frame, (VqtFrame,)) else np.asarray(frame)
    if abs(k) > k_max:
        raise ShiftOutOfRange(f"|k|={abs(k)} exceeds k_max={k_max}")
    n = mag.shape[-1]
    crop_len = n - 2 * k_max
    if crop_len < 1:
        raise ShiftOutOfRange(f"frame of {n} bins too short for k_max={k_max}")
    base = mag[..., k_max:k_max + crop_len]
    shifted = mag[..., k_max + k:k_max + k + crop_len]
    return FramePair(base=base, shifted=shifted, shift=int(k))


def normalize_magnitude(mag, floor=1e-8):
    """Scale magnitudes by the per-frame max(floor, L-inf norm).

    Accepts a single frame (F,) or a block (n, F); normalization is always
    per frame so that crops taken from one frame share the same scale.
    """
    mag = np.asarray(mag)
    peak = np.max(np.abs(mag), axis=-1, keepdims=True)
    return mag / np.maximum(peak, floor)
