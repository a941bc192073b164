"""File formats: WAV audio, VQTF frame dumps, training manifests.

VQTF layout (all little-endian):
    magic   4 bytes  b"VQTF"
    version u32      1 = magnitude rows, 2 = complex rows (re, im interleaved)
    F       u32      bins per row
    hop     f32      hop in seconds
followed by float32 rows: F values per frame (version 1) or 2*F (version 2).
"""

import struct

import numpy as np
from scipy.io import wavfile

from .errors import CheckpointFormatError, EmptyAudio, ParseError

VQTF_MAGIC = b"VQTF"
VQTF_MAGNITUDE = 1
VQTF_COMPLEX = 2


def read_wav(path):
    """Load a mono WAV as float64 in [-1, 1] plus its sample rate.

    PCM16 and IEEE float32 files are accepted; stereo is rejected rather
    than silently downmixed.
    """
    rate, data = wavfile.read(path)
    if data.ndim != 1:
        raise EmptyAudio(f"{path}: expected mono audio, got shape {data.shape}")
    if data.size == 0:
        raise EmptyAudio(f"{path}: empty audio")
    if data.dtype == np.int16:
        audio = data.astype(np.float64) / 32768.0
    elif data.dtype in (np.float32, np.float64):
        audio = data.astype(np.float64)
    else:
        raise EmptyAudio(f"{path}: unsupported sample format {data.dtype}")
    return audio, int(rate)


def write_wav(path, audio, sample_rate):
    wavfile.write(path, int(sample_rate), np.asarray(audio, dtype=np.float32))


def write_vqtf(path, frames, hop_seconds, complex_rows=False):
    """Dump frames (a VqtFrames or a (n, F) array) to the VQTF format."""
    coeffs = getattr(frames, "coeffs", None)
    if coeffs is None:
        coeffs = np.asarray(frames)
    version = VQTF_COMPLEX if complex_rows else VQTF_MAGNITUDE
    n_bins = coeffs.shape[1]
    header = VQTF_MAGIC + struct.pack("<IIf", version, n_bins, float(hop_seconds))
    with open(path, "wb") as fh:
        fh.write(header)
        if complex_rows:
            rows = np.empty((coeffs.shape[0], 2 * n_bins), dtype="<f4")
            rows[:, 0::2] = coeffs.real
            rows[:, 1::2] = coeffs.imag
        else:
            rows = np.abs(coeffs).astype("<f4")
        fh.write(rows.tobytes())


def read_vqtf(path):
    """Read a VQTF dump.

    Returns (rows, hop_seconds, version); rows are magnitudes (n, F) for
    version 1 and complex (n, F) for version 2.
    """
    with open(path, "rb") as fh:
        header = fh.read(16)
        if len(header) < 16 or header[:4] != VQTF_MAGIC:
            raise CheckpointFormatError(f"{path}: not a VQTF file")
        version, n_bins, hop_seconds = struct.unpack("<IIf", header[4:16])
        if version not in (VQTF_MAGNITUDE, VQTF_COMPLEX):
            raise CheckpointFormatError(f"{path}: unknown VQTF version {version}")
        payload = np.frombuffer(fh.read(), dtype="<f4")
    per_row = n_bins * (2 if version == VQTF_COMPLEX else 1)
    if payload.size % per_row:
        raise CheckpointFormatError(f"{path}: truncated VQTF payload")
    rows = payload.reshape(-1, per_row)
    if version == VQTF_COMPLEX:
        rows = rows[:, 0::2].astype(np.float64) + 1j * rows[:, 1::2].astype(np.float64)
    else:
        rows = rows.astype(np.float64)
    return rows, float(hop_seconds), int(version)


def read_manifest(path):
    """Parse a training manifest.

    Each line is either one frames-file path or two tab-separated paths
    (vocals, background) for complex-domain mixing.
    """
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) == 1:
                entries.append((parts[0],))
            elif len(parts) == 2:
                entries.append((parts[0], parts[1]))
            else:
                raise ParseError(f"expected 1 or 2 paths, got {len(parts)}", lineno)
    return entries
