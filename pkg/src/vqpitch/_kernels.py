"""Numba-compiled inner loops for 1D convolution along the frequency axis.

Arrays are channels-first float32 or float64; the same jitted functions
specialize for both. Local accumulator buffers are deliberate: writing
through output slices inside the hot loops defeats LLVM vectorization.
"""

import numpy as np
from numba import njit, prange


@njit(parallel=True, fastmath=True, cache=True)
def conv1d_forward(xp, w, out):
    """out[b, co, j] = sum_{ci, t} xp[b, ci, j + t] * w[co, ci, t].

    xp is the already zero-padded input (B, Ci, L + K - 1), out is (B, Co, L).
    """
    n_batch, n_in, _ = xp.shape
    n_out, _, ksz = w.shape
    length = out.shape[2]
    for b in prange(n_batch):
        co = 0
        while co + 1 < n_out:
            acc0 = np.zeros(length, xp.dtype)
            acc1 = np.zeros(length, xp.dtype)
            for ci in range(n_in):
                xrow = xp[b, ci]
                w0 = w[co, ci]
                w1 = w[co + 1, ci]
                for t in range(ksz):
                    a0 = w0[t]
                    a1 = w1[t]
                    for j in range(length):
                        xv = xrow[j + t]
                        acc0[j] += xv * a0
                        acc1[j] += xv * a1
            out[b, co] = acc0
            out[b, co + 1] = acc1
            co += 2
        if co < n_out:
            acc = np.zeros(length, xp.dtype)
            for ci in range(n_in):
                xrow = xp[b, ci]
                w0 = w[co, ci]
                for t in range(ksz):
                    a0 = w0[t]
                    for j in range(length):
                        acc[j] += xrow[j + t] * a0
            out[b, co] = acc


@njit(parallel=True, fastmath=True, cache=True)
def conv1d_grad_w(xp, dy, dw):
    """dw[co, ci, t] = sum_{b, j} dy[b, co, j] * xp[b, ci, j + t]."""
    n_batch, n_in, _ = xp.shape
    _, n_out, length = dy.shape
    ksz = dw.shape[2]
    for co in prange(n_out):
        for ci in range(n_in):
            acc = np.zeros(ksz, xp.dtype)
            for b in range(n_batch):
                xr = xp[b, ci]
                dr = dy[b, co]
                for t in range(ksz):
                    s = xp.dtype.type(0.0)
                    for j in range(length):
                        s += dr[j] * xr[j + t]
                    acc[t] += s
            dw[co, ci] = acc


@njit(parallel=True, fastmath=True, cache=True)
def conv1d_grad_x(dy, w, dxp):
    """dxp[b, ci, j + t] += sum_co dy[b, co, j] * w[co, ci, t].

    dxp has the padded length (B, Ci, L + K - 1); the caller strips the pad.
    """
    n_batch, n_out, length = dy.shape
    _, n_in, ksz = w.shape
    for b in prange(n_batch):
        ci = 0
        while ci + 1 < n_in:
            acc0 = np.zeros(length + ksz - 1, dy.dtype)
            acc1 = np.zeros(length + ksz - 1, dy.dtype)
            for co in range(n_out):
                dr = dy[b, co]
                w0 = w[co, ci]
                w1 = w[co, ci + 1]
                for t in range(ksz):
                    a0 = w0[t]
                    a1 = w1[t]
                    for j in range(length):
                        g = dr[j]
                        acc0[j + t] += g * a0
                        acc1[j + t] += g * a1
            dxp[b, ci] = acc0
            dxp[b, ci + 1] = acc1
            ci += 2
        if ci < n_in:
            acc = np.zeros(length + ksz - 1, dy.dtype)
            for co in range(n_out):
                dr = dy[b, co]
                w0 = w[co, ci]
                for t in range(ksz):
                    a0 = w0[t]
                    for j in range(length):
                        acc[j + t] += dr[j] * a0
            dxp[b, ci] = acc
