"""In-place stride kernels for real state vectors.

Each kernel walks amplitude indices with bit tricks and splits the work over
threads with ``prange``. Every index is written by exactly one iteration, so
results do not depend on the thread count.
"""
from __future__ import annotations

import os

import numba
import numpy as np
from numba import njit, prange

THREADS_ENV = "SYMPLECTIQ_THREADS"

# Old TBB builds make numba warn on every import; OpenMP is always shipped.
if "NUMBA_THREADING_LAYER" not in os.environ:
    numba.config.THREADING_LAYER = "omp"


def configure_threads(limit: int | None = None) -> int:
    """Cap kernel parallelism (``SYMPLECTIQ_THREADS`` when ``limit`` is None)."""
    if limit is None:
        raw = os.environ.get(THREADS_ENV)
        if not raw:
            return numba.get_num_threads()
        limit = int(raw)
    limit = max(1, min(int(limit), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(limit)
    return limit


@njit(parallel=True, cache=True)
def controlled_2x2(psi, tbit, cmask, cval, u00, u01, u10, u11):
    """Apply a real 2x2 matrix on bit ``tbit`` where ``idx & cmask == cval``."""
    half = psi.shape[0] >> 1
    low = (np.int64(1) << tbit) - 1
    step = np.int64(1) << tbit
    for j in prange(half):
        i0 = ((j & ~low) << 1) | (j & low)
        if (i0 & cmask) == cval:
            i1 = i0 | step
            a = psi[i0]
            b = psi[i1]
            psi[i0] = u00 * a + u01 * b
            psi[i1] = u10 * a + u11 * b


@njit(parallel=True, cache=True)
def select_reflect(psi, emask, evalue, pmask, pval):
    """Negate amplitudes that match the enable mask but miss the pattern."""
    for i in prange(psi.shape[0]):
        if (i & emask) == evalue and (i & pmask) != pval:
            psi[i] = -psi[i]


@njit(parallel=True, cache=True)
def two_bit_4x4(psi, ba, bb, U):
    """Apply ``U`` on bits ``(ba, bb)``; local index is ``2*bit_a + bit_b``."""
    quarter = psi.shape[0] >> 2
    lo, hi = min(ba, bb), max(ba, bb)
    mlo = (np.int64(1) << lo) - 1
    mhi = (np.int64(1) << (hi - 1)) - 1
    sa = np.int64(1) << ba
    sb = np.int64(1) << bb
    for j in prange(quarter):
        k = ((j & ~mlo) << 1) | (j & mlo)
        base = ((k & ~mhi) << 1) | (k & mhi)
        v0 = psi[base]
        v1 = psi[base | sb]
        v2 = psi[base | sa]
        v3 = psi[base | sa | sb]
        psi[base] = U[0, 0] * v0 + U[0, 1] * v1 + U[0, 2] * v2 + U[0, 3] * v3
        psi[base | sb] = U[1, 0] * v0 + U[1, 1] * v1 + U[1, 2] * v2 + U[1, 3] * v3
        psi[base | sa] = U[2, 0] * v0 + U[2, 1] * v1 + U[2, 2] * v2 + U[2, 3] * v3
        psi[base | sa | sb] = U[3, 0] * v0 + U[3, 1] * v1 + U[3, 2] * v2 + U[3, 3] * v3


@njit(parallel=True, cache=True)
def controlled_diag(psi, cmask, cval, sbit, f0, f1):
    """Scale matching amplitudes by ``f0`` (bit ``sbit`` clear) or ``f1``."""
    s = np.int64(1) << sbit
    for i in prange(psi.shape[0]):
        if (i & cmask) == cval:
            if i & s:
                psi[i] *= f1
            else:
                psi[i] *= f0

