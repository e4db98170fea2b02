"""Hot numeric kernels with numba-JIT and pure-numpy implementations.

The JIT path is the default whenever numba imports cleanly.  Set the
environment variable ``NGDCMA_DISABLE_NUMBA=1`` before import to force the
pure-numpy fallbacks (useful on platforms where numba is unavailable or
misbehaves, and for benchmarking -- see ``benchmarks/bench_kernels.py``).

Both implementations of each kernel agree to ~1e-14 relative; they are not
bit-identical because summation orders differ.  Within one selected path all
results are deterministic.
"""

import os

import numpy as np

_flag = os.environ.get("NGDCMA_DISABLE_NUMBA", "0").strip().lower()
_DISABLED = _flag in ("1", "true", "yes", "on")

if not _DISABLED:
    try:
        from numba import njit

        USING_NUMBA = True
    except ImportError:  # pragma: no cover - depends on environment
        USING_NUMBA = False
else:
    USING_NUMBA = False

# Above this many matrix elements the BLAS-backed numpy path beats the
# scalar JIT loop for the weighted moment accumulation (measured in
# benchmarks/bench_kernels.py; crossover is ~1e4-1e5 on one core).
MOMENTS_LOOP_CUTOFF = 40_000


def cumulative_logsumexp_np(ts: np.ndarray) -> np.ndarray:
    """out[k] = log(sum_{j<=k} exp(ts[j])), computed against the global max."""
    m = ts.max()
    return m + np.log(np.cumsum(np.exp(ts - m)))


def sorted_group_ends_np(fs: np.ndarray) -> np.ndarray:
    """For ascending fs, index of the last entry <= fs[k] (tie-group end)."""
    return np.searchsorted(fs, fs, side="right") - 1


def weighted_moments_np(w: np.ndarray, u: np.ndarray):
    """Return (sum w_i, sum w_i u_i, sum w_i u_i u_i^T) with a symmetric scatter."""
    sw = float(w.sum())
    first = w @ u
    scatter = (u * w[:, None]).T @ u
    scatter = 0.5 * (scatter + scatter.T)
    return sw, first, scatter


if USING_NUMBA:

    @njit(cache=True)
    def _cumulative_logsumexp_nb(ts):
        n = ts.shape[0]
        out = np.empty(n)
        m = ts[0]
        s = 1.0
        out[0] = m
        for k in range(1, n):
            t = ts[k]
            if t > m:
                s = s * np.exp(m - t) + 1.0
                m = t
            else:
                s += np.exp(t - m)
            out[k] = m + np.log(s)
        return out

    @njit(cache=True)
    def _sorted_group_ends_nb(fs):
        n = fs.shape[0]
        ends = np.empty(n, np.int64)
        ends[n - 1] = n - 1
        for k in range(n - 2, -1, -1):
            ends[k] = k if fs[k] < fs[k + 1] else ends[k + 1]
        return ends

    @njit(cache=True)
    def _weighted_moments_nb(w, u):
        n, d = u.shape
        sw = 0.0
        first = np.zeros(d)
        scatter = np.zeros((d, d))
        for i in range(n):
            wi = w[i]
            sw += wi
            for a in range(d):
                ua = wi * u[i, a]
                first[a] += ua
                for b in range(a, d):
                    scatter[a, b] += ua * u[i, b]
        for a in range(d):
            for b in range(a + 1, d):
                scatter[b, a] = scatter[a, b]
        return sw, first, scatter

    cumulative_logsumexp = _cumulative_logsumexp_nb
    sorted_group_ends = _sorted_group_ends_nb

    def weighted_moments(w, u):
        if u.size <= MOMENTS_LOOP_CUTOFF:
            return _weighted_moments_nb(w, u)
        return weighted_moments_np(w, u)

else:
    cumulative_logsumexp = cumulative_logsumexp_np
    sorted_group_ends = sorted_group_ends_np
    weighted_moments = weighted_moments_np
