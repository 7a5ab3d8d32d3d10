"""Mutual information and capacity of the discrete memoryless channel.

Everything is base-2: capacities and rates are in bits.
"""

import numpy as np

from .channel import as_matrix

OUTPUT_PROB_FLOOR = 1e-15  # input-law entries below this are zeroed on return
DIST_SUM_TOL = 1e-12


class ConvergenceError(RuntimeError):
    """Capacity iteration failed to reach the requested gap."""

    def __init__(self, gap, iterations, capacity, p_x):
        self.gap = gap
        self.iterations = iterations
        self.capacity = capacity
        self.p_x = p_x
        super().__init__(
            f"no convergence after {iterations} iterations; "
            f"capacity-bound gap {gap:.3e} bits (best estimate "
            f"{capacity:.6f} bits)")


def _as_input_distribution(p, n_rows):
    p = np.asarray(p, dtype=float)
    if p.shape != (n_rows,):
        raise ValueError(
            f"input distribution must have shape ({n_rows},), got {p.shape}")
    if np.any(p < 0):
        raise ValueError("input distribution entries must be >= 0")
    if abs(p.sum() - 1.0) > DIST_SUM_TOL:
        raise ValueError(f"input distribution sums to {p.sum()!r}, not 1")
    return p


def _row_divergences(P, q):
    """D[x] = sum_y P(y|x) log2(P(y|x)/q(y)), with 0 log 0 = 0.

    Entries can be +inf when a row reaches an output that q misses; that
    only happens for rows excluded from the support of the input law.
    """
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.log2(P) - np.log2(q)[None, :]
        terms = np.where(P > 0, P * ratio, 0.0)
    return terms.sum(axis=1)


def mutual_information(p_x, channel):
    """I(X;Y) in bits for input law p_x over the given channel."""
    P = as_matrix(channel)
    p = _as_input_distribution(p_x, P.shape[0])
    q = p @ P
    support = p > 0
    D = _row_divergences(P[support], q)
    return float(p[support] @ D)


def blahut_arimoto(channel, tol=1e-9, max_iter=10000):
    """Capacity and capacity-achieving input law of a channel matrix.

    Alternating maximization from the uniform law: each pass scales p(x) by
    2**D(x), where D(x) is the divergence of row x from the current output
    marginal. max(D) and sum(p*D) bracket the capacity; iteration stops when
    that gap drops below tol, so the returned capacity is within tol of the
    true value and the returned law achieves at least capacity - tol.

    Returns (capacity_bits, p_x, iterations); raises ConvergenceError with
    the final gap if max_iter passes are not enough.
    """
    P = as_matrix(channel)
    if np.any(P < 0):
        raise ValueError("channel matrix entries must be >= 0")
    if np.any(np.abs(P.sum(axis=1) - 1.0) > 1e-9):
        raise ValueError("channel matrix rows must sum to 1")
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    n = P.shape[0]
    p = np.full(n, 1.0 / n)

    gap = np.inf
    lower = 0.0
    for iteration in range(1, max_iter + 1):
        q = p @ P
        D = _row_divergences(P, q)
        lower = float(p @ D)
        upper = float(D.max())
        gap = upper - lower
        if gap < tol:
            return max(lower, 0.0), _cleanup(p), iteration
        # multiplicative update in log space to dodge overflow; symbols at
        # exactly zero mass stay at zero
        logp = np.where(p > 0, np.log2(np.where(p > 0, p, 1.0)) + D, -np.inf)
        logp -= logp.max()
        p = np.exp2(logp)
        p /= p.sum()

    raise ConvergenceError(gap=gap, iterations=max_iter,
                           capacity=max(lower, 0.0), p_x=_cleanup(p))


def _cleanup(p):
    p = p.copy()
    p[p < OUTPUT_PROB_FLOOR] = 0.0
    return p / p.sum()


def posterior_means(p_x, channel):
    """(E[X], E[Y]) under input law p_x and the channel."""
    P = as_matrix(channel)
    p = _as_input_distribution(p_x, P.shape[0])
    mean_x = float(p @ np.arange(P.shape[0]))
    mean_y = float(p @ (P @ np.arange(P.shape[1])))
    return mean_x, mean_y
