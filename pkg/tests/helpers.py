"""Shared helpers for the test suite.

Multiset comparisons treat spectra as sorted tuples of complex numbers and
use greedy pairing, which is exact for the sorted-real case and adequate for
the small complex multisets produced by directed examples.
"""

import numpy as np


def complex_sort(values):
    """Sort complex values by (real, imag)."""
    arr = np.asarray(values, dtype=complex)
    order = np.lexsort((arr.imag, arr.real))
    return arr[order]


def multiset_distance(left, right):
    """Max pairwise gap between two equal-size spectra under best pairing.

    Real (or nearly real) multisets pair by sorted order, which is optimal.
    Genuinely complex multisets use an optimal assignment instead: sorted
    pairing can cross conjugate pairs whose real parts differ only by
    rounding noise.
    """
    a = np.asarray(left, dtype=complex).ravel()
    b = np.asarray(right, dtype=complex).ravel()
    if a.shape != b.shape:
        return np.inf
    if a.size == 0:
        return 0.0
    if max(np.max(np.abs(a.imag)), np.max(np.abs(b.imag))) <= 1e-8:
        sa = a[np.argsort(a.real, kind="stable")]
        sb = b[np.argsort(b.real, kind="stable")]
        return float(np.max(np.abs(sa - sb)))
    import scipy.optimize

    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = scipy.optimize.linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def multiset_contains(smaller, larger, tol):
    """Greedy check that every value in smaller appears in larger.

    Both inputs are multisets of reals (or complex with matching order);
    each element of the larger multiset is consumed at most once.
    """
    small = list(complex_sort(smaller))
    large = list(complex_sort(larger))
    j = 0
    for value in small:
        while j < len(large) and not np.isclose(large[j], value, atol=tol, rtol=0.0):
            j += 1
        if j >= len(large):
            return False
        j += 1
    return True


def expand_counts(pairs):
    """Flatten (value, count) pairs into a value list."""
    out = []
    for value, count in pairs:
        out.extend([value] * count)
    return out
