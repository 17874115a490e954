"""Closed-form robust power domination values, bounds and witness placements.

All arithmetic is integer-exact; rational arguments use ``fractions.Fraction``.
Complete bipartite placements use the vertex numbering of
``complete_bipartite_graph``: X = 0..n-1, Y = n..n+m-1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .engine import Placement


class NotApplicable(ValueError):
    """A formula was asked for outside the parameter range where it is proven."""


def ceil_div(a: int, b: int) -> int:
    if b <= 0:
        raise ValueError("divisor must be positive")
    return -(-a // b)


def k33_value(k: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    return k + k // 5 + 2


def k3m_threshold(k: int) -> int:
    return k // 3 + 3


def k3m_value(k: int, m: int) -> int:
    if k < 0:
        raise ValueError("k must be non-negative")
    if m < k3m_threshold(k):
        raise NotApplicable(
            f"K_3,{m} with k={k} needs m >= {k3m_threshold(k)}; smaller m is an open case"
        )
    return k + k // 3 + 2


def _check_bipartite_args(n: int, m: int, k: int) -> None:
    if not 4 <= n <= m:
        raise NotApplicable(f"need 4 <= n <= m, got n={n}, m={m}")
    if k < 1:
        raise NotApplicable(f"need k >= 1, got k={k}")


def knm_bounds(n: int, m: int, k: int) -> tuple[int, int]:
    """Lower and upper bound on the k-robust number of K_{n,m}, 4 <= n <= m."""
    _check_bipartite_args(n, m, k)
    q, i = divmod(k, n + 2)
    if i <= n - 4:
        return 2 * (k + 1) - 4 * q, 2 * (k + 1) + (m - n - 4) * q
    return k + n - 1 + (n - 2) * q, k + m - 1 + (m - 2) * q


def knn_value(n: int, k: int) -> int:
    _check_bipartite_args(n, n, k)
    q, i = divmod(k, n + 2)
    if i <= n - 3:
        return 2 * (k + 1) - 4 * q
    return k + n - 1 + (n - 2) * q


def _two_level(n: int, m: int, q: int, heavy: int) -> dict[int, int]:
    """First ``heavy`` vertices of each part at q+1, the rest at q."""
    counts = {}
    for base, size in ((0, n), (n, m)):
        for j in range(size):
            c = q + 1 if j < heavy else q
            if c:
                counts[base + j] = c
    return counts


def _thinned_uniform(n: int, m: int, q: int, drop: int) -> dict[int, int]:
    """Every vertex at q+1, then ``drop`` PMUs taken round-robin over Y from its top id down."""
    counts = {v: q + 1 for v in range(n + m)}
    ys = list(range(n + m - 1, n - 1, -1))
    for j in range(drop):
        counts[ys[j % m]] -= 1
    return {v: c for v, c in counts.items() if c}


def knm_witness(n: int, m: int, k: int) -> Placement:
    """k-robust placement on K_{n,m} whose size equals the upper bound of ``knm_bounds``."""
    _check_bipartite_args(n, m, k)
    q, i = divmod(k, n + 2)
    if i <= n - 4:
        return Placement.from_counts(_two_level(n, m, q, i + 1))
    return Placement.from_counts(_thinned_uniform(n, m, q, n + 1 - i))


def knn_witness(n: int, k: int) -> Placement:
    """Minimum k-robust placement on K_{n,n}.

    The two-level pattern also works at residue n-3 when both parts have n
    vertices, which is where the balanced value switches formulas.
    """
    _check_bipartite_args(n, n, k)
    q, i = divmod(k, n + 2)
    if i <= n - 3:
        return Placement.from_counts(_two_level(n, n, q, i + 1))
    return Placement.from_counts(_thinned_uniform(n, n, q, n + 1 - i))


def qbound(q: int, gp: int, k: int) -> int:
    """Upper bound ceil(Q (k + gp - 1) / (Q - gp + 1)), valid when Q > gp >= 2 and k >= 1."""
    if not q > gp >= 2:
        raise NotApplicable(f"needs Q > gamma_P >= 2, got Q={q}, gamma_P={gp}")
    if k < 1:
        raise NotApplicable("needs k >= 1")
    return ceil_div(q * (k + gp - 1), q - gp + 1)


def qbound_placement(a: Sequence[int], gp: int, k: int) -> Placement:
    """Spread qbound(|A|, gp, k) PMUs over A, at most ceil(p/|A|) per vertex, in order."""
    p = qbound(len(a), gp, k)
    cap = ceil_div(p, len(a))
    counts = {}
    left = p
    for v in a:
        take = min(cap, left)
        if take:
            counts[v] = take
        left -= take
    return Placement.from_counts(counts)


def n_over_3_bound(n: int, k: int) -> int:
    if n < 3:
        raise NotApplicable("needs n >= 3")
    return (k + 1) * n // 3


def _frac(num: int, den: int) -> Fraction:
    if den <= 0:
        raise ValueError("denominators must be positive")
    return Fraction(num, den)


def ceiling_identities_check(samples: Iterable[tuple[int, ...]]) -> bool:
    """Check five floor/ceiling rules on integer-encoded samples.

    Each sample is ``(x_num, x_den, y_num, y_den, m, n, a)`` with ``x`` and ``y``
    the rationals ``x_num/x_den`` and ``y_num/y_den``; ``n`` and ``a`` must be
    positive.
    """
    ceil, floor = math.ceil, math.floor
    for xn, xd, yn, yd, m, n, a in samples:
        if n <= 0 or a <= 0:
            raise ValueError("n and a must be positive")
        x, y = _frac(xn, xd), _frac(yn, yd)
        if ceil(Fraction(ceil(x) + m, n)) != ceil((x + m) / n):
            return False
        if ceil(Fraction(m, n)) != (m - 1) // n + 1:
            return False
        if ceil(-x) != -floor(x):
            return False
        if not ceil(x) + ceil(y) - 1 <= ceil(x + y):
            return False
        if not a * ceil(x) <= ceil(a * x) + a - 1:
            return False
    return True
