"""Young-diagram machinery: partition sets by area and height, tower
(column) decompositions, signature enumeration for weighted cochain
spaces, and purely combinatorial Euler characteristics.

A signature is the multiplicity vector [k_1, k_2, ...] (optionally with
k_0) recording how many wedge slots sit in each graded piece; stored as
a tuple of (degree, multiplicity) pairs with positive multiplicities,
sorted by degree.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

Signature = tuple  # tuple[tuple[int, int], ...]


# ----------------------------------------------------------------------
# Partitions with fixed area and height
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def nabla(area: int, height: int) -> tuple:
    """All partitions with the given number of cells and exactly that many
    rows, built by prepending a full column of the requested height:

        nabla(A, k) = T(k) . (nabla(A-k, 0) u ... u nabla(A-k, k)).

    Returned partitions are row tuples, descending; the set is sorted
    descending-lexicographically.
    """
    if area == 0 and height == 0:
        return ((),)
    if area <= 0 or height <= 0 or area < height:
        return ()
    out = []
    for j in range(0, height + 1):
        for lam in nabla(area - height, j):
            out.append(tuple(r + 1 for r in lam) + (1,) * (height - j))
    return tuple(sorted(set(out), reverse=True))


def tower_decompose(lam: tuple) -> tuple:
    """Column slicing of a partition, i.e. its conjugate:
    l_j = #{i : lam_i >= j}."""
    if not lam:
        return ()
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or lam[-1] <= 0:
        raise ValueError("not a partition")
    return tuple(sum(1 for r in lam if r >= j) for j in range(1, lam[0] + 1))


def partition_to_signature(lam: tuple) -> Signature:
    """k_j = number of rows of width j."""
    counts: dict = {}
    for r in lam:
        counts[r] = counts.get(r, 0) + 1
    return tuple(sorted(counts.items()))


def signature_to_partition(sig: Signature) -> tuple:
    rows = []
    for j, k in sig:
        rows.extend([j] * k)
    return tuple(sorted(rows, reverse=True))


def towers_to_signature(towers: tuple) -> Signature:
    """k_j = l_j - l_{j+1}, k_s = l_s for a tower list l_1 >= ... >= l_s."""
    out = []
    for j, l in enumerate(towers):
        nxt = towers[j + 1] if j + 1 < len(towers) else 0
        if l - nxt:
            out.append((j + 1, l - nxt))
    return tuple(out)


def prepend_tower(m: int, sig: Signature) -> Signature:
    """T(m) acting on a signature: kbar_1 = m - sum k_j, kbar_{j+1} = k_j."""
    height = sum(k for _, k in sig)
    if m < height:
        raise ValueError("tower height %d below diagram height %d" % (m, height))
    out = [(j + 1, k) for j, k in sig]
    if m - height:
        out.append((1, m - height))
    return tuple(sorted(out))


def sig_height(sig: Signature) -> int:
    return sum(k for _, k in sig)


def sig_weight(sig: Signature, wt) -> int:
    return sum(k * wt(j) for j, k in sig)


def sig_dim(sig: Signature, cap) -> int:
    """Product of binomial(cap(j), k_j) over the signature."""
    out = 1
    for j, k in sig:
        c = cap(j)
        if k > c:
            raise ValueError("multiplicity %d exceeds cap %d at degree %d" % (k, c, j))
        out *= comb(c, k)
    return out


def _sort_key(sig: Signature) -> tuple:
    """Descending lexicographic on the dense (k_start, k_start+1, ...) vector."""
    dense = []
    top = max((j for j, _ in sig), default=0)
    counts = dict(sig)
    for j in range(0, top + 1):
        dense.append(-counts.get(j, 0))
    return tuple(dense)


def enumerate_signatures(m: int, w: int, wt, cap, start: int = 1,
                         max_degree: int | None = None) -> list:
    """All signatures with sum k_j = m, sum k_j wt(j) = w, 0 <= k_j <= cap(j),
    degrees running from `start`.  wt must be strictly increasing in j.

    The returned list is sorted descending-lexicographically on
    (k_start, k_start+1, ...), which fixes basis order downstream.
    """
    if m < 0:
        return []
    if m == 0:
        return [()] if w == 0 else []
    if max_degree is None:
        # one slot of degree J, the other m-1 slots as cheap as possible
        budget = w - _min_weight_sum(m - 1, wt, cap, start)
        j = start
        while wt(j) <= budget:
            j += 1
            if j - start > budget + m * 4 + 64:
                break
        max_degree = max(start, j - 1)
    out: list = []

    def rec(j: int, m_left: int, w_left: int, acc: list) -> None:
        if m_left == 0:
            if w_left == 0:
                out.append(tuple(reversed(acc)))
            return
        if j < start:
            return
        lo = _min_weight_sum(m_left, wt, cap, start, j)
        hi = _max_weight_sum(m_left, wt, cap, start, j)
        if lo is None or not (lo <= w_left <= hi):
            return
        top = min(cap(j), m_left)
        for k in range(top, -1, -1):
            rest_w = w_left - k * wt(j)
            if k:
                rec(j - 1, m_left - k, rest_w, acc + [(j, k)])
            else:
                rec(j - 1, m_left, w_left, acc)

    rec(max_degree, m, w, [])
    out.sort(key=_sort_key)
    return out


def _min_weight_sum(m: int, wt, cap, start: int, top: int | None = None):
    """Smallest achievable sum of wt over m slots with caps; None if m slots
    cannot be filled below `top`."""
    total, j = 0, start
    remaining = m
    while remaining > 0:
        if top is not None and j > top:
            return None
        take = min(cap(j), remaining)
        total += take * wt(j)
        remaining -= take
        j += 1
        if j > start + 10000:
            raise RuntimeError("runaway weight bound")
    return total


def _max_weight_sum(m: int, wt, cap, start: int, top: int) -> int:
    total, j = 0, top
    remaining = m
    while remaining > 0 and j >= start:
        take = min(cap(j), remaining)
        total += take * wt(j)
        remaining -= take
        j -= 1
    if remaining:
        return -(10 ** 9)
    return total


def degree_range(w: int, wt, cap, start: int = 1) -> tuple:
    """Inclusive m-range outside which every signature set is empty:
    m <= w + sum over non-positive-weight degrees of (1 - wt(j)) cap(j),
    and m >= the forced minimum when w is negative."""
    m_max = w
    j = start
    while wt(j) <= 0:
        m_max += (1 - wt(j)) * cap(j)
        j += 1
    m_min = 0
    if w < 0:
        # need enough negative-weight slots to reach w
        total, m_min_acc, j = 0, 0, start
        while total > w:
            if wt(j) >= 0:
                return (1, 0)  # empty range: w unreachable
            take = cap(j)
            total += take * wt(j)
            m_min_acc += take
            j += 1
        # back off the overshoot
        excess = w - total
        give_back = excess // (-wt(j - 1)) if wt(j - 1) else 0
        m_min = max(0, m_min_acc - give_back - 2)
    return (m_min, max(m_max, 0))


# ----------------------------------------------------------------------
# Euler characteristics
# ----------------------------------------------------------------------

def poly_caps(n: int):
    return lambda j: comb(n - 1 + j, j)


def euler_combinatorial(n: int, h: int, w: int, cap=None, start: int = 1) -> int:
    """Alternating sum over m of the weighted cochain dimensions for the
    polynomial grading wt(j) = j - 2 + h.  Includes the m = 0 scalar term
    when w = 0."""
    if cap is None:
        cap = poly_caps(n)
    wt = lambda j: j - 2 + h
    m_min, m_max = degree_range(w, wt, cap, start)
    total = 0
    for m in range(0, m_max + 1):
        dims = sum(sig_dim(s, cap) for s in enumerate_signatures(m, w, wt, cap, start))
        total += dims if m % 2 == 0 else -dims
    return total


def euler_polymodule(n: int, h: int, w: int) -> int:
    """Alternating sum of dim(C^m) = C(n-1+w+(h-1)m, n-1) C(n, m) over the
    admissible degrees 0 <= m <= n with w + (h-1)m >= 0."""
    total = 0
    for m in range(0, n + 1):
        p = w + (h - 1) * m
        if p < 0:
            continue
        d = comb(n - 1 + p, n - 1) * comb(n, m)
        total += d if m % 2 == 0 else -d
    return total
