"""Dense subset-lattice tables.

A subset of an n-element ground set is an int mask; bit i stands for the
element at position i. Whole-lattice quantities (rank, closure, ...) are
numpy arrays of length 2**n indexed by mask.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np


def bits(mask):
    """Positions of the set bits of mask, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(positions):
    m = 0
    for i in positions:
        m |= 1 << i
    return m


def subset_key(mask):
    """Canonical order on subsets: by size, then lexicographically by position."""
    return (bin(mask).count("1"), bits(mask))


@lru_cache(maxsize=32)
def popcounts(n):
    idx = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int8)
    for i in range(n):
        pc += ((idx >> i) & 1).astype(np.int8)
    pc.setflags(write=False)
    return pc


@lru_cache(maxsize=32)
def all_masks(n):
    a = np.arange(1 << n, dtype=np.int64)
    a.setflags(write=False)
    return a


def scatter(positions):
    """Map every mask over len(positions) bits to a mask over the original positions.

    Entry j of the result is the original-ground-set mask whose bit positions[i]
    is set exactly when bit i of j is set.
    """
    m = len(positions)
    idx = all_masks(m)
    out = np.zeros(1 << m, dtype=np.int64)
    for i, pos in enumerate(positions):
        out |= ((idx >> i) & 1) << pos
    return out


def _split(a, i):
    # view of a with axis 1 selecting bit i
    return a.reshape(-1, 2, 1 << i)


def rank_table(n, bases):
    """rank(X) = max |B & X| over bases, for every X, via two subset sweeps."""
    indep = np.zeros(1 << n, dtype=bool)
    indep[np.fromiter(bases, dtype=np.int64, count=len(bases))] = True
    for i in range(n):
        v = _split(indep, i)
        v[:, 0, :] |= v[:, 1, :]
    table = np.where(indep, popcounts(n), 0).astype(np.int8)
    for i in range(n):
        v = _split(table, i)
        np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
    return table


def bases_from_table(n, table):
    r = int(table[-1])
    pc = popcounts(n)
    return np.nonzero((pc == r) & (table == r))[0]


def is_submodular(n, table):
    """Local submodularity r(X+e)+r(X+f) >= r(X+e+f)+r(X) for all X, e, f."""
    for j in range(n):
        for i in range(j):
            v = table.reshape(-1, 2, 1 << (j - i - 1), 2, 1 << i)
            lhs = v[:, 1, :, 0, :].astype(np.int16) + v[:, 0, :, 1, :]
            rhs = v[:, 1, :, 1, :].astype(np.int16) + v[:, 0, :, 0, :]
            if np.any(lhs < rhs):
                return False
    return True


def closure_table(n, table):
    """cl(X) for every X."""
    idx = all_masks(n)
    cl = idx.copy()
    for i in range(n):
        bit = 1 << i
        cl |= np.where(table[idx | bit] == table, bit, 0)
    return cl


def flat_indicator(n, table):
    idx = all_masks(n)
    ok = np.ones(1 << n, dtype=bool)
    for i in range(n):
        bit = 1 << i
        ok &= ((idx & bit) != 0) | (table[idx | bit] > table)
    return ok


def cyclic_indicator(n, table):
    """X with no coloops in M|X (every element lies on a circuit inside X)."""
    idx = all_masks(n)
    ok = np.ones(1 << n, dtype=bool)
    for i in range(n):
        bit = 1 << i
        ok &= ((idx & bit) == 0) | (table[idx & ~bit] == table)
    return ok


def circuit_indicator(n, table):
    idx = all_masks(n)
    pc = popcounts(n)
    ok = table == pc - 1
    for i in range(n):
        bit = 1 << i
        sub = idx & ~bit
        ok &= ((idx & bit) == 0) | (table[sub] == pc[sub])
    return ok


@lru_cache(maxsize=64)
def k_subsets(n, k):
    """All k-subsets of range(n) as masks, in canonical order."""
    out = np.fromiter((mask_of(c) for c in combinations(range(n), k)), dtype=np.int64)
    out.setflags(write=False)
    return out
