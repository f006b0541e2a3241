"""Single-element extensions and freeness comparisons.

principal_extension is the primitive: the new element is spanned by a set
exactly when that set spans the chosen flat. Free placement, series
extension and the shift a -> b are all pipelines over it.
"""

from __future__ import annotations

import numpy as np

from . import _bits
from .core import (
    add_coloop,
    closure,
    delete,
    fresh_label,
    from_table,
    relabel,
    reorder,
)
from .errors import (
    GroundSetMismatch,
    LabelCollision,
    LoopElement,
    NotAFlat,
    SameElement,
    UnknownLabel,
)


def _fresh(M, e):
    e = str(e)
    if e in M._index:
        raise LabelCollision(f"{e!r} is already in the ground set")
    return e


def principal_extension(M, F, e):
    """Freely place e in the flat F of M."""
    e = _fresh(M, e)
    f = M.mask(F)
    if closure(M, F) != M.subset(f):
        raise NotAFlat(f"{M.ordered(F)} is not a flat")
    t = M.table
    spans_f = t[_bits.all_masks(M.n) | f] == t
    upper = t + (~spans_f).astype(np.int8)
    return from_table(M.labels + (e,), np.concatenate([t, upper]))


def free_extension(M, e):
    return principal_extension(M, M.labels, e)


def place_in_span(M, S, e):
    """Freely place e in the flat spanned by S."""
    return principal_extension(M, closure(M, S), e)


def series_extension(M, e, e_new):
    """Coextend M by e_new so that {e, e_new} is a series pair.

    Built as: add a coloop, freely place a new element on the line it spans
    with e, delete e, and let the new element take over e's label.
    """
    e = str(e)
    if e not in M._index:
        raise UnknownLabel(f"{e!r} is not in the ground set")
    e_new = _fresh(M, e_new)
    if M.rank([e]) == 0:
        raise LoopElement(f"{e!r} is a loop; series extension of a loop is not defined here")
    tmp = fresh_label(set(M.labels) | {e_new}, f"{e}''")
    M1 = add_coloop(M, e_new)
    M1 = place_in_span(M1, [e, e_new], tmp)
    out = relabel(delete(M1, [e]), {tmp: e})
    return reorder(out, M.labels + (e_new,))


def shift(M, a, b):
    """M_{a->b}: replace a by an element placed freely on the flat spanned by {a, b}."""
    a, b = str(a), str(b)
    for x in (a, b):
        if x not in M._index:
            raise UnknownLabel(f"{x!r} is not in the ground set")
    if a == b:
        raise SameElement("shift needs two distinct elements")
    c = fresh_label(M.labels, f"{a}>{b}")
    M1 = place_in_span(M, [a, b], c)
    out = relabel(delete(M1, [a]), {c: a})
    return reorder(out, M.labels)


def _spans(M, Z, e):
    """Boolean array: does each Z (mask array) span element position e."""
    t = M.table
    return t[Z | (1 << e)] == t[Z]


def is_freer_element(M, p, q):
    """Every subset of E - {p, q} spanning p also spans q."""
    p, q = str(p), str(q)
    for x in (p, q):
        if x not in M._index:
            raise UnknownLabel(f"{x!r} is not in the ground set")
    if p == q:
        raise SameElement("freeness compares two distinct elements")
    i, j = M._index[p], M._index[q]
    Z = _bits.all_masks(M.n)
    Z = Z[(Z & ((1 << i) | (1 << j))) == 0]
    return not np.any(_spans(M, Z, i) & ~_spans(M, Z, j))


def incomparable_pairs(M):
    """Unordered pairs with neither element freer than the other, in ground order."""
    out = []
    for j in range(M.n):
        for i in range(j):
            p, q = M.labels[i], M.labels[j]
            if not is_freer_element(M, p, q) and not is_freer_element(M, q, p):
                out.append((p, q))
    out.sort(key=lambda pq: (M._index[pq[0]], M._index[pq[1]]))
    return out


def is_freer_matroid(M2, M1):
    """r_{M2}(X) >= r_{M1}(X) for every X."""
    if set(M1.labels) != set(M2.labels):
        raise GroundSetMismatch("freeness of matroids needs a common ground set")
    other = reorder(M1, M2.labels)
    return bool(np.all(M2.table >= other.table))
