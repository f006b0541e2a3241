"""Matroids on labeled ground sets, stored by their bases.

The bases list is the single source of truth. A dense rank table over all
subsets is derived from it on first use and drives every other query.
Operations compute the rank table of their result and read the bases back
off it.
"""

from __future__ import annotations

import os
from functools import cached_property
from itertools import combinations

import numpy as np

from . import _bits
from ._bits import bits, mask_of, subset_key
from .errors import (
    AxiomViolation,
    DuplicateLabel,
    LabelCollision,
    NotABijection,
    SizeCapExceeded,
    UnknownLabel,
)

HARD_SIZE_CAP = 24


def size_cap():
    """Soft ground-set cap: MATROID_SIZE_CAP if set, never above the hard cap."""
    raw = os.environ.get("MATROID_SIZE_CAP")
    if not raw:
        return HARD_SIZE_CAP
    return max(0, min(int(raw), HARD_SIZE_CAP))


def _check_size(n):
    cap = size_cap()
    if n > cap:
        raise SizeCapExceeded(f"ground set has {n} elements; cap is {cap}")


class Matroid:
    """An immutable matroid: ordered ground set plus a set of basis masks.

    Equality is labeled equality: same ground set (as a set) and the same
    bases, regardless of the order in which labels are listed.
    """

    def __init__(self, labels, bases, name=None, _table=None):
        self.labels = tuple(labels)
        self.bases = frozenset(int(b) for b in bases)
        self.name = name
        self._index = {e: i for i, e in enumerate(self.labels)}
        if _table is not None:
            self.__dict__["table"] = _table

    # -- basic shape -------------------------------------------------------
    @property
    def n(self):
        return len(self.labels)

    @property
    def full(self):
        return (1 << self.n) - 1

    @cached_property
    def rk(self):
        return len(bits(next(iter(self.bases))))

    @cached_property
    def table(self):
        t = _bits.rank_table(self.n, self.bases)
        t.setflags(write=False)
        return t

    def __len__(self):
        return self.n

    def __repr__(self):
        tag = f"{self.name}: " if self.name else ""
        return f"<Matroid {tag}rank {self.rk} on {self.n} elements, {len(self.bases)} bases>"

    # -- labels <-> masks --------------------------------------------------
    def mask(self, X):
        m = 0
        for e in X:
            try:
                m |= 1 << self._index[e]
            except KeyError:
                raise UnknownLabel(f"{e!r} is not in the ground set") from None
        return m

    def subset(self, mask):
        return frozenset(self.labels[i] for i in bits(mask))

    def ordered(self, X):
        """X as a list in ground-set order (the canonical external form)."""
        return [self.labels[i] for i in bits(self.mask(X))]

    def r(self, mask):
        return int(self.table[mask])

    def rank(self, X):
        return self.r(self.mask(X))

    @property
    def ground_set(self):
        return frozenset(self.labels)

    def sorted_bases(self):
        return [[self.labels[i] for i in bits(b)] for b in sorted(self.bases, key=subset_key)]

    # -- equality ----------------------------------------------------------
    def permuted_bases(self, labels):
        """Bases re-encoded against another ordering of the same ground set."""
        pos = [labels.index(e) for e in self.labels] if labels != self.labels else None
        if pos is None:
            return self.bases
        return frozenset(mask_of(pos[i] for i in bits(b)) for b in self.bases)

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        if self.labels == other.labels:
            return self.bases == other.bases
        if self.n != other.n or set(self.labels) != set(other.labels):
            return False
        if len(self.bases) != len(other.bases):
            return False
        positions = [other._index[e] for e in self.labels]
        return bool(np.array_equal(self.table, other.table[_bits.scatter(positions)]))

    def __hash__(self):
        return hash((frozenset(self.labels), len(self.bases), self.rk))


# -- construction -----------------------------------------------------------
def _check_labels(labels):
    labels = [str(e) for e in labels]
    seen = set()
    for e in labels:
        if not e:
            raise DuplicateLabel("labels must be nonempty strings")
        if e in seen:
            raise DuplicateLabel(f"label {e!r} appears twice")
        seen.add(e)
    return labels


def _exchange_witness(bases):
    for b1 in sorted(bases, key=subset_key):
        for b2 in sorted(bases, key=subset_key):
            for e in bits(b1 & ~b2):
                if not any(((b1 & ~(1 << e)) | (1 << f)) in bases for f in bits(b2 & ~b1)):
                    return b1, b2, e
    return None


def from_bases(labels, bases, name=None):
    """Validated constructor. Raises AxiomViolation with a witness pair."""
    labels = _check_labels(labels)
    _check_size(len(labels))
    index = {e: i for i, e in enumerate(labels)}
    masks = set()
    for B in bases:
        m = 0
        for e in B:
            if e not in index:
                raise UnknownLabel(f"basis element {e!r} is not in the ground set")
            m |= 1 << index[e]
        masks.add(m)
    if not masks:
        raise AxiomViolation("a matroid needs at least one basis")
    sizes = {bin(m).count("1") for m in masks}
    if len(sizes) > 1:
        by_size = sorted(masks, key=subset_key)
        b1, b2 = by_size[0], by_size[-1]
        raise AxiomViolation(
            "bases have different sizes",
            ([labels[i] for i in bits(b1)], [labels[i] for i in bits(b2)]),
        )
    n = len(labels)
    table = _bits.rank_table(n, masks)
    ok = _bits.is_submodular(n, table) and set(_bits.bases_from_table(n, table).tolist()) == masks
    if not ok:
        b1, b2, e = _exchange_witness(masks)
        raise AxiomViolation(
            f"basis exchange fails for element {labels[e]!r}",
            ([labels[i] for i in bits(b1)], [labels[i] for i in bits(b2)]),
        )
    table.setflags(write=False)
    return Matroid(labels, masks, name=name, _table=table)


def from_table(labels, table, name=None):
    """Matroid whose rank function is table. The caller guarantees validity."""
    labels = tuple(labels)
    _check_size(len(labels))
    table = np.ascontiguousarray(table, dtype=np.int8)
    table.setflags(write=False)
    bases = _bits.bases_from_table(len(labels), table).tolist()
    return Matroid(labels, bases, name=name, _table=table)


def checked_from_table(labels, table, name=None):
    """Like from_table but raises AxiomViolation unless table is a matroid rank function."""
    n = len(labels)
    table = np.ascontiguousarray(table, dtype=np.int8)
    if table[0] != 0:
        raise AxiomViolation("rank of the empty set is not zero")
    bases = _bits.bases_from_table(n, table)
    if len(bases) == 0:
        raise AxiomViolation("rank function has no bases")
    rebuilt = _bits.rank_table(n, bases.tolist())
    if not np.array_equal(rebuilt, table):
        bad = int(np.nonzero(rebuilt != table)[0][0])
        raise AxiomViolation("rank function is not induced by its bases", [labels[i] for i in bits(bad)])
    if not _bits.is_submodular(n, table):
        raise AxiomViolation("rank function is not submodular")
    return from_table(labels, table, name=name)


def uniform(r, n, labels=None, name=None):
    if labels is None:
        labels = [str(i) for i in range(1, n + 1)]
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got r={r}, n={n}")
    table = np.minimum(_bits.popcounts(n), r)
    return from_table(labels, table, name=name or f"U{r},{n}")


def empty():
    return Matroid((), [0], name="U0,0")


def fresh_label(taken, stem):
    """stem itself if unused, else stem~1, stem~2, ..."""
    taken = set(taken)
    if stem not in taken:
        return stem
    k = 1
    while f"{stem}~{k}" in taken:
        k += 1
    return f"{stem}~{k}"


# -- queries ------------------------------------------------------------------
def rank(M, X):
    return M.rank(X)


def closure(M, X):
    m = M.mask(X)
    rx = M.r(m)
    cl = m
    for i in range(M.n):
        if not m >> i & 1 and M.r(m | 1 << i) == rx:
            cl |= 1 << i
    return M.subset(cl)


def is_flat(M, X):
    return closure(M, X) == frozenset(X)


def _collect(M, indicator):
    masks = np.nonzero(indicator)[0].tolist()
    return [M.subset(m) for m in sorted(masks, key=subset_key)]


def circuits(M):
    """All circuits, in canonical subset order."""
    return _collect(M, _bits.circuit_indicator(M.n, M.table))


def flats(M):
    return _collect(M, _bits.flat_indicator(M.n, M.table))


def cyclic_flats(M):
    ind = _bits.flat_indicator(M.n, M.table) & _bits.cyclic_indicator(M.n, M.table)
    return _collect(M, ind)


def is_loop(M, e):
    return M.rank([e]) == 0


def is_coloop(M, e):
    m = M.mask([e])
    return M.r(M.full & ~m) < M.rk


def independent(M, X):
    return M.rank(X) == len(set(X))


# -- operations ---------------------------------------------------------------
def dual(M):
    t = M.table
    pc = _bits.popcounts(M.n)
    dt = pc + t[::-1] - M.rk
    name = f"{M.name}*" if M.name else None
    return from_table(M.labels, dt, name=name)


def _restrict_table(M, keep_mask, contract_mask=0):
    positions = bits(keep_mask)
    idx = _bits.scatter(positions) | contract_mask
    return [M.labels[i] for i in positions], M.table[idx] - M.r(contract_mask)


def delete(M, D):
    d = M.mask(D)
    labels, t = _restrict_table(M, M.full & ~d)
    return from_table(labels, t)


def contract(M, C):
    c = M.mask(C)
    labels, t = _restrict_table(M, M.full & ~c, c)
    return from_table(labels, t)


def restrict(M, X):
    labels, t = _restrict_table(M, M.mask(X))
    return from_table(labels, t)


def minor(M, C=(), D=()):
    """M / C \\ D."""
    c, d = M.mask(C), M.mask(D)
    if c & d:
        raise ValueError("contraction and deletion sets overlap")
    labels, t = _restrict_table(M, M.full & ~(c | d), c)
    return from_table(labels, t)


def direct_sum(M1, M2):
    clash = set(M1.labels) & set(M2.labels)
    if clash:
        raise LabelCollision(f"ground sets share {sorted(clash)}")
    t = (M2.table[:, None].astype(np.int16) + M1.table[None, :]).ravel()
    return from_table(M1.labels + M2.labels, t)


def add_coloop(M, e):
    e = str(e)
    if e in M._index:
        raise LabelCollision(f"{e!r} is already in the ground set")
    return direct_sum(M, Matroid((e,), [1]))


def relabel(M, mapping):
    """Substitute labels; mapping may omit labels that stay fixed."""
    for k in mapping:
        if k not in M._index:
            raise UnknownLabel(f"{k!r} is not in the ground set")
    new = [str(mapping.get(e, e)) for e in M.labels]
    if len(set(new)) != len(new):
        raise NotABijection("relabeling sends two elements to the same label")
    return Matroid(new, M.bases, name=M.name, _table=M.table)


def reorder(M, order):
    """Same matroid with its ground set listed in the given order."""
    order = tuple(order)
    if order == M.labels:
        return M
    if sorted(order) != sorted(M.labels):
        raise NotABijection("order must list every ground-set element once")
    positions = [M._index[e] for e in order]
    return from_table(order, M.table[_bits.scatter(positions)], name=M.name)


def equals_labeled(M1, M2):
    return M1 == M2


# -- isomorphism --------------------------------------------------------------
def _element_profiles(M):
    """Per-element invariants: basis degree and circuit-size histogram."""
    circ = np.nonzero(_bits.circuit_indicator(M.n, M.table))[0].tolist()
    prof = []
    for i in range(M.n):
        bit = 1 << i
        deg = sum(1 for b in M.bases if b & bit)
        sizes = sorted(bin(c).count("1") for c in circ if c & bit)
        prof.append((deg, tuple(sizes)))
    return prof


def _global_invariants(M):
    circ = np.nonzero(_bits.circuit_indicator(M.n, M.table))[0]
    sizes = sorted(_bits.popcounts(M.n)[circ].tolist())
    return (M.n, M.rk, len(M.bases), tuple(sizes))


def is_isomorphic(M1, M2):
    """A label bijection E(M1) -> E(M2) carrying bases to bases, or None."""
    if (M1.n, M1.rk, len(M1.bases)) != (M2.n, M2.rk, len(M2.bases)):
        return None
    if _global_invariants(M1) != _global_invariants(M2):
        return None
    p1, p2 = _element_profiles(M1), _element_profiles(M2)
    if sorted(p1) != sorted(p2):
        return None
    n = M1.n
    # most constrained elements first
    order = sorted(range(n), key=lambda i: (sum(1 for j in range(n) if p1[j] == p1[i]), i))
    t1, t2 = M1.table, M2.table
    images = [0] * n
    used = [False] * n

    def extend(k, s1, s2):
        if k == n:
            return True
        i = order[k]
        for j in range(n):
            if used[j] or p2[j] != p1[i]:
                continue
            n1 = s1 | (1 << i)
            n2 = s2 | (1 << j)
            if not np.array_equal(t1[n1], t2[n2]):
                continue
            used[j] = True
            images[i] = j
            if extend(k + 1, np.concatenate([s1, n1]), np.concatenate([s2, n2])):
                return True
            used[j] = False
        return False

    start = np.zeros(1, dtype=np.int64)
    if not extend(0, start, start):
        return None
    return {M1.labels[i]: M2.labels[images[i]] for i in range(n)}


# -- minors -------------------------------------------------------------------
def has_minor_labeled(M, C, D, N):
    return minor(M, C, D) == N


MINOR_SEARCH_BUDGET = 2_000_000_000


def has_minor_iso(M, N, budget=MINOR_SEARCH_BUDGET):
    """Search for (C, D, iso) with M / C \\ D isomorphic to N.

    C ranges over independent sets of size r(M) - r(N); for each, every
    |E(N)|-subset of the remainder is screened by spanning, basis count and
    basis degrees before a full isomorphism test. The iso maps minor labels
    to labels of N.
    """
    n, m = M.n, N.n
    k = M.rk - N.rk
    if m > n or k < 0 or n - m < k:
        return None
    rest = n - k
    kept = _bits.k_subsets(rest, m)
    rn = N.rk
    nbases = len(N.bases)
    sub_r = [c for c in combinations(range(m), rn)]
    n_candidates = len(_bits.k_subsets(n, k)) * len(kept) * max(1, len(sub_r))
    if n_candidates > budget:
        raise SizeCapExceeded(f"minor search needs ~{n_candidates} steps, budget {budget}")
    # rn-subsets of every kept set, as masks over the remainder
    kept_pos = np.array([bits(int(x)) for x in kept], dtype=np.int64).reshape(len(kept), m)
    if rn:
        sub_masks = np.zeros((len(kept), len(sub_r)), dtype=np.int64)
        member = np.zeros((len(sub_r), m), dtype=np.int64)
        for j, c in enumerate(sub_r):
            for t in c:
                sub_masks[:, j] |= np.int64(1) << kept_pos[:, t]
                member[j, t] = 1
    want_deg = sorted(sum(1 for b in N.bases if b >> i & 1) for i in range(m))
    for cpos in combinations(range(n), k):
        cmask = mask_of(cpos)
        if M.r(cmask) != k:
            continue
        positions = [i for i in range(n) if not cmask >> i & 1]
        labels, t = _restrict_table(M, M.full & ~cmask, cmask)
        ok = t[kept] == rn
        if rn:
            isb = t[sub_masks] == rn
            ok &= isb.sum(axis=1) == nbases
            degs = np.sort(isb.astype(np.int64) @ member, axis=1)
            ok &= np.all(degs == want_deg, axis=1)
        hits = np.nonzero(ok)[0]
        if len(hits) == 0:
            continue
        contracted = from_table(labels, t)
        for idx in hits:
            kmask = int(kept[idx])
            cand = from_table(*_restrict_table(contracted, kmask))
            iso = is_isomorphic(cand, N)
            if iso is not None:
                C = M.subset(cmask)
                D = frozenset(M.labels[positions[i]] for i in range(rest) if not kmask >> i & 1)
                return C, D, iso
    return None
