"""Representability over small finite fields by backtracking.

The first basis (in canonical order) is sent to the identity columns. Every
other column then has a forced support, its fundamental circuit, and its
first nonzero entry is fixed to 1. The remaining entries are enumerated
column by column, and every r-subset completed by a new column is checked
against the basis list as soon as it appears.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from ._bits import bits, subset_key
from .errors import BudgetExceeded, DimensionMismatch, UnsupportedField

SUPPORTED = (2, 3, 4, 5, 7, 8, 9)

# irreducible polynomials, low coefficient first, for the non-prime fields
_MODULI = {4: (2, (1, 1, 1)), 8: (2, (1, 1, 0, 1)), 9: (3, (1, 0, 1))}


class GF:
    """Arithmetic tables for GF(q). Elements are 0..q-1; for q = p^k the
    base-p digits of an element are its polynomial coefficients."""

    def __init__(self, q):
        if q not in SUPPORTED:
            raise UnsupportedField(f"GF({q}) is not supported; use one of {SUPPORTED}")
        self.q = q
        if q in _MODULI:
            p, poly = _MODULI[q]
            self.p = p
            self.add = [[self._padd(a, b) for b in range(q)] for a in range(q)]
            self.mul = [[self._pmul(a, b, poly) for b in range(q)] for a in range(q)]
        else:
            self.p = q
            self.add = [[(a + b) % q for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        self.neg = [self.add[a].index(0) for a in range(q)]
        self.inv = [None] + [self.mul[a].index(1) for a in range(1, q)]

    def _digits(self, a):
        k = len(_MODULI[self.q][1]) - 1
        return [(a // self.p ** i) % self.p for i in range(k)]

    def _undigits(self, d):
        return sum(c * self.p ** i for i, c in enumerate(d))

    def _padd(self, a, b):
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _pmul(self, a, b, poly):
        p = self.p
        da, db = self._digits(a), self._digits(b)
        k = len(da)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus
        for d in range(len(prod) - 1, k - 1, -1):
            c = prod[d]
            if c:
                for i, m in enumerate(poly):
                    prod[d - k + i] = (prod[d - k + i] - c * m) % p
        return self._undigits(prod[:k])

    def rank(self, cols):
        """Rank of the matrix whose columns are given (lists of equal length)."""
        if not cols:
            return 0
        rows = [list(r) for r in zip(*cols)]
        add, mul, neg, inv = self.add, self.mul, self.neg, self.inv
        rk = 0
        ncols = len(cols)
        for c in range(ncols):
            piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
            if piv is None:
                continue
            rows[rk], rows[piv] = rows[piv], rows[rk]
            s = inv[rows[rk][c]]
            rows[rk] = [mul[s][v] for v in rows[rk]]
            for i in range(len(rows)):
                if i != rk and rows[i][c]:
                    f = neg[rows[i][c]]
                    rows[i] = [add[x][mul[f][y]] for x, y in zip(rows[i], rows[rk])]
            rk += 1
            if rk == len(rows):
                break
        return rk


@lru_cache(maxsize=None)
def field(q):
    return GF(q)


@dataclass
class GFMatrix:
    q: int
    rows: int
    columns: dict

    def to_dict(self, order=None):
        order = order or list(self.columns)
        return {"q": self.q, "rows": self.rows,
                "columns": {e: list(self.columns[e]) for e in order}}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d["q"]), int(d["rows"]),
                   {str(k): tuple(int(x) for x in v) for k, v in d["columns"].items()})


def verify_representation(M, W):
    """Column r-subsets are independent over GF(q) exactly on the bases of M."""
    if set(W.columns) != set(M.labels):
        raise DimensionMismatch("columns must be indexed by the ground set")
    if W.rows != M.rk or any(len(c) != W.rows for c in W.columns.values()):
        raise DimensionMismatch(f"expected {M.rk} rows")
    F = field(W.q)
    cols = [W.columns[e] for e in M.labels]
    for combo in combinations(range(M.n), M.rk):
        m = sum(1 << i for i in combo)
        if (F.rank([cols[i] for i in combo]) == M.rk) != (m in M.bases):
            return False
    return True


DEFAULT_BUDGET = 2_000_000


def is_representable_gf(M, q, budget=DEFAULT_BUDGET):
    """A GFMatrix representing M over GF(q), or None after an exhaustive search.

    Raises BudgetExceeded when the node budget runs out first.
    """
    F = field(q)
    r, n = M.rk, M.n
    B0 = min(M.bases, key=subset_key)
    row_of = {i: k for k, i in enumerate(bits(B0))}
    cols = [None] * n
    for i, k in row_of.items():
        cols[i] = tuple(1 if j == k else 0 for j in range(r))
    rest = [i for i in range(n) if not B0 >> i & 1]
    supports = {}
    for e in rest:
        supports[e] = [row_of[i] for i in bits(B0) if ((B0 & ~(1 << i)) | (1 << e)) in M.bases]

    placed = list(bits(B0))
    nonzero = range(1, q)
    nodes = 0

    def consistent(e):
        # every r-subset of placed columns that contains e
        if r == 0:
            return True
        for combo in combinations(placed, r - 1):
            m = (1 << e) | sum(1 << i for i in combo)
            if (F.rank([cols[e]] + [cols[i] for i in combo]) == r) != (m in M.bases):
                return False
        return True

    def search(k):
        nonlocal nodes
        if k == len(rest):
            return True
        e = rest[k]
        supp = supports[e]
        for vals in product(nonzero, repeat=max(0, len(supp) - 1)):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"search stopped after {budget} nodes")
            col = [0] * r
            if supp:
                col[supp[0]] = 1
                for row, v in zip(supp[1:], vals):
                    col[row] = v
            cols[e] = tuple(col)
            if consistent(e):
                placed.append(e)
                if search(k + 1):
                    return True
                placed.pop()
        cols[e] = None
        return False

    if not search(0):
        return None
    return GFMatrix(q, r, {M.labels[i]: cols[i] for i in range(n)})


def delete_columns(W, D):
    D = set(D)
    return GFMatrix(W.q, W.rows, {e: c for e, c in W.columns.items() if e not in D})


def contract_column(W, e):
    """Representation of M / e: pivot on e's column, drop its row and the column."""
    F = field(W.q)
    col = W.columns[e]
    piv = next((i for i, v in enumerate(col) if v), None)
    rest = {x: c for x, c in W.columns.items() if x != e}
    if piv is None:
        return GFMatrix(W.q, W.rows, rest)
    s = F.inv[col[piv]]
    out = {}
    for x, c in rest.items():
        f = F.mul[s][c[piv]]
        # c - f * col, then drop the pivot row
        new = [F.add[c[i]][F.neg[F.mul[f][col[i]]]] for i in range(W.rows)]
        out[x] = tuple(v for i, v in enumerate(new) if i != piv)
    return GFMatrix(W.q, W.rows - 1, out)
