"""Brute-force reference computations, written straight from the definitions.

Nothing here touches the rank tables in matroidkit; everything is computed
from the bases list with plain Python sets.
"""

from itertools import combinations


def subsets(E):
    E = list(E)
    for k in range(len(E) + 1):
        for c in combinations(E, k):
            yield frozenset(c)


def bases_of(M):
    return [frozenset(B) for B in M.sorted_bases()]


def brute_rank(bases, X):
    X = frozenset(X)
    return max(len(B & X) for B in bases)


def brute_rank_fn(M):
    bases = bases_of(M)
    return {X: brute_rank(bases, X) for X in subsets(M.labels)}


def exchange_holds(bases):
    bases = [frozenset(B) for B in bases]
    bset = set(bases)
    for B1 in bases:
        for B2 in bases:
            for e in B1 - B2:
                if not any((B1 - {e}) | {f} in bset for f in B2 - B1):
                    return False
    return True


def rank_axioms_hold(E, r):
    """R1-R3 over every subset pair."""
    subs = list(subsets(E))
    for X in subs:
        if not 0 <= r[X] <= len(X):
            return False
    for X in subs:
        for Y in subs:
            if X <= Y and r[X] > r[Y]:
                return False
            if r[X | Y] + r[X & Y] > r[X] + r[Y]:
                return False
    return True


def brute_closure(r, E, X):
    X = frozenset(X)
    return frozenset(e for e in E if r[X | {e}] == r[X])


def brute_circuits(r, E):
    dep = [X for X in subsets(E) if r[X] < len(X)]
    dset = set(dep)
    return {X for X in dep if not any(X - {e} in dset for e in X)}


def brute_flats(r, E):
    return {X for X in subsets(E) if brute_closure(r, E, X) == X}


def brute_series_coextension(M, e, e_new):
    """Bases of the series coextension straight from its circuits.

    Circuits of the coextension: C + e_new for every circuit C through e,
    every circuit avoiding e unchanged. Bases are the (r+1)-sets containing
    none of those circuits.
    """
    r = brute_rank_fn(M)
    E = list(M.labels)
    circ = brute_circuits(r, E)
    new_circ = [C | {e_new} if e in C else C for C in circ]
    E2 = E + [e_new]
    out = []
    for B in combinations(E2, M.rk + 1):
        B = frozenset(B)
        if not any(C <= B for C in new_circ):
            out.append(B)
    return E2, out


def brute_gf_representable(M, q):
    """Exhaust every r x n matrix over the prime field GF(q)."""
    from itertools import product

    r, n = M.rk, M.n
    bases = {frozenset(B) for B in bases_of(M)}
    labels = list(M.labels)

    def rank_mod(cols):
        rows = [list(x) for x in zip(*cols)] if cols else []
        rk = 0
        for c in range(len(cols)):
            piv = next((i for i in range(rk, len(rows)) if rows[i][c] % q), None)
            if piv is None:
                continue
            rows[rk], rows[piv] = rows[piv], rows[rk]
            inv = pow(rows[rk][c], q - 2, q)
            rows[rk] = [(v * inv) % q for v in rows[rk]]
            for i in range(len(rows)):
                if i != rk and rows[i][c] % q:
                    f = rows[i][c]
                    rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[rk])]
            rk += 1
        return rk

    for entries in product(range(q), repeat=r * n):
        cols = [entries[j * r:(j + 1) * r] for j in range(n)]
        if all((rank_mod([cols[labels.index(x)] for x in S]) == r) == (frozenset(S) in bases)
               for S in combinations(labels, r)):
            return True
    return False
