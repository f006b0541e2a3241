"""Sound but incomplete gammoid certification.

A matroid that can be taken apart, one element at a time, by removing a
coloop or an element placed freely on the rest, is rebuilt from U_{0,0} by
adding coloops and principal extensions, so it is a gammoid. Failing to take
it apart proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import add_coloop, delete, empty, is_coloop
from .extend import incomparable_pairs, is_freer_element, principal_extension


@dataclass(frozen=True)
class Step:
    kind: str  # "coloop" or "free"
    label: str
    flat: tuple = ()

    def to_dict(self):
        d = {"kind": self.kind, "label": self.label}
        if self.kind == "free":
            d["flat"] = list(self.flat)
        return d


@dataclass
class DeconstructionCertificate:
    steps: list

    def replay(self):
        """Rebuild the certified matroid from U_{0,0}."""
        M = empty()
        for st in reversed(self.steps):
            if st.kind == "coloop":
                M = add_coloop(M, st.label)
            else:
                M = principal_extension(M, st.flat, st.label)
        return M

    def to_dict(self):
        return {"steps": [s.to_dict() for s in self.steps]}

    @classmethod
    def from_dict(cls, d):
        return cls([Step(s["kind"], s["label"], tuple(s.get("flat", ()))) for s in d["steps"]])


def _is_free(M, e):
    """M is the free extension of M \\ e by e."""
    i = M._index[e]
    bit = 1 << i
    t = M.table
    rest = np.arange(1 << M.n, dtype=np.int64)
    rest = rest[(rest & bit) == 0]
    r_rest = t[M.full & ~bit]
    # e spanned by X exactly when X spans everything else
    return bool(np.array_equal(t[rest | bit] == t[rest], t[rest] == r_rest))


def _removals(M):
    """Admissible removal steps, in ground-set order."""
    out = []
    for e in M.labels:
        if is_coloop(M, e):
            out.append(Step("coloop", e))
        elif _is_free(M, e) and all(is_freer_element(M, e, f) for f in M.labels if f != e):
            rest = tuple(x for x in M.labels if x != e)
            out.append(Step("free", e, rest))
    return out


EXHAUSTIVE_LIMIT = 10


def free_deconstruction(M, exhaustive=False):
    """Certificate of U_{0,0}-constructibility via coloop/free removals, or None.

    The default is greedy (first admissible element in ground order). With
    exhaustive=True every removal order is tried, for ground sets up to
    EXHAUSTIVE_LIMIT elements.
    """
    if exhaustive:
        if M.n > EXHAUSTIVE_LIMIT:
            raise ValueError(f"exhaustive mode is limited to {EXHAUSTIVE_LIMIT} elements")
        dead = set()

        def go(N):
            if N.n == 0:
                return []
            key = frozenset(N.labels)
            if key in dead:
                return None
            for st in _removals(N):
                tail = go(delete(N, [st.label]))
                if tail is not None:
                    return [st] + tail
            dead.add(key)
            return None

        steps = go(M)
        return None if steps is None else DeconstructionCertificate(steps)

    steps = []
    N = M
    while N.n:
        options = _removals(N)
        if not options:
            return None
        st = options[0]
        steps.append(st)
        N = delete(N, [st.label])
    return DeconstructionCertificate(steps)


def has_incomparable_pair(M):
    return bool(incomparable_pairs(M))
