"""Local connectivity, 3-separations and pinned extensions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _bits
from ._bits import subset_key
from .core import checked_from_table, delete
from .errors import (
    LabelCollision,
    NotA3Separation,
    NotAPartition,
    PinSpecViolation,
    PreconditionViolation,
)


@dataclass
class VerificationReport:
    lemma: str
    passed: bool
    counterexample: object = None
    stats: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "lemma": self.lemma,
            "pass": self.passed,
            "counterexample": self.counterexample,
            "stats": self.stats,
        }


def local_connectivity(M, S, T):
    s, t = M.mask(S), M.mask(T)
    return M.r(s) + M.r(t) - M.r(s | t)


def _lc(t, a, b):
    # vectorized local connectivity over mask arrays
    return t[a].astype(np.int16) + t[b] - t[a | b]


def _check_partition(M, S1, S2):
    s1, s2 = M.mask(S1), M.mask(S2)
    if s1 & s2 or (s1 | s2) != M.full:
        raise NotAPartition("the two sides must partition the ground set")
    return s1, s2


def is_exact_3_separation(M, S1, S2):
    """Both sides nonempty and local connectivity exactly 2."""
    s1, s2 = _check_partition(M, S1, S2)
    return bool(s1) and bool(s2) and M.r(s1) + M.r(s2) - M.rk == 2


@dataclass(frozen=True)
class PinSpec:
    S1: frozenset
    S2: frozenset
    Y1: frozenset
    Y2: frozenset
    e: str

    @classmethod
    def make(cls, S1, S2, Y1, Y2, e):
        return cls(frozenset(S1), frozenset(S2), frozenset(Y1), frozenset(Y2), str(e))

    def masks(self, M):
        return tuple(M.mask(X) for X in (self.S1, self.S2, self.Y1, self.Y2))

    def check(self, M):
        """Raise unless the spec is valid for the base matroid M."""
        s1, s2, y1, y2 = self.masks(M)
        if s1 & s2 or (s1 | s2) != M.full:
            raise NotAPartition("S1 and S2 must partition the ground set")
        if y1 & ~s1 or y2 & ~s2:
            raise PinSpecViolation("Y1 must lie in S1 and Y2 in S2")
        if not is_exact_3_separation(M, self.S1, self.S2):
            raise NotA3Separation("(S1, S2) is not an exact 3-separation")
        u1 = M.r(y1) + M.r(s2) - M.r(y1 | s2)
        u2 = M.r(s1) + M.r(y2) - M.r(s1 | y2)
        if u1 != 1 or u2 != 1:
            raise PinSpecViolation(f"need lc(Y1,S2) = lc(S1,Y2) = 1, got {u1} and {u2}")

    def to_dict(self, M):
        return {k: M.ordered(getattr(self, k)) for k in ("S1", "S2", "Y1", "Y2")} | {"e": self.e}


def spanning_rule(M, spec, X=None):
    """Whether the pinned element is spanned by each X (all subsets by default).

    The decision is made on the flat F = cl(X) with F1 = F & S1, F2 = F & S2:
    spanned iff lc(F1,Y2) = 1 or lc(Y1,F2) = 1, or else
    lc(F1,S2) = lc(S1,F2) = 1 and lc(F1,F2) = 0.
    """
    s1, s2, y1, y2 = spec.masks(M)
    t = M.table
    if X is None:
        X = _bits.all_masks(M.n)
    F = _bits.closure_table(M.n, t)[X]
    f1, f2 = F & s1, F & s2
    cond_i = (_lc(t, f1, y2) == 1) | (_lc(t, y1, f2) == 1)
    cond_ii = (_lc(t, f1, s2) == 1) & (_lc(t, s1, f2) == 1) & (_lc(t, f1, f2) == 0)
    return cond_i | cond_ii


def pinned_extension(M, spec):
    """Extend M by spec.e, spanned exactly where the flat rule above says so."""
    if spec.e in M._index:
        raise LabelCollision(f"{spec.e!r} is already in the ground set")
    spec.check(M)
    spans = spanning_rule(M, spec)
    t = M.table
    upper = t + (~spans).astype(np.int8)
    return checked_from_table(M.labels + (spec.e,), np.concatenate([t, upper]))


def verify_unique_characterization(M_ext, e, spec):
    """Check, flat by flat of M_ext \\ e, that e is spanned exactly per the pin rule."""
    if e not in M_ext._index:
        raise PreconditionViolation(f"{e!r} is not in the extended matroid")
    if M_ext.rank([e]) == 0:
        raise PreconditionViolation(f"{e!r} is a loop")
    base = delete(M_ext, [e])
    try:
        spec.check(base)
    except (NotAPartition, NotA3Separation, PinSpecViolation) as err:
        raise PreconditionViolation(str(err)) from err
    for Y in (spec.Y1, spec.Y2):
        if M_ext.rank(set(Y) | {e}) != M_ext.rank(Y):
            raise PreconditionViolation(f"{e!r} is not spanned by {M_ext.ordered(Y)}")
    flat_masks = np.nonzero(_bits.flat_indicator(base.n, base.table))[0]
    flat_masks = np.array(sorted(flat_masks.tolist(), key=subset_key), dtype=np.int64)
    predicted = spanning_rule(base, spec, flat_masks)
    # embed base masks into M_ext
    pos = np.array([M_ext._index[x] for x in base.labels], dtype=np.int64)
    emb = np.zeros(len(flat_masks), dtype=np.int64)
    for i, p in enumerate(pos):
        emb |= ((flat_masks >> i) & 1) << p
    ebit = 1 << M_ext._index[e]
    actual = M_ext.table[emb | ebit] == M_ext.table[emb]
    bad = np.nonzero(predicted != actual)[0]
    stats = {"flats_scanned": int(len(flat_masks)), "flats_spanning": int(actual.sum())}
    if len(bad):
        F = int(flat_masks[bad[0]])
        cex = {"flat": [base.labels[i] for i in _bits.bits(F)],
               "spans": bool(actual[bad[0]]), "predicted": bool(predicted[bad[0]])}
        return VerificationReport("unique", False, cex, stats)
    return VerificationReport("unique", True, None, stats)
