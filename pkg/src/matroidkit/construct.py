"""The excluded-minor construction M(L, p, q; N, A, B) and its verifiers.

build() glues L and N together through two new elements a and b:
a is placed freely on the flat of E(N) + p, b on the flat of E(N) + q,
each x in A is swapped for a copy lifted towards a, each y in B for a copy
lifted towards b, and finally p and q are deleted.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _bits
from ._bits import bits, subset_key
from .connect import (
    PinSpec,
    VerificationReport,
    is_exact_3_separation,
    local_connectivity,
    pinned_extension,
    verify_unique_characterization,
)
from .core import (
    size_cap,
    contract,
    delete,
    direct_sum,
    fresh_label,
    independent,
    dual,
    relabel,
    reorder,
)
from .extend import (
    free_extension,
    incomparable_pairs,
    is_freer_element,
    is_freer_matroid,
    place_in_span,
    series_extension,
    shift,
)
from .errors import (
    GroundSetMismatch,
    InputInvariantViolation,
    LabelCollision,
    NoIncomparableWitness,
    PreconditionViolation,
)


@dataclass(frozen=True)
class ConstructionInput:
    L: object
    p: str
    q: str
    N: object
    A: tuple
    B: tuple

    def swapped(self):
        return ConstructionInput(self.L, self.q, self.p, self.N, self.B, self.A)


@dataclass
class ConstructionResult:
    input: ConstructionInput
    M1: object
    M2: object
    M: object
    a: str = "a"
    b: str = "b"
    label_map: dict = field(default_factory=dict)

    @property
    def side_L(self):
        """E(L) - {p, q}."""
        i = self.input
        return [e for e in i.L.labels if e not in (i.p, i.q)]

    @property
    def side_N(self):
        """E(N) + {a, b}."""
        return list(self.input.N.labels) + [self.a, self.b]


def two_bases_normalize(N0):
    """Grow N0 into a matroid whose ground set splits into two disjoint bases.

    Adds 2 r(N0) free elements a0.., b0.. one at a time, then series-extends
    each original e into the pair e#1, e#2. Returns (N', A1, B1).
    """
    r = N0.rk
    taken = set(N0.labels)
    A0, B0 = [], []
    for stem, out in (("a", A0), ("b", B0)):
        for i in range(r):
            lab = fresh_label(taken, f"{stem}{i}")
            taken.add(lab)
            out.append(lab)
    N = N0
    for lab in A0 + B0:
        N = free_extension(N, lab)
    ones, twos = [], []
    for e in N0.labels:
        e1 = fresh_label(set(N.labels) | {f"{e}#2"}, f"{e}#1")
        e2 = fresh_label(set(N.labels) | {e1}, f"{e}#2")
        N = series_extension(N, e, e2)
        N = relabel(N, {e: e1})
        ones.append(e1)
        twos.append(e2)
    order = A0 + B0 + [x for pair in zip(ones, twos) for x in pair]
    N = reorder(N, order)
    return N, tuple(A0 + ones), tuple(B0 + twos)


def check_input(inp):
    L, N = inp.L, inp.N
    if inp.p == inp.q:
        raise InputInvariantViolation("p and q must be distinct")
    for x in (inp.p, inp.q):
        if x not in L._index:
            raise InputInvariantViolation(f"{x!r} is not an element of L")
    if set(L.labels) & set(N.labels):
        raise InputInvariantViolation("L and N must have disjoint ground sets")
    A, B = set(inp.A), set(inp.B)
    if A & B or (A | B) != set(N.labels):
        raise InputInvariantViolation("A and B must partition E(N)")
    for X in (inp.A, inp.B):
        if len(X) != N.rk or not independent(N, X):
            raise InputInvariantViolation(f"{sorted(X)} is not a basis of N")


def build(inp, a="a", b="b", check=True):
    """Run the construction; returns every intermediate matroid."""
    if check:
        check_input(inp)
    L, N, p, q = inp.L, inp.N, inp.p, inp.q
    taken = set(L.labels) | set(N.labels)
    for x in (a, b):
        if x in taken:
            raise LabelCollision(f"{x!r} is already used by L or N")
    if a == b:
        raise LabelCollision("a and b need distinct labels")
    if check and not independent(L, [p, q]):
        warnings.warn("{p, q} is dependent in L; N is not guaranteed to be a minor", stacklevel=2)
    A = [x for x in N.labels if x in set(inp.A)]
    B = [y for y in N.labels if y in set(inp.B)]
    base = direct_sum(L, N)
    base = place_in_span(base, list(N.labels) + [p], a)
    base = place_in_span(base, list(N.labels) + [q], b)
    taken |= {a, b}
    label_map = {}
    for side, anchor in ((A, a), (B, b)):
        for x in side:
            lifted = fresh_label(taken, f"{x}@{anchor}")
            taken.add(lifted)
            label_map[x] = lifted
    # M1 keeps every original next to its lifted copy; it is only
    # materialized when it fits under the size cap.
    M1 = None
    if base.n + len(label_map) <= size_cap():
        M1 = base
        for x, lifted in label_map.items():
            M1 = place_in_span(M1, [x, a if x in A else b], lifted)
    # Deleting x right after placing its copy commutes with the later
    # placements, which only depend on which sets span {y, b}.
    M2 = base
    for x, lifted in label_map.items():
        M2 = place_in_span(M2, [x, a if x in A else b], lifted)
        M2 = delete(M2, [x])
    M2 = relabel(M2, {v: k for k, v in label_map.items()})
    M2 = reorder(M2, list(L.labels) + list(N.labels) + [a, b])
    M = delete(M2, [p, q])
    return ConstructionResult(inp, M1, M2, M, a, b, label_map)


def swapped_build(inp, a="a", b="b", check=True):
    """build(L, q, p; N, B, A) with a and b keeping their geometric roles."""
    return build(inp.swapped(), a=b, b=a, check=check)


def _subsets(M, X):
    return [frozenset(c) for k in range(len(X) + 1) for c in combinations(X, k)]


def _gate_incomparable(L, p, q):
    if is_freer_element(L, p, q) or is_freer_element(L, q, p):
        raise PreconditionViolation(f"{{{p}, {q}}} is not an incomparable pair of L")


# -- verifiers ----------------------------------------------------------------
def verify_separation(res):
    inp = res.input
    L, p, q = inp.L, inp.p, inp.q
    if not independent(L, [p, q]):
        raise PreconditionViolation("{p, q} is dependent in L")
    if not independent(dual(L), [p, q]):
        raise PreconditionViolation("{p, q} is codependent in L")
    M = res.M
    S1, S2 = res.side_L, res.side_N
    lc = local_connectivity(M, S1, S2)
    ua = local_connectivity(M, list(inp.A) + [res.a], S1)
    ub = local_connectivity(M, list(inp.B) + [res.b], S1)
    sep = is_exact_3_separation(M, S1, S2)
    stats = {"lc_sides": lc, "lc_A_a": ua, "lc_B_b": ub}
    ok = sep and ua == 1 and ub == 1
    cex = None if ok else {"S1": S1, "S2": S2} | stats
    return VerificationReport("separation", ok, cex, stats)


def verify_pnotq(res):
    """Within M2, A + a is the only X in A u B u {a, b} spanning p but not q."""
    inp, M2 = res.input, res.M2
    side = [e for e in M2.labels if e in set(res.side_N)]
    ip, iq = M2._index[inp.p], M2._index[inp.q]
    target = M2.mask(list(inp.A) + [res.a])
    found = []
    scanned = 0
    for X in sorted((M2.mask(S) for S in _subsets(M2, side)), key=subset_key):
        scanned += 1
        rx = M2.r(X)
        if M2.r(X | 1 << ip) == rx and M2.r(X | 1 << iq) > rx:
            found.append(X)
    stats = {"subsets_scanned": scanned, "sets_spanning_p_not_q": len(found)}
    if found == [target]:
        return VerificationReport("pnotq", True, None, stats)
    bad = next((X for X in found if X != target), target)
    return VerificationReport("pnotq", False, M2.ordered(M2.subset(bad)), stats)


def verify_difference(res, shifted):
    """Ranks of M and the shifted M only disagree on sets meeting the N side in A + a."""
    M, Ms = res.M, shifted.M
    if set(M.labels) != set(Ms.labels):
        raise GroundSetMismatch("the two constructions live on different ground sets")
    inp = res.input
    _gate_incomparable(inp.L, inp.p, inp.q)
    if shifted.input.L != shift(inp.L, inp.p, inp.q):
        raise PreconditionViolation("shifted result is not built from L_{p->q}")
    other = reorder(Ms, M.labels).table
    diff = np.nonzero(other != M.table)[0]
    side = M.mask(res.side_N)
    target = M.mask(list(inp.A) + [res.a])
    freer = bool(np.all(other >= M.table))
    bad = [int(X) for X in diff if (int(X) & side) != target]
    stats = {"subsets_scanned": 1 << M.n, "differing": int(len(diff)), "freer": freer}
    if bad or not freer:
        X = min(bad, key=subset_key) if bad else int(np.nonzero(other < M.table)[0][0])
        return VerificationReport("difference", False, M.ordered(M.subset(X)), stats)
    return VerificationReport("difference", True, None, stats)


def least_spanning_witness(L, p, q):
    """Canonically least minimal Y in E(L) - {p, q} spanning p but not q."""
    ip, iq = L._index[p], L._index[q]
    pool = L.full & ~(1 << ip) & ~(1 << iq)
    t = L.table
    cands = _bits.all_masks(L.n)
    cands = cands[(cands & ~pool) == 0]
    good = (t[cands | 1 << ip] == t[cands]) & (t[cands | 1 << iq] > t[cands])
    hits = sorted(cands[good].tolist(), key=subset_key)
    hitset = set(hits)
    for Y in hits:
        if not any((Y & ~(1 << i)) in hitset for i in bits(Y)):
            return L.subset(Y)
    return None


def retrieval_specs(res):
    """Pin specs for re-adding p to M, then q to M + p, plus the two specs on M2."""
    inp = res.input
    L, p, q = inp.L, inp.p, inp.q
    Yp = least_spanning_witness(L, p, q)
    Yq = least_spanning_witness(L, q, p)
    if Yp is None or Yq is None:
        raise NoIncomparableWitness(f"no set separates {p!r} from {q!r} in L")
    S2 = frozenset(res.side_N)
    Aa = frozenset(inp.A) | {res.a}
    Bb = frozenset(inp.B) | {res.b}
    pin_p = PinSpec.make(set(res.side_L), S2, Yp, Aa, p)
    pin_q = PinSpec.make(set(res.side_L) | {p}, S2, Yq, Bb, q)
    on_m2_p = PinSpec.make(set(res.side_L) | {q}, S2, Yp, Aa, p)
    on_m2_q = PinSpec.make(set(res.side_L) | {p}, S2, Yq, Bb, q)
    return pin_p, pin_q, on_m2_p, on_m2_q


def verify_retrieval(res):
    """Re-adding p then q to M by pinned extensions gives back M2 exactly."""
    pin_p, pin_q, on_m2_p, on_m2_q = retrieval_specs(res)
    ext = pinned_extension(res.M, pin_p)
    ext = pinned_extension(ext, pin_q)
    same = ext == res.M2
    rep_p = verify_unique_characterization(res.M2, res.input.p, on_m2_p)
    rep_q = verify_unique_characterization(res.M2, res.input.q, on_m2_q)
    stats = {
        "Y_p": res.input.L.ordered(pin_p.Y1),
        "Y_q": res.input.L.ordered(pin_q.Y1),
        "retrieved_equals_M2": same,
        "flats_scanned_p": rep_p.stats["flats_scanned"],
        "flats_scanned_q": rep_q.stats["flats_scanned"],
    }
    ok = same and rep_p.passed and rep_q.passed
    cex = None
    if not ok:
        cex = {"retrieved_equals_M2": same,
               "unique_p": rep_p.counterexample, "unique_q": rep_q.counterexample}
    return VerificationReport("retrieval", ok, cex, stats)


def shifted_builds(res):
    """(build over L_{p->q}, build over L_{q->p}) with the same p, q, N, A, B."""
    inp = res.input
    pq = ConstructionInput(shift(inp.L, inp.p, inp.q), inp.p, inp.q, inp.N, inp.A, inp.B)
    qp = ConstructionInput(shift(inp.L, inp.q, inp.p), inp.p, inp.q, inp.N, inp.A, inp.B)
    return build(pq, res.a, res.b), build(qp, res.a, res.b)


def _minor_cases(res, shifted_pq, shifted_qp):
    inp, M = res.input, res.M
    for e in res.side_L:
        yield "delete", e, "L\\e", lambda e=e: build(
            ConstructionInput(delete(inp.L, [e]), inp.p, inp.q, inp.N, inp.A, inp.B),
            res.a, res.b, check=False).M
        yield "contract", e, "L/e", lambda e=e: build(
            ConstructionInput(contract(inp.L, [e]), inp.p, inp.q, inp.N, inp.A, inp.B),
            res.a, res.b, check=False).M
    a_side = [x for x in M.labels if x in set(inp.A) | {res.a}]
    b_side = [y for y in M.labels if y in set(inp.B) | {res.b}]
    for e in a_side:
        yield "delete", e, "L_p->q", lambda: shifted_pq.M
        yield "contract", e, "L_q->p", lambda: shifted_qp.M
    for f in b_side:
        yield "contract", f, "L_p->q", lambda: shifted_pq.M
        yield "delete", f, "L_q->p", lambda: shifted_qp.M


def verify_minors(res, shifted_pq, shifted_qp, threads=1):
    """Match every single-element minor of M with the same minor of a build over a freer or smaller L."""
    M = res.M

    def check(case):
        op, e, source, other = case
        if source in ("L\\e", "L/e"):
            mine = delete(M, [e]) if op == "delete" else contract(M, [e])
            theirs = other()
        else:
            fn = delete if op == "delete" else contract
            mine, theirs = fn(M, [e]), fn(other(), [e])
        return {"op": op, "element": e, "matched_with": source, "equal": mine == theirs}

    cases = list(_minor_cases(res, shifted_pq, shifted_qp))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        if threads > 1:
            with ThreadPoolExecutor(threads) as pool:
                rows = list(pool.map(check, cases))
        else:
            rows = [check(c) for c in cases]
    bad = [r for r in rows if not r["equal"]]
    stats = {"minors_checked": len(rows), "minors_matched": len(rows) - len(bad)}
    if bad:
        return VerificationReport("minors", False, bad[0], stats)
    return VerificationReport("minors", True, None, stats)


def verify_n_minor(res):
    """M / {a, b} \\ (E(L) - {p, q}) equals N."""
    from .core import minor
    got = minor(res.M, [res.a, res.b], res.side_L)
    ok = got == res.input.N
    return VerificationReport("n_minor", ok, None if ok else got.sorted_bases(), {})


LEMMAS = ("separation", "pnotq", "difference", "retrieval", "minors")


def verify_all(res, lemmas=LEMMAS, threads=1):
    """Run the named verifiers on one result, in a fixed order."""
    need_shift = {"difference", "minors"} & set(lemmas)
    pq = qp = None
    if need_shift:
        pq, qp = shifted_builds(res)
    out = {}
    for name in lemmas:
        try:
            if name == "separation":
                rep = verify_separation(res)
            elif name == "pnotq":
                rep = verify_pnotq(res)
            elif name == "difference":
                rep = verify_difference(res, pq)
            elif name == "retrieval":
                rep = verify_retrieval(res)
            elif name == "minors":
                rep = verify_minors(res, pq, qp, threads=threads)
            elif name == "n_minor":
                rep = verify_n_minor(res)
            else:
                raise ValueError(f"unknown lemma {name!r}")
        except (PreconditionViolation, NoIncomparableWitness) as err:
            rep = VerificationReport(name, False, {"precondition": str(err)}, {})
        out[name] = rep
    return out


def find_special_pair(L, member):
    """First incomparable pair whose two shifts both satisfy member, or None."""
    for p, q in incomparable_pairs(L):
        if member(shift(L, p, q)) and member(shift(L, q, p)):
            return p, q
    return None


def demo_report(L, N, A, B, pairs=None, threads=1):
    """Full verifier suite over incomparable pairs of L; a plain JSON-ready dict."""
    if pairs is None:
        pairs = incomparable_pairs(L)

    def one(pq):
        p, q = pq
        res = build(ConstructionInput(L, p, q, N, tuple(A), tuple(B)))
        reps = verify_all(res, LEMMAS + ("n_minor",))
        return {
            "p": p, "q": q,
            "M": {"rank": res.M.rk, "size": res.M.n, "bases": len(res.M.bases)},
            "reports": {k: v.to_dict() for k, v in reps.items()},
            "pass": all(v.passed for v in reps.values()),
        }

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            rows = list(pool.map(one, pairs))
    else:
        rows = [one(pq) for pq in pairs]
    return {"pairs": rows, "pass": all(r["pass"] for r in rows), "count": len(rows)}
