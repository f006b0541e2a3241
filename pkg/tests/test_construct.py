import warnings

import pytest

from matroidkit.construct import (
    ConstructionInput,
    build,
    demo_report,
    find_special_pair,
    least_spanning_witness,
    retrieval_specs,
    shifted_builds,
    swapped_build,
    two_bases_normalize,
    verify_all,
    verify_difference,
    verify_minors,
    verify_n_minor,
    verify_pnotq,
    verify_retrieval,
    verify_separation,
)
from matroidkit.core import (
    closure,
    delete,
    from_bases,
    independent,
    minor,
    rank,
    relabel,
    uniform,
)
from matroidkit.errors import (
    GroundSetMismatch,
    InputInvariantViolation,
    LabelCollision,
    NoIncomparableWitness,
    PreconditionViolation,
)
from matroidkit.rep import is_representable_gf

from oracles import subsets


@pytest.fixture(scope="module")
def inp(fano, u12xy):
    return ConstructionInput(fano, "1", "2", u12xy, ("x",), ("y",))


@pytest.fixture(scope="module")
def res(inp):
    return build(inp)


@pytest.fixture(scope="module")
def shifted(res):
    return shifted_builds(res)


# -- normalization ----------------------------------------------------------
@pytest.mark.parametrize("r,n", [(0, 0), (1, 1), (1, 2), (2, 4)])
def test_two_bases_normalize_uniform(r, n):
    N0 = uniform(r, n)
    N, A, B = two_bases_normalize(N0)
    assert N.n == 2 * r + 2 * n and N.rk == r + n
    assert not set(A) & set(B) and set(A) | set(B) == set(N.labels)
    for X in (A, B):
        assert len(X) == N.rk and independent(N, X)


def test_normalized_contains_original_as_minor():
    N0 = uniform(1, 2)
    N, A, B = two_bases_normalize(N0)
    free = [e for e in N.labels if "#" not in e]
    # contract the #2 copies, delete the free elements
    twos = [e for e in N.labels if e.endswith("#2")]
    got = relabel(minor(N, twos, free), {e: e[:-2] for e in N.labels if e.endswith("#1")})
    assert got == N0


# -- build ------------------------------------------------------------------------
def test_build_shape(res, fano, u12xy):
    M = res.M
    assert M.n == fano.n - 2 + u12xy.n + 2
    assert M.rk == 4
    assert res.M2.labels == fano.labels + ("x", "y", "a", "b")
    assert verify_n_minor(res).passed


def test_m1_rank_and_m2_from_m1(res, fano, u12xy):
    M1 = res.M1
    assert M1 is not None
    assert M1.rk == fano.rk + u12xy.rk
    got = delete(M1, list(res.label_map))
    got = relabel(got, {v: k for k, v in res.label_map.items()})
    assert got == res.M2


def test_lifted_copies_are_placed_freely(res):
    # x' is spanned by X iff cl{x, anchor} sits inside cl(X)
    M1 = res.M1
    for x, lifted in res.label_map.items():
        anchor = res.a if x in res.input.A else res.b
        base = delete(M1, [lifted])
        line = closure(base, [x, anchor])
        for X in subsets([e for e in base.labels if e != lifted]):
            spans = rank(M1, X | {lifted}) == rank(M1, X)
            assert spans == (line <= closure(base, X))


def test_build_input_errors(fano, u12xy, inp):
    with pytest.raises(InputInvariantViolation):
        build(ConstructionInput(fano, "1", "1", u12xy, ("x",), ("y",)))
    with pytest.raises(InputInvariantViolation):
        build(ConstructionInput(fano, "1", "2", u12xy, ("x", "y"), ()))
    with pytest.raises(InputInvariantViolation):
        build(ConstructionInput(fano, "1", "9", u12xy, ("x",), ("y",)))
    with pytest.raises(LabelCollision):
        build(inp, a="x")


def test_build_warns_on_dependent_pair(u12xy):
    L = from_bases(["p", "q", "r"], [["p", "r"], ["q", "r"]])
    with pytest.warns(UserWarning):
        build(ConstructionInput(L, "p", "q", u12xy, ("x",), ("y",)))


def test_swapped_build_is_same_matroid(inp, res):
    assert swapped_build(inp).M == res.M


# -- verifiers -----------------------------------------------------------------
def test_separation(res, u12xy):
    rep = verify_separation(res)
    assert rep.passed and rep.stats["lc_sides"] == 2
    L = from_bases(["p", "q", "r"], [["p", "r"], ["q", "r"]])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        bad = build(ConstructionInput(L, "p", "q", u12xy, ("x",), ("y",)))
    with pytest.raises(PreconditionViolation):
        verify_separation(bad)


def test_pnotq(inp, res):
    rep = verify_pnotq(res)
    assert rep.passed
    assert rep.stats["subsets_scanned"] == 16
    # with A and B exchanged the unique set moves to the other side
    other = build(ConstructionInput(inp.L, "1", "2", inp.N, ("y",), ("x",)))
    assert verify_pnotq(other).passed
    mixed = ConstructionInput(inp.L, "2", "1", inp.N, inp.A, inp.B)
    fake = build(mixed)
    wrong = type(res)(inp, None, fake.M2, fake.M, "a", "b", fake.label_map)
    assert not verify_pnotq(wrong).passed


def test_difference(res, shifted):
    pq, _ = shifted
    rep = verify_difference(res, pq)
    assert rep.passed
    assert rep.stats["subsets_scanned"] == 512
    assert rep.stats["differing"] > 0 and rep.stats["freer"]
    with pytest.raises(PreconditionViolation):
        verify_difference(res, res)
    other = build(ConstructionInput(uniform(2, 4), "1", "2", res.input.N, ("x",), ("y",)))
    with pytest.raises(GroundSetMismatch):
        verify_difference(res, other)


def test_retrieval(res, u12xy):
    rep = verify_retrieval(res)
    assert rep.passed and rep.stats["retrieved_equals_M2"]
    u = build(ConstructionInput(uniform(2, 4), "1", "2", u12xy, ("x",), ("y",)))
    with pytest.raises(NoIncomparableWitness):
        retrieval_specs(u)


def test_least_spanning_witness(fano):
    Y = least_spanning_witness(fano, "1", "2")
    assert rank(fano, Y | {"1"}) == rank(fano, Y)
    assert rank(fano, Y | {"2"}) > rank(fano, Y)
    assert len(Y) == 2 and "2" not in Y
    assert least_spanning_witness(uniform(2, 4), "1", "2") is None


def test_minors(res, shifted):
    rep = verify_minors(res, *shifted)
    assert rep.passed
    assert rep.stats["minors_checked"] == 2 * res.M.n
    threaded = verify_minors(res, *shifted, threads=4)
    assert threaded.to_dict() == rep.to_dict()
    pq, qp = shifted
    # matching against the wrong shift has to be caught
    assert not verify_minors(res, qp, pq).passed


def test_verify_all_records_preconditions(u12xy):
    L = from_bases(["p", "q", "r"], [["p", "r"], ["q", "r"]])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        bad = build(ConstructionInput(L, "p", "q", u12xy, ("x",), ("y",)))
        reps = verify_all(bad, ("separation",))
    assert not reps["separation"].passed
    assert "precondition" in reps["separation"].counterexample


def test_find_special_pair(fano):
    assert find_special_pair(fano, lambda M: True) == ("1", "2")
    assert find_special_pair(uniform(2, 4), lambda M: True) is None
    assert find_special_pair(fano, lambda M: is_representable_gf(M, 2) is not None) is None


def test_demo_report_fano(fano, u12xy):
    out = demo_report(fano, u12xy, ["x"], ["y"])
    assert out["count"] == 21 and out["pass"]


def test_normalized_n_on_some_pairs(fano):
    N, A, B = two_bases_normalize(uniform(2, 4))
    N = relabel(N, {e: "n" + e for e in N.labels})
    A = ["n" + e for e in A]
    B = ["n" + e for e in B]
    out = demo_report(fano, N, A, B, pairs=[("1", "2")])
    assert out["pass"]
    assert out["pairs"][0]["M"]["size"] == 5 + N.n + 2
