import pytest
from hypothesis import given, strategies as st

from nonformal.duality import (boundary_report, connectivity_report, dimension_planner, excluded_ambient_dims,
                               excluded_ambient_dims_bruteforce, paper_betti_X)
from nonformal.errors import ContractViolation, FormalityRefusal
from nonformal.spaces import cochains, spec_X

X222 = [1, 0, 3, 0, 0, 1]


def test_paper_betti_matches_cochains():
    for k in (2, 3):
        assert cochains(spec_X(k, k, k)).betti() == paper_betti_X(k)


def test_boundary_example():
    rep = boundary_report(X222, 8, 2)
    assert rep.betti == (1, 0, 4, 0, 0, 4, 0, 1)
    assert all(rep.betti[i] == rep.betti[7 - i] for i in range(8))
    assert rep.diagnostics["indeterminacy_zero"].holds is True
    assert rep.diagnostics["injective_top"].holds is True
    assert "b_3(X)=0" in rep.diagnostics["injective_top"].reason


def test_boundary_intervals():
    rep = boundary_report(X222, 10, 2)
    assert not rep.exact
    assert rep.betti[4] == (0, 1) and rep.betti[5] == (0, 1)


def test_boundary_too_small():
    with pytest.raises(ContractViolation):
        boundary_report(X222, 5)
    with pytest.raises(ContractViolation):
        boundary_report([0, 1], 5)


def test_point():
    assert boundary_report([1], 5).betti == (1, 0, 0, 0, 1)


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_excluded(k):
    assert excluded_ambient_dims(k, {"indeterminacy_zero", "injective_top"}) == {5 * k - 1, 6 * k - 2}
    assert excluded_ambient_dims(k, "full") == {4 * k, 5 * k - 1, 6 * k - 2, 6 * k - 1}
    for mode in ("first", "full"):
        assert excluded_ambient_dims(k, mode) == excluded_ambient_dims_bruteforce(k, mode)


def test_excluded_examples():
    assert excluded_ambient_dims(2, {"indeterminacy_zero", "iso_top", "surjective_k"}) == {8, 9, 10, 11}
    assert excluded_ambient_dims(3, "first") == {14, 16}
    with pytest.raises(ContractViolation):
        excluded_ambient_dims(2, set())


@given(st.integers(2, 5), st.integers(0, 40))
def test_reports_respect_duality(k, extra):
    N = 3 * k + extra
    rep = boundary_report(paper_betti_X(k), N, k)
    for i in range(N):
        a, b = rep.betti[i], rep.betti[N - 1 - i]
        if isinstance(a, int) and isinstance(b, int):
            assert a == b
    if rep.exact and (N - 1) % 2:
        assert sum((-1) ** i * b for i, b in enumerate(rep.betti)) == 0


@given(st.lists(st.integers(0, 3), min_size=1, max_size=7), st.integers(1, 6))
def test_intervals_contain_every_admissible_value(tail, extra):
    betti = [1] + tail
    N = len(betti) + extra
    try:
        rep = boundary_report(betti, N)
    except ContractViolation:
        return
    for r in rep.ranks:
        from nonformal.duality import _boundary_betti, _pad
        A = [betti[N - i] if 0 <= N - i < len(betti) else 0 for i in range(N + 2)]
        bv = _boundary_betti(_pad(betti, N + 2), A, list(r) + [0], N)
        for i, x in enumerate(bv):
            got = rep.betti[i]
            assert got == x if isinstance(got, int) else got[0] <= x <= got[1]


def test_planner():
    with pytest.raises(FormalityRefusal):
        dimension_planner(2, 5)
    r = dimension_planner(2, 7)
    assert (r.kind, r.ambient) == ("boundary", 8)
    r = dimension_planner(2, 8)
    assert (r.kind, r.ambient) == ("double", 8)
    assert dimension_planner(2, 10).kind == "boundary"


def test_planner_product_alternatives_only_for_k_not_two():
    assert all(not dimension_planner(2, d).alternatives for d in range(7, 20))
    r = dimension_planner(3, 15)
    assert r.kind == "double" and r.alternatives
    assert all(a.kind == "product" and a.ambient not in {14, 16} for a in r.alternatives)


def test_connectivity():
    assert connectivity_report(X222, 8, 2) is True
    assert connectivity_report(X222, 8, 3) is False
    assert connectivity_report([1], 5, 2) is True
