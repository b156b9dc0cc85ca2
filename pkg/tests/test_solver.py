import hashlib
from fractions import Fraction
from importlib import resources
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubecover.bounds import harmonic, lp_lower_bound
from cubecover.catalog import MAXIMAL, WEIGHT1, PlaneCatalog, enumerate_weight1, get_catalog
from cubecover.core import Hyperplane, InvalidInput, ParseError, classify_weight1, plane_weight
from cubecover.simplex import BLAND, DANTZIG, OPTIMAL
from cubecover.solver import (
    BUDGET_EXCEEDED,
    FEASIBLE,
    INFEASIBLE,
    Budget,
    CoverSolution,
    accounting,
    bundled_q6_cover,
    build_instance,
    compose_known,
    compute_f,
    feasibility_at_size,
    format_cover,
    ilp_solve,
    known_covers,
    lp_relax,
    parse_cover,
    verify_cover,
)

F = Fraction
Q6_COVER_SHA256 = "a9a528f78f2af58e3b7313da0f2d8f2f450b776136d269222296126b7ead454e"


def H(*cs):
    return Hyperplane([F(c) for c in cs])


def test_build_instance_shapes():
    inst = build_instance(2, 1, get_catalog(2, WEIGHT1))
    assert (len(inst.rows), inst.num_vars) == (3, 3)
    inst = build_instance(6, 20, get_catalog(6, WEIGHT1))
    assert (len(inst.rows), inst.num_vars) == (63, 462)
    inst = build_instance(3, 1, get_catalog(3, MAXIMAL))
    assert (len(inst.rows), inst.num_vars) == (7, 11)
    # rows follow the canonical vertex order and list covering planes
    cat = inst.catalog
    for m, row in zip(inst.points, inst.rows):
        assert list(row) == [j for j, pts in enumerate(cat.covered) if m in pts]
    with pytest.raises(InvalidInput):
        build_instance(3, 1, get_catalog(2, MAXIMAL))


def test_verify_examples():
    v = verify_cover(2, 1, [(H(1, 1), 1)])
    assert not v.passed and v.uncovered == [3]
    v = verify_cover(2, 1, [(H(1, 1), 1), (H(1, 0), 1)])
    assert v.passed and v.total == 2 and v.histogram() == {1: 2, 2: 1}
    assert not verify_cover(3, 1, []).passed


def test_bundled_cover_checksum():
    raw = resources.files("cubecover").joinpath("data/q6_k20_cover.txt").read_bytes()
    assert hashlib.sha256(raw).hexdigest() == Q6_COVER_SHA256


def test_bundled_q6_cover():
    cover = bundled_q6_cover()
    assert len(cover) == 49 and all(m == 1 for _, m in cover)
    assert cover[0][0] == H(1, 1, 1, 0, -1, -1)
    # a multiset: four planes appear twice
    assert len({h for h, _ in cover}) == 45
    assert all(classify_weight1(h).is_weight1 and plane_weight(h) == 1 for h, _ in cover)
    v = verify_cover(6, 20, cover)
    assert v.passed and v.total == 49 and v.min_coverage == v.max_coverage == 20
    assert not verify_cover(6, 21, cover).passed
    acc = accounting(6, 20, cover)
    assert acc.size_slack == acc.coverage_term == acc.plane_term == 0
    assert lp_lower_bound(6, 20) == 49


def test_accounting_identity_on_a_loose_cover():
    cover = [(H(1, 1), 2), (H(2, -1), 1), (H(F(1, 2), F(1, 2)), 1)]
    acc = accounting(2, 1, cover)
    assert acc.balanced
    assert acc.size_slack == 4 - F(3, 2)
    assert acc.plane_term == F(1, 2) * 2


def test_cover_file_round_trip_and_errors():
    cover = [(H(1, F(-1, 2)), 1), (H(0, 1), 3)]
    text = format_cover(cover, "two planes")
    assert text == "# two planes\n1 -1/2\n0 1 x 3\n"
    assert parse_cover(text) == cover
    assert parse_cover("1 1  # trailing note\n\n# only a comment\n") == [(H(1, 1), 1)]
    for bad, line in [("1 1\n1\n", 2), ("1 q\n", 1), ("1 1 x -2\n", 1), ("1 1 x y\n", 1), ("1 1/0\n", 1)]:
        with pytest.raises(ParseError) as e:
            parse_cover(bad)
        assert e.value.lineno == line
    with pytest.raises(ParseError):
        parse_cover("1 1 1\n", 2)


def test_lp_relaxation_examples():
    r = lp_relax(build_instance(3, 1, get_catalog(3, MAXIMAL)))
    assert r.status == OPTIMAL and r.objective == F(11, 6)
    empty = PlaneCatalog.build(2, WEIGHT1, [])
    assert lp_relax(build_instance(2, 1, empty)).status == INFEASIBLE


def test_lp_relaxation_n6_k20():
    r = lp_relax(build_instance(6, 20, get_catalog(6, WEIGHT1)))
    assert r.objective == 49 == 20 * harmonic(6).value


@pytest.mark.parametrize("n", range(1, 5))
@pytest.mark.parametrize("kind", [MAXIMAL, WEIGHT1])
def test_lp_value_is_k_harmonic(n, kind):
    for k in (1, 2, 3):
        r = lp_relax(build_instance(n, k, get_catalog(n, kind)))
        assert r.objective == k * harmonic(n).value


def test_rules_agree_on_cover_lp():
    inst = build_instance(4, 2, get_catalog(4, MAXIMAL))
    a = lp_relax(inst, rule=BLAND)
    b = lp_relax(inst, rule=DANTZIG)
    assert a.objective == b.objective


@pytest.mark.parametrize("n,k,expected", [
    (1, 1, 1), (2, 1, 2), (3, 1, 3), (2, 2, 3), (3, 2, 4), (2, 3, 5), (3, 3, 6), (1, 4, 4),
])
def test_small_exact_values(n, k, expected):
    res = compute_f(n, k, MAXIMAL)
    assert res.status == OPTIMAL and res.value == expected and res.exact
    assert verify_cover(n, k, res.witness).passed
    assert sum(m for _, m in res.witness) == expected
    assert accounting(n, k, res.witness).balanced
    assert res.lower <= expected


def test_subadditivity_of_solved_values():
    f = {(n, k): compute_f(n, k, MAXIMAL).value for n in (2, 3) for k in (1, 2, 3)}
    for n in (2, 3):
        assert f[(n, 3)] <= f[(n, 1)] + f[(n, 2)]
        assert f[(n, 2)] <= 2 * f[(n, 1)]


def test_ilp_is_deterministic():
    inst = build_instance(3, 2, get_catalog(3, MAXIMAL))
    a, b = ilp_solve(inst), ilp_solve(inst)
    assert a.solution == b.solution and a.stats.nodes == b.stats.nodes


def test_budget_exceeded_reports_bounds():
    inst = build_instance(4, 1, get_catalog(4, MAXIMAL))
    res = ilp_solve(inst, Budget(max_nodes=3))
    assert res.status == BUDGET_EXCEEDED
    assert res.lower_bound is not None and res.lower_bound <= 4
    assert res.solution is not None and res.total >= 4
    assert verify_cover(4, 1, res.solution).passed
    assert ilp_solve(inst, Budget(max_seconds=0)).status == BUDGET_EXCEEDED


def test_feasibility_small():
    cat2 = get_catalog(2, MAXIMAL)
    assert feasibility_at_size(build_instance(2, 1, cat2), 0).status == INFEASIBLE
    assert feasibility_at_size(build_instance(2, 1, get_catalog(2, WEIGHT1)), 0).status == INFEASIBLE
    assert feasibility_at_size(build_instance(2, 3, cat2), 4).status == INFEASIBLE
    r = feasibility_at_size(build_instance(2, 3, cat2), 5)
    assert r.status == FEASIBLE and verify_cover(2, 3, r.solution).passed
    r = feasibility_at_size(build_instance(2, 1, cat2), 6)
    assert r.status == FEASIBLE and r.total == 6 and verify_cover(2, 1, r.solution).passed
    cat3 = get_catalog(3, MAXIMAL)
    assert feasibility_at_size(build_instance(3, 1, cat3), 2).status == INFEASIBLE
    assert feasibility_at_size(build_instance(3, 1, cat3), 3).status == FEASIBLE
    with pytest.raises(InvalidInput):
        feasibility_at_size(build_instance(3, 1, cat3), -1)


def _bundled_start(cat):
    index = {h.coeffs: j for j, h in enumerate(cat.planes)}
    x = [0] * len(cat)
    for h, m in bundled_q6_cover():
        x[index[h.coeffs]] += m
    return x


def test_feasibility_n6_k20_from_start():
    cat = get_catalog(6, WEIGHT1)
    inst = build_instance(6, 20, cat)
    r = feasibility_at_size(inst, 49, start=_bundled_start(cat))
    assert r.status == FEASIBLE and r.total == 49
    assert verify_cover(6, 20, r.solution).passed
    with pytest.raises(InvalidInput):
        feasibility_at_size(inst, 49, start=[1, 2])


def test_compute_f_n6():
    res = compute_f(6, 20, WEIGHT1, known=known_covers())
    assert res.value == 49 and res.exact and res.method == "composition"
    assert res.certificate["lp_bound"] == 49 and res.certificate["weight1_forced"]
    res = compute_f(6, 60, WEIGHT1, known=known_covers())
    assert res.value == 147 and res.exact
    assert verify_cover(6, 60, res.witness).passed
    assert compose_known(6, 30, known_covers()) is None
    assert compose_known(5, 20, known_covers()) is None


def test_compute_f_weight1_space_is_an_upper_bound():
    for n, k in [(2, 1), (3, 1), (2, 2), (3, 2)]:
        w1 = compute_f(n, k, WEIGHT1)
        exact = compute_f(n, k, MAXIMAL)
        assert w1.value >= exact.value
        assert w1.exact == (w1.value <= w1.lower)
    with pytest.raises(InvalidInput):
        compute_f(2, 1, "other")


def test_record_fields():
    rec = compute_f(2, 2, MAXIMAL).record()
    assert set(rec) == {"n", "k", "space", "objective", "status", "nodes", "time_ms", "certificate"}
    assert rec["objective"] == 3 and rec["status"] == OPTIMAL


def _brute_min_cover(inst):
    best = None
    for x in product(range(inst.k + 1), repeat=inst.num_vars):
        if all(sum(x[j] for j in row) >= inst.k for row in inst.rows):
            t = sum(x)
            best = t if best is None else min(best, t)
    return best


@st.composite
def sub_instances(draw):
    n = draw(st.integers(2, 3))
    cat = get_catalog(n, MAXIMAL)
    keep = draw(st.lists(st.sampled_from(cat.planes), min_size=0, max_size=5, unique=True))
    k = draw(st.integers(1, 2))
    return build_instance(n, k, PlaneCatalog.build(n, MAXIMAL, keep))


@settings(max_examples=60)
@given(sub_instances())
def test_ilp_matches_brute_force(inst):
    expected = _brute_min_cover(inst)
    res = ilp_solve(inst)
    lp = lp_relax(inst)
    if expected is None:
        assert res.status == INFEASIBLE and lp.status == INFEASIBLE
        return
    assert res.status == OPTIMAL and res.total == expected
    assert lp.objective <= res.total
    assert lp.objective >= inst.k * harmonic(inst.n).value
    assert verify_cover(inst.n, inst.k, res.solution).passed
    assert accounting(inst.n, inst.k, res.solution).balanced
    for m in (expected - 1, expected):
        if m >= 0:
            r = feasibility_at_size(inst, m)
            assert r.status == (FEASIBLE if m == expected else INFEASIBLE)
