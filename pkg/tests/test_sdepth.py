import random

import pytest

from lcmlat import (
    GeneratorSet,
    LimitExceeded,
    Monomial,
    QuotientPair,
    characteristic_poset,
    ideal_pair,
    parse_monomial,
    quotient_ring_pair,
    sdepth_of_ideal,
    sdepth_of_quotient_ring,
    sdepth_solve,
    verify_decomposition,
)
from lcmlat.config import Config

from oracles import brute_sdepth_pair


def _gens(names, *monos):
    vs = tuple(names)
    return GeneratorSet(vs, [parse_monomial(m, vs) for m in monos])


def _variables_ideal(k):
    return GeneratorSet(
        tuple(f"x{i}" for i in range(k)),
        [Monomial([1 if j == i else 0 for j in range(k)]) for i in range(k)],
    )


# ---------------- the characteristic poset ----------------


def test_poset_for_quotient_by_variables():
    # S/(x, y): only the origin survives, pinned to the all-ones ceiling
    # in zero coordinates, so its ceiling count is zero
    pos = characteristic_poset(quotient_ring_pair(_variables_ideal(2)))
    assert pos.ceiling == (1, 1)
    assert pos.points == ((0, 0),)
    assert pos.ceiling_count((0, 0)) == 0


def test_poset_for_principal_ideal():
    pos = characteristic_poset(ideal_pair(_gens(("x", "y"), "x*y")))
    assert pos.ceiling == (1, 1)
    assert pos.points == ((1, 1),)
    assert pos.ceiling_count((1, 1)) == 2


def test_poset_zero_capped_coordinates_count():
    # (x) in the ring with a spectator y: ceiling (1, 0); the point (1, 0)
    # is pinned in both coordinates
    pos = characteristic_poset(ideal_pair(_gens(("x", "y"), "x")))
    assert pos.ceiling == (1, 0)
    assert pos.ceiling_count((1, 0)) == 2


def test_poset_respects_denominator():
    pair = QuotientPair(_gens(("x", "y"), "x"), _gens(("x", "y"), "x*y"))
    pos = characteristic_poset(pair)
    assert (1, 1) not in pos.points
    assert (1, 0) in pos.points


def test_poset_sorted_by_degree():
    pos = characteristic_poset(ideal_pair(_gens(("x", "y"), "x", "y")))
    degs = [sum(p) for p in pos.points]
    assert degs == sorted(degs)


# ---------------- exact values on the variable ladder ----------------


def test_variable_ladder():
    for k in range(1, 5):
        gens = _variables_ideal(k)
        ri = sdepth_of_ideal(gens)
        assert ri.sdepth == k - k // 2
        assert ri.spdim == k // 2
        rq = sdepth_of_quotient_ring(gens)
        assert rq.sdepth == 0
        assert rq.spdim == k


def test_principal_ideal_full_depth():
    r = sdepth_of_ideal(_gens(("x", "y"), "x*y"))
    assert r.sdepth == 2 and r.spdim == 0


def test_squarefree_triangle_values():
    gens = _gens(("x", "y", "z"), "x*y", "x*z", "y*z")
    assert sdepth_of_quotient_ring(gens).spdim == 2
    assert sdepth_of_ideal(gens).sdepth == 2


# ---------------- agreement with exhaustive search ----------------


def test_matches_brute_force_on_random_ideals(rng):
    from conftest import random_ideal

    for _ in range(25):
        gens = random_ideal(rng, max_vars=3, max_gens=4, max_exp=2).minimalize()
        pair = ideal_pair(gens)
        assert sdepth_solve(pair).sdepth == brute_sdepth_pair(pair)


def test_matches_brute_force_on_random_quotient_rings(rng):
    from conftest import random_ideal

    for _ in range(15):
        gens = random_ideal(rng, max_vars=3, max_gens=3, max_exp=2).minimalize()
        pair = quotient_ring_pair(gens)
        assert sdepth_solve(pair).sdepth == brute_sdepth_pair(pair)


def test_matches_brute_force_on_random_pairs(rng):
    from conftest import random_proper_pair

    for _ in range(15):
        pair = random_proper_pair(rng, max_vars=3, max_gens=3, max_exp=2)
        assert sdepth_solve(pair).sdepth == brute_sdepth_pair(pair)


# ---------------- witnesses and their verification ----------------


def test_solver_witness_verifies():
    gens = _gens(("x", "y", "z"), "x*y", "x*z", "y*z")
    for pair in (ideal_pair(gens), quotient_ring_pair(gens)):
        rep = sdepth_solve(pair)
        pos = characteristic_poset(pair)
        ok, value = verify_decomposition(pos, rep.witness)
        assert ok and value == rep.sdepth


def test_verify_rejects_foreign_point():
    pos = characteristic_poset(ideal_pair(_gens(("x", "y"), "x", "y")))
    ok, value = verify_decomposition(pos, [((0, 0), (1, 1))])
    assert not ok and value is None


def test_verify_rejects_non_interval():
    # (1,0) and (0,1) are incomparable: no interval between them
    pos = characteristic_poset(ideal_pair(_gens(("x", "y"), "x", "y")))
    ok, _ = verify_decomposition(pos, [((1, 0), (0, 1)), ((0, 1), (1, 1))])
    assert not ok


def test_verify_rejects_overlap():
    pos = characteristic_poset(ideal_pair(_gens(("x", "y"), "x", "y")))
    ok, _ = verify_decomposition(
        pos, [((1, 0), (1, 1)), ((0, 1), (1, 1)), ((1, 1), (1, 1))]
    )
    assert not ok


def test_verify_rejects_gap():
    pos = characteristic_poset(ideal_pair(_gens(("x", "y"), "x", "y")))
    ok, _ = verify_decomposition(pos, [((1, 0), (1, 1))])
    assert not ok


def test_verify_accepts_optimal_tiling():
    pos = characteristic_poset(ideal_pair(_gens(("x", "y"), "x", "y")))
    ok, value = verify_decomposition(pos, [((1, 0), (1, 1)), ((0, 1), (0, 1))])
    assert ok and value == 1


# ---------------- caps ----------------


def test_grid_cap():
    gens = _gens(("x", "y"), "x^9999*y^9999")
    with pytest.raises(LimitExceeded):
        characteristic_poset(ideal_pair(gens))


def test_poset_cap_config():
    cfg = Config(poset_cap=2)
    gens = _gens(("x", "y"), "x", "y")
    with pytest.raises(LimitExceeded):
        characteristic_poset(ideal_pair(gens), cfg)


# ---------------- reporting ----------------


def test_report_json_shape():
    rep = sdepth_of_ideal(_gens(("x", "y"), "x", "y"))
    doc = rep.to_json()
    assert doc["sdepth"] == 1 and doc["spdim"] == 1
    assert doc["g"] == [1, 1]
    assert doc["poset_size"] == 3
    assert all(len(iv) == 2 for iv in doc["witness"])
