from __future__ import annotations

import math
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altquot import builders as B
from altquot.cases import ANCHOR
from altquot.certify import order_report, recheck
from altquot.diagram import TriangleDiagram, bad_cycles, disjoint_union, is_connected, validate
from altquot.perm import Permutation
from altquot.pipeline import (
    RealizationPlan,
    Realization,
    ResultCache,
    Unrepresentable,
    build_composite,
    check_proposition,
    choose_primes,
    coin_solve,
    enumerate_degrees,
    make_plan,
    realize_degree,
)

from oracles import brute_coin


# -- the composition conditions ------------------------------------------------------


def test_conditions_pass_on_remediated_triples(triple_7_13_17, triple_3_17_19):
    for tri in (triple_7_13_17, triple_3_17_19):
        chk = check_proposition(tri)
        assert chk.passed, chk.failures()
        assert len(chk.conditions()) == 5  # premises plus the four conditions
        assert chk.to_dict()


def test_condition_one_fails_when_k3_is_too_small(triple_7_13_17):
    # a q-gon plus one fixed vertex has q + 1 vertices
    gon = B.qgon(13, 7, 17)
    x = Permutation(tuple(gon.x.images) + (13,))
    y = Permutation(tuple(gon.y.images) + (13,))
    k3 = TriangleDiagram(7, 13, 17, x, y)
    assert k3.n == 14
    chk = check_proposition(replace(triple_7_13_17, K3=k3))
    assert not chk.cond1
    assert "q + 3" in chk.cond1.detail


def test_condition_one_fails_on_shared_factor(triple_7_13_17):
    chk = check_proposition(replace(triple_7_13_17, K2=triple_7_13_17.K1))
    assert not chk.cond1


def test_condition_three_fails_on_two_q_cycles(triple_7_13_17):
    k3 = triple_7_13_17.K3
    doubled, _ = disjoint_union([k3, k3])
    chk = check_proposition(replace(triple_7_13_17, K3=doubled))
    assert not chk.cond3
    assert not chk.passed


# -- degree arithmetic ------------------------------------------------------------


def test_choose_primes_examples():
    assert choose_primes((109, 18, 126), 7) == (11, 13)
    assert choose_primes((57, 58, 57), 3) == (5, 7)
    assert choose_primes((1, 1, 1), 5) == (7, 11)
    # 11 divides |K1| so it is skipped for p1 but still free for p2
    assert choose_primes((11 * 13, 4, 1), 7) == (17, 11)


def test_coin_solve_examples():
    a, b, c = 1199, 234, 126
    assert coin_solve(c, a, b, c) == (0, 0)
    assert coin_solve(c + a, a, b, c) == (1, 0)
    assert coin_solve(c - 1, a, b, c) is None
    with pytest.raises(ValueError):
        coin_solve(500, 6, 4, 0)


def test_coin_solve_matches_brute_force_up_to_ten_thousand():
    a, b, c = 1199, 234, 126
    for n in range(0, 10001):
        assert coin_solve(n, a, b, c) == brute_coin(n, a, b, c), n


def test_every_degree_above_the_bound_is_representable():
    a, b, c = 1199, 234, 126
    bound = (a - 1) * (b - 1) + c
    assert bound == 279260
    assert all(coin_solve(n, a, b, c) is not None for n in range(bound + 1, bound + 501))
    # B itself is reachable; the largest gap sits one below it
    assert coin_solve(bound, a, b, c) is not None
    assert coin_solve(bound - 1, a, b, c) is None


@settings(max_examples=200)
@given(st.integers(2, 60), st.integers(2, 60), st.integers(0, 50), st.integers(0, 5000))
def test_coin_solve_property(a, b, c, n):
    if math.gcd(a, b) != 1:
        return
    got = coin_solve(n, a, b, c)
    assert got == brute_coin(n, a, b, c)
    if got is not None:
        assert got[0] * a + got[1] * b + c == n


def test_plan_identity_and_bound():
    plan = make_plan((109, 18, 126), 7, 1325)
    assert (plan.p1, plan.p2, plan.k1, plan.k2) == (11, 13, 1, 0)
    assert plan.frobenius_bound == 279260
    with pytest.raises(ValueError):
        RealizationPlan(11, 13, 1, 1, 1325, (109, 18, 126))
    assert make_plan((109, 18, 126), 7, 127) is None


# -- composites -------------------------------------------------------------------


def _check_composite(tri, n):
    plan = make_plan(tri.sizes, tri.K3.p, n)
    d = build_composite(tri, plan)
    assert d.n == n == plan.k1 * plan.a + plan.k2 * plan.b + tri.sizes[2]
    assert validate(d).valid
    assert is_connected(d)
    anchor = B.tagged_vertex(d, ANCHOR)
    designated = next(c for c in d.x_inv_y.cycles if anchor in c)
    assert len(designated) == d.q
    assert bad_cycles(d, designated) == []
    return d, plan


def test_composite_zero_rounds_is_k3(triple_7_13_17):
    d, plan = _check_composite(triple_7_13_17, 126)
    assert (plan.k1, plan.k2) == (0, 0)
    assert d.x == triple_7_13_17.K3.x and d.y == triple_7_13_17.K3.y


@pytest.mark.parametrize("n", [360, 1325, 1325 + 234])
def test_composites_for_7_13_17(triple_7_13_17, n):
    _check_composite(triple_7_13_17, n)


def test_composite_with_both_kinds_of_round(triple_7_13_17):
    # k1 = k2 = 1 uses K2 as the starting piece and swaps K3 into the final round
    d, plan = _check_composite(triple_7_13_17, 126 + 1199 + 234)
    assert (plan.k1, plan.k2) == (1, 1)


@pytest.mark.parametrize("n", [57 + 285, 57 + 406])
def test_composites_for_3_17_19(triple_3_17_19, n):
    _check_composite(triple_3_17_19, n)


@pytest.mark.parametrize("n", [342, 360])
def test_small_composites_generate_the_alternating_group(triple_7_13_17, triple_3_17_19, n):
    tri = triple_3_17_19 if n == 342 else triple_7_13_17
    d, _ = _check_composite(tri, n)
    rep = order_report([d.x, d.y], method="schreier-sims")
    assert rep.order == math.factorial(n) // 2


# -- realization and the cache ----------------------------------------------------------


def test_realize_k3_alone():
    res = realize_degree(7, 13, 17, 1, 126)
    assert isinstance(res, Realization)
    assert res.certificate.n == 126 and recheck(res.certificate).ok


def test_realize_case_six_k3(triple_3_17_19):
    n = triple_3_17_19.K3.n
    res = realize_degree(3, 17, 19, 6, n)
    assert res and res.certificate.conclusion == "A_n"


def test_realize_below_k3_is_unrepresentable():
    res = realize_degree(7, 13, 17, 1, 100)
    assert isinstance(res, Unrepresentable) and not res
    assert res.frobenius_bound == 279260


def test_realize_detects_the_case():
    res = realize_degree(7, 13, 17, None, 126)
    assert res.case_id == 1


def test_cache_round_trip(tmp_path):
    cache = ResultCache(tmp_path / "store")
    first = realize_degree(7, 13, 17, 1, 360, cache)
    assert cache.get(7, 13, 17, 1, 360) is not None
    second = realize_degree(7, 13, 17, 1, 360, cache)
    assert second.certificate == first.certificate
    assert second.diagram == first.diagram
    miss = realize_degree(7, 13, 17, 1, 101, cache)
    again = realize_degree(7, 13, 17, 1, 101, cache)
    assert not miss and not again and again.reason == miss.reason


def test_cache_key_depends_on_every_field(tmp_path):
    cache = ResultCache(tmp_path)
    keys = {cache.key(*args) for args in [(7, 13, 17, 1, 126), (7, 13, 19, 1, 126), (7, 13, 17, 2, 126), (7, 13, 17, 1, 127)]}
    assert len(keys) == 4


def test_enumerate_empty_range():
    statuses, bound = enumerate_degrees(7, 13, 17, 1, range(0))
    assert statuses == [] and bound == 279260


def test_enumerate_above_the_bound_is_all_representable():
    statuses, bound = enumerate_degrees(7, 13, 17, 1, range(279261, 279361))
    assert all(s.representable and s.guaranteed for s in statuses)


def test_enumerate_with_certification():
    statuses, _ = enumerate_degrees(7, 13, 17, 1, range(124, 129), certify=True)
    by_n = {s.n: s for s in statuses}
    assert by_n[126].certified is True
    assert all(not s.representable and s.certified is None for n, s in by_n.items() if n != 126)
