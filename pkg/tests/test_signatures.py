from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from altquot import perm as P
from altquot.perm import Permutation
from altquot.signatures import (
    BASE_EXCEPTIONS,
    DividePeriod,
    DropPeriod,
    FuchsianSignature,
    ReduceGenus,
    ReducePunctures,
    ReductionError,
    classify,
    decompose_cycle,
    mu,
    normalize_boundary,
    reduce,
    reduce_dyck_to_base,
    reduce_to_dyck,
    subgroup_signature,
    surject,
    surject_step,
)

from oracles import LISTED, REDUCTION_CORPUS, legal_step, on_base_list, random_triangle_images, rh_genus, sympy_mu

S = FuchsianSignature.parse


def test_mu_examples():
    assert mu(S("(0;2,3,7;0;0)")) == Fraction(1, 42)
    assert mu(S("(0;2,4,4;0;0)")) == 0
    assert classify(S("(2,4,4)")) == "Euclidean"
    assert mu(S("(1;-;1;0)")) == 1


def test_classify_examples():
    assert classify(S("(0;2,3,5;0;0)")) == "Spherical"
    assert mu(S("(2,3,5)")) == Fraction(-1, 30)
    assert classify(S("(0;2,3,6;0;0)")) == "Euclidean"
    assert classify(S("(0;3,5,7;0;0)")) == "Fuchsian"


def test_parse_forms_and_sorting():
    assert S("(0;9,4;0;0)").periods == (4, 9)
    assert S("(1;3;2)") == FuchsianSignature(1, (3,), 2, 0)
    assert S("(2,3,7)") == FuchsianSignature.dyck(2, 3, 7)
    assert FuchsianSignature.from_dict(S("(1;2,5;1;3)").to_dict()) == S("(1;2,5;1;3)")
    with pytest.raises(ValueError):
        S("(0;1,3;0;0)")
    with pytest.raises(ValueError):
        S("(0;3;0;0;1)")


def _corpus():
    rng = random.Random(42)
    out = []
    while len(out) < 50:
        g = rng.randint(0, 2)
        periods = tuple(rng.randint(2, 30) for _ in range(rng.randint(0, 5)))
        out.append((g, periods, rng.randint(0, 3), rng.randint(0, 2)))
    return out


@pytest.mark.parametrize("g,periods,s,t", _corpus())
def test_mu_matches_sympy_on_corpus(g, periods, s, t):
    sig = FuchsianSignature(g, periods, s, t)
    want = sympy_mu(g, periods, s, t)
    got = mu(sig)
    assert (got.numerator, got.denominator) == (want.p, want.q)
    assert normalize_boundary(sig).boundary == 0
    assert mu(normalize_boundary(sig)) == got


def test_normalize_boundary():
    assert normalize_boundary(S("(0;3,3;1;2)")) == S("(0;3,3;3;0)")
    sig = S("(1;2,7;2;0)")
    assert normalize_boundary(sig) == sig


@given(
    st.integers(0, 3),
    st.lists(st.integers(2, 40), max_size=6),
    st.integers(0, 4),
    st.integers(0, 4),
)
def test_normalize_boundary_keeps_mu_and_class(g, periods, s, t):
    sig = FuchsianSignature(g, tuple(periods), s, t)
    out = normalize_boundary(sig)
    assert mu(out) == mu(sig)
    assert classify(out) == classify(sig)


def test_surject_examples():
    sig = S("(1;4,6;2;0)")
    rules = [ReduceGenus(0), DividePeriod(0, 2), DropPeriod(1), ReducePunctures(1)]
    assert surject(sig, rules) == S("(0;2;1;0)")
    assert surject(sig, []) == sig
    assert surject_step(S("(0;4,9;0;0)"), DividePeriod(1, 3)) == S("(0;3,4;0;0)")


def test_surject_rejects_bad_rules():
    sig = S("(1;4,6;2;0)")
    for rule in (DividePeriod(0, 3), DropPeriod(5), ReduceGenus(2), ReducePunctures(3)):
        with pytest.raises(ValueError):
            surject_step(sig, rule)


def test_divide_by_one_removes_period():
    assert surject_step(S("(0;4,9;1;0)"), DividePeriod(0, 1)) == S("(0;9;1;0)")


def test_subgroup_signature_index_one():
    sig = S("(2,3,7)")
    one = P.identity(1)
    assert subgroup_signature(sig, [one, one, one]) == sig


@pytest.mark.parametrize("m", [2, 3, 5, 8])
def test_genus_one_kernel(m):
    swap = Permutation.from_cycles([(0, 1)], 2)
    got = subgroup_signature(FuchsianSignature.dyck(2, 2, 2, 2 * m), [swap] * 4)
    assert got == FuchsianSignature(1, (m,), 0, 0)
    assert mu(got) == 2 * mu(FuchsianSignature.dyck(2, 2, 2, 2 * m))


@pytest.mark.parametrize("q", [5, 7, 11, 13])
def test_two_q_four_kernel(q):
    swap = Permutation.from_cycles([(0, 1)], 2)
    ident = P.identity(2)
    # periods sort to (2, 4, q); the order-q generator is last
    got = subgroup_signature(FuchsianSignature.dyck(2, q, 4), [swap, swap, ident])
    assert got == FuchsianSignature.dyck(2, q, q)


def test_subgroup_signature_errors():
    sig = S("(2,3,7)")
    c3 = Permutation.from_cycles([(0, 1, 2)], 3)
    with pytest.raises(ValueError, match="does not satisfy"):
        subgroup_signature(sig, [c3, c3, c3])
    with pytest.raises(ValueError, match="cocompact"):
        subgroup_signature(S("(0;2,3;1;0)"), [P.identity(1)] * 2)
    ident = P.identity(4)
    with pytest.raises(ValueError, match="transitively"):
        subgroup_signature(sig, [ident, ident, ident])
    swap = Permutation.from_cycles([(0, 1)], 3)
    with pytest.raises(ValueError, match="product relation"):
        subgroup_signature(sig, [swap, P.identity(3), P.identity(3)])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(9, 24))
def test_subgroup_signature_matches_riemann_hurwitz(seed, n):
    rng = random.Random(seed)
    images, m = random_triangle_images(rng, n)
    assume(images is not None)
    sig = FuchsianSignature.dyck(2, 3, m)
    got = subgroup_signature(sig, images)
    assert mu(got) == n * mu(sig)
    assert got.genus == rh_genus(images, n)
    want = sorted(o // len(c) for o, a in zip((2, 3, m), images) for c in a.cycles if len(c) < o)
    assert list(got.periods) == want


def test_subgroup_signature_on_case_diagrams(triple_7_13_17, triple_3_17_19):
    for tri in (triple_7_13_17, triple_3_17_19):
        for d in (tri.K1, tri.K2, tri.K3):
            images = [d.x, d.y, P.inverse(d.xy)]
            sig = FuchsianSignature.dyck(d.p, d.q, d.r)
            got = subgroup_signature(sig, images)
            assert mu(got) == d.n * mu(sig)
            assert got.genus == rh_genus(images, d.n)


# -- reductions --------------------------------------------------------------


def test_reduce_to_dyck_examples():
    assert reduce_to_dyck(S("(2;5;3;0)")).terminal.kind == "FreeRank2"
    assert reduce_to_dyck(S("(0;\u2014;3;0)")).terminal.kind == "FreeRank2"
    tr = reduce_to_dyck(S("(0;5,7;1;0)"))
    assert tr.terminal.kind == "TriangleFamily"
    assert tr.terminal.ident == "(5,7,r)"


def test_reduce_to_dyck_rejects_non_fuchsian():
    with pytest.raises(ReductionError):
        reduce_to_dyck(S("(2,3,6)"))
    with pytest.raises(ReductionError):
        reduce_dyck_to_base([2, 3, 5])


def test_reduce_dyck_examples():
    tr = reduce_dyck_to_base([3, 5, 7])
    assert tr.steps == ()
    assert tr.terminal.kind == "BaseCase" and tr.terminal.ident.startswith("part 1")
    tr = reduce_dyck_to_base([2, 7, 7])
    assert [s.rule for s in tr.steps] == ["index-2 kernel"]
    assert tr.steps[0].target == FuchsianSignature.dyck(2, 4, 7)
    assert tr.terminal.ident.startswith("part 2")
    assert str(reduce_dyck_to_base([2, 3, 8]).terminal) == 'Exceptional("(2,3,8)")'


def test_base_exceptions_are_their_own_terminal():
    for ps in BASE_EXCEPTIONS:
        tr = reduce_dyck_to_base(list(ps))
        assert tr.steps == ()
        assert tr.terminal.kind == "Exceptional"


def test_reduction_corpus_has_fifty_entries():
    assert len(REDUCTION_CORPUS) == 50


@pytest.mark.parametrize("text,kind", REDUCTION_CORPUS)
def test_reduction_terminals_and_legal_steps(text, kind):
    sig = S(text)
    tr = reduce(sig)
    assert tr.terminal.kind in (kind if isinstance(kind, tuple) else (kind,)), tr.lines()
    assert all(legal_step(s) for s in tr.steps), tr.lines()
    if tr.steps:
        assert tr.steps[0].source == sig
    for a, b in zip(tr.steps, tr.steps[1:]):
        assert a.target == b.source
    if kind == "BaseCase" and tr.steps:
        last = tr.steps[-1].target
        assert last.is_dyck
    if tr.terminal.kind in LISTED:
        end = tr.steps[-1].target if tr.steps else sig
        assert classify(end) == "Fuchsian"
        assert on_base_list(end.periods)


def test_trace_serialization():
    tr = reduce(S("(1;4,6;0;0)"))
    d = tr.to_dict()
    assert d["terminal"] == str(tr.terminal)
    assert len(d["steps"]) == len(tr.steps)
    assert tr.lines()[-1].startswith("terminal:")


# -- cycles from involutions ------------------------------------------------------


def test_decompose_small_examples():
    a, b = decompose_cycle(2, 2)
    assert a == Permutation.from_cycles([(0, 1)], 2) and b.is_identity
    a, b = decompose_cycle(3, 3)
    assert a == Permutation.from_cycles([(1, 2)], 3)
    assert b == Permutation.from_cycles([(0, 1)], 3)


def _brute_involution_pairs(k):
    """All involution pairs in S_k whose product is the standard k-cycle."""
    import itertools

    target = Permutation.from_cycles([tuple(range(k))], k)
    invols = [Permutation(t) for t in itertools.permutations(range(k)) if P.power(Permutation(t), 2).is_identity]
    return {(a, b) for a in invols for b in invols if P.compose(a, b) == target}


def test_decompose_six_is_among_brute_force_solutions():
    pairs = _brute_involution_pairs(6)
    assert decompose_cycle(6, 6) in pairs
    # every solution is a reflection pair: both halves are determined by the first
    assert len(pairs) == 6


@pytest.mark.parametrize("k", range(2, 13))
def test_decompose_cycle_products(k):
    n = k + 3
    a, b = decompose_cycle(k, n)
    target = Permutation.from_cycles([tuple(range(k))], n)
    assert P.compose(a, b) == target
    assert P.power(a, 2).is_identity and P.power(b, 2).is_identity
    assert a.sign() * b.sign() == target.sign() == (-1) ** (k - 1)
    assert all(a(v) == v and b(v) == v for v in range(k, n))


def test_decompose_cycle_errors():
    with pytest.raises(ValueError):
        decompose_cycle(1, 4)
    with pytest.raises(ValueError):
        decompose_cycle(5, 4)


def test_corpus_mu_is_exact_not_float():
    # 1/3 + 1/3 + 1/3 hits exactly 1 only with rationals
    assert mu(S("(0;3,3,3;0;0)")) == 0
    assert math.isclose(float(mu(S("(2,3,7)"))), 1 / 42)
