"""The three diagrams K1, K2, K3 for each family of (p, q, r), and bad-cycle removal.

Cases 1 (p >= 7, q >= p + 6) and 6 (p = 3, q >= 17) are built in full.
Case 2 K3 is built from the three-gon scaffold; the remaining cases are
described in :func:`recipe_catalog` only.
"""
from __future__ import annotations

import heapq
import itertools
import logging
import math
from collections.abc import Callable, Iterator
from dataclasses import dataclass, replace

from . import builders as B
from .builders import ArraySpec, CapacityError, ConnectorType
from .diagram import Handle, TriangleDiagram, is_connected, validate

log = logging.getLogger(__name__)

__all__ = [
    "CaseError",
    "CaseParams",
    "CaseTriple",
    "RemediationError",
    "build_case",
    "case_params",
    "detect_case",
    "diagram_bad_cycles",
    "recipe_catalog",
    "remediate",
]

ANCHOR = "mu"


class CaseError(ValueError):
    """(p, q, r) is outside the family a case covers."""


class RemediationError(RuntimeError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


@dataclass(frozen=True)
class CaseParams:
    case_id: int
    p: int
    q: int
    r: int
    l: int
    s: int
    m: int
    delta: int
    k: int | None = None
    delta1: int | None = None
    delta2: int | None = None

    @property
    def booster_gain(self) -> int:
        return self.p + self.l + 2 - self.s

    def to_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


def case_params(case_id: int, p: int, q: int, r: int) -> CaseParams:
    for name, v in (("p", p), ("q", q), ("r", r)):
        if not _is_prime(v) or v == 2:
            raise CaseError(f"{name} = {v} is not an odd prime")
    if not p < q < r:
        raise CaseError("need p < q < r")
    l, s = divmod(q, p)
    if case_id == 1:
        if p < 7 or q < p + 6 or r < q + 2:
            raise CaseError(f"case 1 needs p >= 7, q >= p+6, r >= q+2; got {(p, q, r)}")
        gain = p + l + 2 - s
        m = (r - q - 2) // gain
        delta = (r - q - 2 - m * gain) // (p - 3)
        rest = r - q - m * gain - delta * (p - 3)
        if (p + 1 - rest) % 2:
            raise CaseError(f"parity mismatch solving for k at {(p, q, r)}")
        k = (p + 1 - rest) // 2
        if not 2 <= k <= (p - 1) // 2:
            raise CaseError(f"k = {k} outside [2, (p-1)/2] at {(p, q, r)}")
        return CaseParams(1, p, q, r, l, s, m, delta, k)
    if case_id == 6:
        if p != 3 or q < 17:
            raise CaseError(f"case 6 needs p = 3, q >= 17; got {(p, q, r)}")
        gain = 5 + l - s
        m = (r - q) // gain
        delta = (r - q - m * gain) // 2
        if q + m * gain + 2 * delta != r:
            raise CaseError(f"case 6 parameters leave a remainder at {(p, q, r)}")
        return CaseParams(6, p, q, r, l, s, m, delta)
    if case_id == 2:
        if p < 7 or q not in (p + 2, p + 4):
            raise CaseError(f"case 2 needs p >= 7 and q in (p+2, p+4); got {(p, q, r)}")
        q0 = 3 * q - 2 * p + 4
        r0 = p + 6 if (q == p + 2 or p >= 13) else 17
        if r < max(r0, q + 2):
            raise CaseError(f"case 2 needs r >= {r0}")
        gain = p + l + 2 - s
        m = max(0, (r - r0) // gain)
        rest = r - q0 - m * gain
        while m >= 0:
            rest = r - q0 - m * gain
            if (p + 1 - rest) % 2 == 0 and 1 <= (p + 1 - rest) // 2 <= (p + 5) // 2:
                break
            m -= 1
        if m < 0:
            raise CaseError(f"no admissible k for case 2 at {(p, q, r)}")
        return CaseParams(2, p, q, r, l, s, m, 0, (p + 1 - rest) // 2)
    if case_id in range(1, 11):
        raise CaseError(f"case {case_id} parameters are not implemented; see recipe_catalog()")
    raise CaseError(f"unknown case {case_id}")


def detect_case(p: int, q: int, r: int) -> int:
    """The case whose family contains (p, q, r); only the built cases are offered."""
    if p >= 7 and q >= p + 6:
        return 1
    if p == 3 and q >= 17:
        return 6
    if p >= 7 and q in (p + 2, p + 4):
        return 2
    raise CaseError(f"no constructed case covers {(p, q, r)}")


# -- triples -----------------------------------------------------------------


@dataclass(frozen=True)
class CaseTriple:
    case_id: int
    params: CaseParams
    K1: TriangleDiagram
    K2: TriangleDiagram
    K3: TriangleDiagram
    history: tuple[str, ...] = ()

    @property
    def handles1(self) -> list[Handle]:
        return [h for _, h in B.tagged_handles(self.K1)]

    @property
    def handles2(self) -> list[Handle]:
        return [h for _, h in B.tagged_handles(self.K2)]

    @property
    def handles3(self) -> list[Handle]:
        return [h for _, h in B.tagged_handles(self.K3)]

    @property
    def anchor(self) -> int:
        v = B.tagged_vertex(self.K3, ANCHOR)
        if v is None:
            raise ValueError("K3 carries no anchor for its prime cycle")
        return v

    @property
    def designated_q_cycle(self) -> tuple[int, ...]:
        a = self.anchor
        for c in self.K3.x_inv_y.cycles:
            if a in c:
                return c
        raise AssertionError("unreachable")

    @property
    def sizes(self) -> tuple[int, int, int]:
        return self.K1.n, self.K2.n, self.K3.n


def diagram_bad_cycles(d: TriangleDiagram, anchor: int | None = None) -> list[tuple[int, ...]]:
    """X^-1 Y cycles of length divisible by q, except the length-q cycle through ``anchor``."""
    q = d.q
    out = []
    for c in d.x_inv_y.cycles:
        if len(c) % q:
            continue
        if anchor is not None and anchor in c and len(c) == q:
            continue
        out.append(c)
    return out


def _anchor_penalty(d: TriangleDiagram, anchor: int) -> int:
    for c in d.x_inv_y.cycles:
        if anchor in c:
            return 0 if len(c) == d.q else 1
    return 1


def _chain(p: int, m: int, first: ConnectorType | None = None) -> tuple[ConnectorType, ...]:
    return (ConnectorType.of(2, p - 2),) * m


def _attach(d: TriangleDiagram, run, spec: ArraySpec, array_id: str) -> TriangleDiagram:
    if not spec.pendants and not spec.chain:
        return d
    return B.attach_array(d, list(run), spec, array_id)


def _case1(par: CaseParams) -> CaseTriple:
    p, q, r, m, delta, k = par.p, par.q, par.r, par.m, par.delta, par.k
    chain = _chain(p, m)
    full = ArraySpec((2,) * delta + (k,), chain)
    short = ArraySpec((2,) * delta + (k - 1,), chain)

    sc = B.build_scaffold("Fig4", p, q, r)
    K1 = sc.diagram
    for i in range(1, p):
        run = sc.runs[f"Q{i}"]
        if i < p - 1:
            K1 = B.place_handle(K1, run[0], f"H{i}")
            K1 = _attach(K1, run[2:], full, f"Q{i}")
        else:
            K1 = _attach(K1, run, short, f"Q{i}")

    K2 = B.qgon(q, p, r)
    g = K2.assembly.gons["Q"]
    K2 = B.place_handle(K2, g[0], "H1")
    K2 = B.place_handle(K2, g[2], "H2")
    K2 = _attach(K2, g[4:], full, "Q")

    sc3 = B.build_scaffold("Fig5", p, q, r)
    K3 = sc3.diagram
    runs = sc3.runs
    pend = ArraySpec((k,), ())
    bare = ArraySpec((2,) * delta, chain)
    for i in [*range(1, p - 2), p - 1]:
        K3 = _attach(K3, runs[f"Q{i}.next"], pend, f"Q{i}.next")
    for j in [*range(2, p - 1), p]:
        K3 = _attach(K3, runs[f"Q{j}.prev"], bare, f"Q{j}.prev")
    K3 = _attach(K3, runs["Q1.prev"], full, "Q1.prev")
    K3 = _attach(K3, runs[f"Q{p - 2}.next"], full, f"Q{p - 2}.next")
    K3 = _place_k3_handle(K3, runs[f"Q{p}.next"], sc3.anchor)
    return CaseTriple(1, par, K1, K2, K3)


def _place_k3_handle(K3: TriangleDiagram, run, anchor: int) -> TriangleDiagram:
    # two consecutive untouched vertices of the precious cycle
    K3 = B.place_handle(K3, run[0], "H1")
    return B.tag_vertex(K3, anchor, ANCHOR)


def _case6(par: CaseParams) -> CaseTriple:
    p, q, r, m, delta = par.p, par.q, par.r, par.m, par.delta
    chain = (ConnectorType.of(2, 1),) * m
    spec = ArraySpec((1,) * delta, chain)

    sc = B.build_scaffold("Fig5SingleArc", p, q, r)
    K1 = sc.diagram
    for i in (1, 2, 3):
        run = sc.runs[f"Q{i}.next"]
        if i > 1:
            K1 = B.place_handle(K1, run[0], f"H{i}")
            run = run[2:]
        K1 = _attach(K1, run, spec, f"Q{i}")
    if "Q1" in (K1.assembly.arrays if K1.assembly else {}):
        K2 = B.spoil(K1, "Q1")
    else:
        K2 = B.attach_array(K1, list(sc.runs["Q1.next"]), ArraySpec((2,), ()), "Q1")

    sc3 = B.build_scaffold("Fig5", p, q, r)
    K3 = sc3.diagram
    runs = sc3.runs
    K3 = _attach(K3, runs["Q1.prev"], spec, "Q1.prev")
    K3 = _attach(K3, runs["Q1.next"], spec, "Q1.next")
    K3 = _attach(K3, runs["Q2.next"], spec, "Q2.next")
    K3 = _place_k3_handle(K3, runs["Q3.next"], sc3.anchor)
    return CaseTriple(6, par, K1, K2, K3)


def _case2_k3(par: CaseParams) -> TriangleDiagram:
    p, q, r, m, k = par.p, par.q, par.r, par.m, par.k
    sc = B.build_scaffold("Fig6", p, q, r)
    K3 = sc.diagram
    K3 = _attach(K3, sc.runs["T"], ArraySpec((k,), (ConnectorType.of(1, p - 1),) * m), "T")
    K3 = B.place_handle(K3, sc.runs["B"][-2], "H1")
    return B.tag_vertex(K3, sc.anchor, ANCHOR)


def build_case(case_id: int, p: int, q: int, r: int) -> CaseTriple:
    """Build K1, K2, K3 for a case, before bad-cycle removal."""
    par = case_params(case_id, p, q, r)
    if case_id == 1:
        return _case1(par)
    if case_id == 6:
        return _case6(par)
    if case_id == 2:
        # K1 and K2 borrow the case 1 recipe with the same booster parameters
        base = _case1_like(p, q, r)
        return CaseTriple(2, par, base.K1, base.K2, _case2_k3(par))
    raise CaseError(f"case {case_id} has a recipe only; no builder")


def _case1_like(p: int, q: int, r: int) -> CaseTriple:
    l, s = divmod(q, p)
    gain = p + l + 2 - s
    m = (r - q - 2) // gain
    delta = (r - q - 2 - m * gain) // (p - 3)
    k = (p + 1 - (r - q - m * gain - delta * (p - 3))) // 2
    par = CaseParams(1, p, q, r, l, s, m, delta, k)
    t = _case1(par)
    return t


# -- remediation ---------------------------------------------------------------


def _arrays(d: TriangleDiagram) -> dict:
    return dict(B.array_records(d))


def _touching(d: TriangleDiagram, cycles) -> list[str]:
    pts = set().union(*map(set, cycles)) if cycles else set()
    out = []
    for aid, rec in _arrays(d).items():
        if pts & (set(rec.host) | set(rec.owned)):
            out.append(aid)
    return out


def _try(f: Callable[[], TriangleDiagram]) -> TriangleDiagram | None:
    try:
        d = f()
    except (CapacityError, ValueError):
        return None
    return d if validate(d).valid else None


def _spec_moves(spec: ArraySpec, p: int) -> Iterator[tuple[str, ArraySpec]]:
    """Size-preserving respecifications of one array."""
    ks = spec.pendants
    for i, j in itertools.permutations(range(len(ks)), 2):
        if ks[i] > 1 and ks[j] < p and ks[i] - 1 != ks[j]:
            new = list(ks)
            new[i] -= 1
            new[j] += 1
            yield f"push-pull {i},{j}", replace(spec, pendants=tuple(new))
    m = len(spec.chain)
    for direction in (1, -1):
        try:
            chain = tuple(c.shifted(direction) for c in spec.chain)
        except ValueError:
            chain = None
        if chain and m:
            yield f"chain volley {direction:+d}", replace(spec, chain=chain)
        for i in range(m):
            if m == 1 and chain:
                continue
            try:
                c = spec.chain[i].shifted(direction)
            except ValueError:
                continue
            new_chain = spec.chain[:i] + (c,) + spec.chain[i + 1 :]
            yield f"modify chain {i} {direction:+d}", replace(spec, chain=new_chain)
    # a type 2 pendant and a leading [2,1] connector traded for a type 3 pendant
    # and a [1,1,~1] connector keep both size and increment (p = 3)
    if p == 3 and 2 in ks and spec.chain and spec.chain[0] == ConnectorType.of(2, 1):
        new = list(ks)
        new[new.index(2)] = 3
        chain = (ConnectorType.of(1, 1, "~1"),) + spec.chain[1:]
        yield "wedge connector", ArraySpec(tuple(new), chain)


def _neighbours(d: TriangleDiagram, anchor: int | None, allow_spoil: bool):
    bad = diagram_bad_cycles(d, anchor)
    if anchor is not None and _anchor_penalty(d, anchor):
        bad = bad + [c for c in d.x_inv_y.cycles if anchor in c]
    ids = _touching(d, bad) or list(_arrays(d))
    for aid in ids:
        spec = _arrays(d)[aid].spec
        for name, new in _spec_moves(spec, d.p):
            nd = _try(lambda: B.replace_array(d, aid, new))
            if nd is not None:
                yield f"{aid}: {name} -> {new}", nd
        if allow_spoil:
            nd = _try(lambda: B.spoil(d, aid))
            if nd is not None:
                yield f"{aid}: spoil", nd


def _score(d: TriangleDiagram, anchor: int | None) -> int:
    s = len(diagram_bad_cycles(d, anchor))
    if anchor is not None:
        s += 2 * _anchor_penalty(d, anchor)
    return s


def _best_first(start: TriangleDiagram, anchor_tag: str | None, allow_spoil: bool, budget: int):
    def anchor_of(d):
        return B.tagged_vertex(d, anchor_tag) if anchor_tag else None

    counter = itertools.count()
    s0 = _score(start, anchor_of(start))
    if s0 == 0:
        return start, []
    heap = [(s0, 0, next(counter), start, [])]
    seen = {(start.x.images, start.y.images)}
    expanded = 0
    while heap and expanded < budget:
        score, depth, _, d, path = heapq.heappop(heap)
        expanded += 1
        for name, nd in _neighbours(d, anchor_of(d), allow_spoil):
            key = (nd.x.images, nd.y.images)
            if key in seen:
                continue
            seen.add(key)
            sc = _score(nd, anchor_of(nd))
            if sc == 0:
                return nd, path + [name]
            heapq.heappush(heap, (sc, depth + 1, next(counter), nd, path + [name]))
    return None, []


def _spoil_all(d: TriangleDiagram) -> TriangleDiagram:
    for aid in list(_arrays(d)):
        d = B.spoil(d, aid)
    return d


def remediate(triple: CaseTriple, budget: int = 60) -> CaseTriple:
    """Remove bad cycles by array maneuvers, keeping every proposition condition.

    K1 and K2 only receive size-preserving maneuvers, except that every array
    of both may be spoiled at once, which keeps ``gcd(|K1|, |K2|) = 1``.  K3
    may also have single arrays spoiled.
    """
    hist = list(triple.history)
    K1, K2, K3 = triple.K1, triple.K2, triple.K3

    def fix_pair(a, b):
        out = []
        for d, label in ((a, "K1"), (b, "K2")):
            nd, path = _best_first(d, None, False, budget)
            if nd is None:
                return None
            out.append((nd, [f"{label} {s}" for s in path]))
        return out

    res = fix_pair(K1, K2)
    if res is None:
        s1 = _try(lambda: _spoil_all(K1))
        s2 = _try(lambda: _spoil_all(K2))
        if s1 is not None and s2 is not None:
            res = fix_pair(s1, s2)
            if res is not None:
                hist.append("K1, K2: spoil every array")
    if res is None:
        raise RemediationError(_dump("K1/K2", triple))
    (K1, h1), (K2, h2) = res
    hist += h1 + h2

    nd, path = _best_first(K3, ANCHOR, True, budget)
    if nd is None:
        raise RemediationError(_dump("K3", triple))
    K3 = nd
    hist += [f"K3 {s}" for s in path]
    out = replace(triple, K1=K1, K2=K2, K3=K3, history=tuple(hist))
    for name, d in (("K1", K1), ("K2", K2), ("K3", K3)):
        if not validate(d).valid or not is_connected(d):
            raise RemediationError(f"{name} lost validity or connectivity during remediation")
    return out


def _dump(where: str, t: CaseTriple) -> str:
    lines = [f"remediation search exhausted on {where} for case {t.case_id} {t.params.to_dict()}"]
    for name, d, anchor in (("K1", t.K1, None), ("K2", t.K2, None), ("K3", t.K3, B.tagged_vertex(t.K3, ANCHOR))):
        bad = diagram_bad_cycles(d, anchor)
        lines.append(f"  {name}: n={d.n} bad cycle lengths {[len(c) for c in bad]}")
        for aid, rec in _arrays(d).items():
            lines.append(f"    {aid}: {rec.spec}")
    return "\n".join(lines)


# -- recipes -----------------------------------------------------------------


def recipe_catalog() -> list[dict]:
    """Machine-readable recipes for all ten families.

    Array specs use the CLI text syntax with symbolic exponents; ``status``
    says whether :func:`build_case` constructs the case.
    """
    c1_arrays = "{2^delta,k;[2,p-2]^m}"
    return [
        {
            "case": 1,
            "status": "REQUIRED",
            "range": "p >= 7, q >= p+6, r >= q+2",
            "params": "m max with (q+2)+m(p+l+2-s) <= r; delta max with +delta(p-3) <= r; p-2k+1 = remainder",
            "K1": {"scaffold": "Fig4", "arrays": {"Q1..Q(p-2)": c1_arrays, "Q(p-1)": "{2^delta,k-1;[2,p-2]^m}"},
                   "handles": "two vertices on each of Q1..Q(p-2)"},
            "K2": {"scaffold": "q-gon", "arrays": {"Q": c1_arrays}, "handles": "four consecutive vertices"},
            "K3": {"scaffold": "Fig5", "arrays": {
                "next side of Q1..Q(p-3), Q(p-1)": "{k;-}",
                "prev side of Q2..Q(p-2), Qp": "{2^delta;[2,p-2]^m}",
                "prev side of Q1, next side of Q(p-2)": c1_arrays},
                "handles": "two vertices of the precious q-cycle"},
            "remediation": ["chain volley to [1,p-1] or [3,p-3]", "spoil every array of K1 and K2",
                            "push-pull after spoiling", "spoil one K3 array"],
            "built": True,
        },
        {
            "case": 2,
            "status": "BEST_EFFORT",
            "range": "p >= 7, q = p+2 or p+4",
            "params": "q0 = p+10 (q = p+2) or p+16 (q = p+4); m max with r0+m(p+1) <= r; p-2k+1 = r-q0-m(p+1)",
            "K1": "as case 1", "K2": "as case 1",
            "K3": {"scaffold": "Fig6", "arrays": {"top": "{k;[1,p-1]^m}"}, "handles": "bottom q-gon",
                   "prime_cycle": "middle q-gon"},
            "remediation": ["change both scaffold [1,p-1] connectors to [2,p-2]"],
            "built": True,
        },
        {
            "case": 3,
            "status": "BEST_EFFORT",
            "range": "p = 5, q >= 17",
            "params": "as case 1 with delta1 (type 1, weight 4) and delta2 (type 2, weight 2)",
            "K1": "case 1 placement, 2^delta -> 1^delta1,2^delta2", "K2": "likewise", "K3": "likewise",
            "built": False,
        },
        {
            "case": 4,
            "status": "BEST_EFFORT",
            "range": "p = 5, q in {11, 13}",
            "params": "r0=13, q0=15 (q=11) or r0=17, q0=21 (q=13); m max with r0+m(9-s) <= r",
            "K1": "as case 3", "K2": "as case 3",
            "K3": {"scaffold": "Fig6", "arrays": {"top": "{5,k;[1,p-1]^m}", "middle": "{5;-}", "bottom": "{5;-}"}},
            "built": False,
        },
        {
            "case": 5,
            "status": "BEST_EFFORT",
            "range": "p = 5, q = 7, r >= 17",
            "params": "m max with 9+6m <= r; delta max with 9+6m+2delta <= r",
            "K1": {"scaffold": "Fig4", "arrays": {"usual": "{k;[1,4]^(m-1),[1,~delta,4-delta]}",
                                                  "one": "{k-1;[1,4]^(m-1),[1,~delta,4-delta]}"}},
            "K2": "case 1 placement with the arrays above", "K3": "as case 2",
            "remediation": ["m >= 2, delta = 2: last connector -> [2,~2,1], last two booster pendants 2 -> 1 and 3"],
            "built": False,
        },
        {
            "case": 6,
            "status": "REQUIRED",
            "range": "p = 3, q >= 17",
            "params": "m max with q+m(5+l-s) <= r; delta max with q+m(5+l-s)+2delta <= r",
            "K1": {"scaffold": "Fig5SingleArc", "arrays": {"each Qi, face Fi": "{1^delta;[2,1]^m}"},
                   "handles": "Q2 and Q3"},
            "K2": {"from": "K1", "arrays": {"Q1": "{1^delta,2;[2,1]^m}"}},
            "K3": {"scaffold": "Fig5", "arrays": {"Q1 both sides, Q2 next side": "{1^delta;[2,1]^m}"},
                   "handles": "precious q-cycle on Q3/Q2"},
            "remediation": ["{1^delta,2;[2,1]^m} -> {1^delta,3;[1,1,~1],[2,1]^(m-1)}", "spoil one K3 array"],
            "built": True,
        },
        {
            "case": 7,
            "status": "BEST_EFFORT",
            "range": "p = 3, q = 13, r >= 23",
            "K1": "as case 6", "K2": "as case 6",
            "K3": {"scaffold": "Fig6", "arrays": {"middle": "{3^3;-}", "bottom": "{3^3;-}",
                                                  "top": ["{3;-}", "{1^delta;[2,1]^m}"]},
                   "handles": "bottom q-gon"},
            "built": False,
        },
        {
            "case": 8,
            "status": "BEST_EFFORT",
            "range": "p = 3, q = 11, r >= 17",
            "K1": "as case 6", "K2": "as case 6",
            "K3": {"scaffold": "Fig6", "arrays": {"top": ["{3^2;-}", "{1^delta;[2,1]^m}"], "middle": "{3^2;-}",
                                                  "bottom": "{3^3;-}"},
                   "handles": "middle q-gon"},
            "built": False,
        },
        {
            "case": 9,
            "status": "BEST_EFFORT",
            "range": "p = 3, q = 7, r >= 13",
            "K1": {"scaffold": "Fig6 top two q-gons joined by [1,2]", "arrays": {"top": "{1^delta;[2,1]^m}"},
                   "handles": "one on each of the top two"},
            "K2": {"from": "K1", "arrays": {"bottom": "{2;-}"}},
            "K3": {"scaffold": "Fig6", "arrays": {"middle": "{3;-}", "bottom": "{3;-}", "top": "{1^delta,3;[1,2]^m}"},
                   "handles": "bottom q-gon"},
            "built": False,
        },
        {
            "case": 10,
            "status": "BEST_EFFORT",
            "range": "p = 3, q = 5",
            "K1": {"scaffold": "Fig6", "arrays": {"middle": "{-;[2,1]^m}", "bottom": "{1^delta;-}"},
                   "handles": "two on the top q-gon"},
            "K2": {"scaffold": "Fig6", "arrays": {"middle": "{2;-}", "bottom": "{1^delta;[1,2]^m}"}},
            "K3": {"scaffold": "Fig6", "arrays": {"top": "{1^delta;[2,1]^m}"}, "handles": "bottom q-gon"},
            "built": False,
        },
    ]
