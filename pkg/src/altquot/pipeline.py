"""From a case triple (K1, K2, K3) to certified diagrams of a requested degree.

The triple is checked against the four conditions that make the composition
scheme work; then ``k1`` rounds of ``p1`` copies of K1 and ``k2`` rounds of
``p2`` copies of K2 are spliced onto K3, giving degree
``k1*p1*|K1| + k2*p2*|K2| + |K3|``.
"""
from __future__ import annotations

import hashlib
import json
import math
import os
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from functools import lru_cache
from pathlib import Path
from typing import Any

from . import builders as B
from .cases import ANCHOR, CaseTriple, build_case, detect_case, remediate
from .certify import AltCertificate, CertificationFailure, certify_alternating
from .diagram import Handle, TriangleDiagram, compose, is_connected, is_handle, validate
from .perm import cycle_structure

__all__ = [
    "CACHE_ENV",
    "CondResult",
    "DegreeStatus",
    "HandleExhaustion",
    "PropositionCheck",
    "Realization",
    "RealizationPlan",
    "ResultCache",
    "Unrepresentable",
    "build_composite",
    "check_proposition",
    "choose_primes",
    "coin_solve",
    "enumerate_degrees",
    "make_plan",
    "realize_degree",
    "remediated_triple",
]

CACHE_ENV = "ALTQUOT_CACHE_DIR"
_CACHE_VERSION = 1


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


# -- the four conditions ----------------------------------------------------------


@dataclass(frozen=True)
class CondResult:
    passed: bool
    detail: str
    witness: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class PropositionCheck:
    premises: CondResult
    cond1: CondResult
    cond2: CondResult
    cond3: CondResult
    cond4: CondResult

    @property
    def passed(self) -> bool:
        return all(self.conditions())

    def __bool__(self) -> bool:
        return self.passed

    def conditions(self) -> tuple[CondResult, ...]:
        return (self.premises, self.cond1, self.cond2, self.cond3, self.cond4)

    def failures(self) -> list[str]:
        names = ("premises", "cond1", "cond2", "cond3", "cond4")
        return [f"{k}: {c.detail}" for k, c in zip(names, self.conditions()) if not c]

    def to_dict(self) -> dict:
        names = ("premises", "cond1", "cond2", "cond3", "cond4")
        return {k: asdict(c) for k, c in zip(names, self.conditions())}


def _unique_q_cycle(d: TriangleDiagram) -> tuple[int, ...] | None:
    hits = [c for c in d.x_inv_y.cycles if len(c) % d.q == 0]
    if len(hits) == 1 and len(hits[0]) == d.q:
        return hits[0]
    return None


def check_proposition(triple: CaseTriple) -> PropositionCheck:
    K1, K2, K3 = triple.K1, triple.K2, triple.K3
    q = K3.q

    bad = [
        name
        for name, d in (("K1", K1), ("K2", K2), ("K3", K3))
        if not validate(d).valid or not is_connected(d)
    ]
    premises = CondResult(not bad, "all valid and connected" if not bad else f"invalid or disconnected: {bad}")

    g = math.gcd(K1.n, K2.n)
    ok1 = g == 1 and K3.n >= q + 3
    cond1 = CondResult(
        ok1,
        f"gcd(|K1|, |K2|) = gcd({K1.n}, {K2.n}) = {g}; |K3| = {K3.n} vs q + 3 = {q + 3}",
        {"gcd": g, "sizes": [K1.n, K2.n, K3.n]},
    )

    counts = []
    for d, hs in ((K1, triple.handles1), (K2, triple.handles2), (K3, triple.handles3)):
        counts.append(sum(1 for h in hs if is_handle(d, h)))
    ok2 = counts[0] >= 2 and counts[1] >= 2 and counts[2] >= 1
    cond2 = CondResult(ok2, f"handle counts {counts} (need >= 2, 2, 1)", {"handles": counts})

    s = [cycle_structure(d.x_inv_y) for d in (K1, K2, K3)]
    div = [sorted(L for L in st if L % q == 0) for st in s]
    ok3 = not div[0] and not div[1] and div[2] == [q] and s[2][q] == 1
    cond3 = CondResult(
        ok3,
        f"X^-1 Y lengths divisible by q: K1 {div[0]}, K2 {div[1]}, K3 {[(L, s[2][L]) for L in div[2]]}",
        {"q_divisible": div},
    )

    mu = _unique_q_cycle(K3)
    if mu is None:
        cond4 = CondResult(False, "K3 has no unique q-cycle to pick i, j from")
    else:
        supp = set(mu)
        taken = {v for h in triple.handles3 for v in h.as_tuple()}
        cand = [v for v in mu if v not in taken]
        i = next((v for v in cand if K3.x(v) in supp), None)
        j = next((v for v in cand if K3.y(v) in supp), None)
        anchored = triple.anchor in supp if B.tagged_vertex(K3, ANCHOR) is not None else False
        cond4 = CondResult(
            i is not None and j is not None and anchored,
            f"i = {i}, j = {j} on the q-cycle off the handle; anchor on it: {anchored}",
            {"i": i, "j": j, "mu": list(mu)},
        )
    return PropositionCheck(premises, cond1, cond2, cond3, cond4)


# -- degree arithmetic ------------------------------------------------------------


def choose_primes(sizes: Sequence[int], p: int) -> tuple[int, int]:
    """Smallest distinct primes above ``p`` not dividing |K1| and |K2| respectively."""
    n1, n2 = sizes[0], sizes[1]

    def nxt(start: int, size: int, avoid: int | None) -> int:
        c = start + 1
        while not (_is_prime(c) and size % c and c != avoid):
            c += 1
        return c

    p1 = nxt(p, n1, None)
    p2 = nxt(p, n2, p1)
    return p1, p2


def coin_solve(n: int, a: int, b: int, c: int) -> tuple[int, int] | None:
    """Non-negative ``(k1, k2)`` with ``n - c = k1*a + k2*b`` and ``k1`` minimal."""
    if math.gcd(a, b) != 1:
        raise ValueError(f"gcd({a}, {b}) != 1")
    m = n - c
    if m < 0:
        return None
    k1 = (m * pow(a, -1, b)) % b if b > 1 else 0
    if k1 * a > m:
        return None
    return k1, (m - k1 * a) // b


@dataclass(frozen=True)
class RealizationPlan:
    p1: int
    p2: int
    k1: int
    k2: int
    n: int
    sizes: tuple[int, int, int]

    @property
    def a(self) -> int:
        return self.p1 * self.sizes[0]

    @property
    def b(self) -> int:
        return self.p2 * self.sizes[1]

    @property
    def frobenius_bound(self) -> int:
        return (self.a - 1) * (self.b - 1) + self.sizes[2]

    def __post_init__(self):
        if self.k1 * self.a + self.k2 * self.b + self.sizes[2] != self.n:
            raise ValueError("degree identity fails for this plan")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sizes"] = list(self.sizes)
        d["frobenius_bound"] = self.frobenius_bound
        return d


def make_plan(sizes: Sequence[int], p: int, n: int) -> RealizationPlan | None:
    p1, p2 = choose_primes(sizes, p)
    sol = coin_solve(n, p1 * sizes[0], p2 * sizes[1], sizes[2])
    if sol is None:
        return None
    return RealizationPlan(p1, p2, sol[0], sol[1], n, tuple(sizes))


# -- composition sequence ---------------------------------------------------------


class HandleExhaustion(RuntimeError):
    """Raised when a composition cannot find p handles; the scheme guarantees it can."""


def _splice(
    p: int,
    running: tuple[TriangleDiagram, list[Handle]],
    copies: Sequence[tuple[TriangleDiagram, list[Handle]]],
) -> tuple[TriangleDiagram, list[Handle]]:
    """One composition: running composite first, then the copies, p handles in all."""
    parts = [running, *copies]
    take = [1] * len(parts)
    extra = p - len(parts)
    for idx in list(range(1, len(parts))) + [0]:
        while extra and take[idx] < len(parts[idx][1]):
            take[idx] += 1
            extra -= 1
    if extra or any(len(hs) < t for (_, hs), t in zip(parts, take)):
        raise HandleExhaustion(f"need {p} handles across {len(parts)} parts")
    out = compose([(d, hs[:t]) for (d, hs), t in zip(parts, take)])
    left = []
    off = 0
    for (d, hs), t in zip(parts, take):
        left.extend(h.shifted(off) for h in hs[t:])
        off += d.n
    for h in left:
        if not is_handle(out, h):
            raise HandleExhaustion(f"unused handle {h} did not survive the splice")
    return out, left


def _round(p: int, running, copies):
    """Splice a round of copies in batches of p - 1, the last batch holding the remainder."""
    for i in range(0, len(copies), p - 1):
        running = _splice(p, running, copies[i : i + p - 1])
    return running


def build_composite(triple: CaseTriple, plan: RealizationPlan) -> TriangleDiagram:
    p = triple.K3.p
    anchor = triple.anchor
    k1 = (triple.K1, triple.handles1)
    k2 = (triple.K2, triple.handles2)
    k3 = (triple.K3, triple.handles3)
    strip = lambda d: TriangleDiagram(d.p, d.q, d.r, d.x, d.y)  # noqa: E731
    k1, k2, k3 = ((strip(d), hs) for d, hs in (k1, k2, k3))

    if plan.k1 == 0 or plan.k2 == 0:
        running = k3
        k3_offset = 0
        final = None
    else:
        running = k2
        k3_offset = None
        final = [k2] * (plan.p2 - 1) + [k3]
    for _ in range(plan.k1):
        running = _round(p, running, [k1] * plan.p1)
    k2_rounds = plan.k2 if final is None else plan.k2 - 1
    for _ in range(k2_rounds):
        running = _round(p, running, [k2] * plan.p2)
    if final is not None:
        k3_offset = running[0].n + (plan.p2 - 1) * triple.K2.n
        running = _round(p, running, final)
    out = running[0]
    if out.n != plan.n:
        raise AssertionError(f"composite has degree {out.n}, plan says {plan.n}")
    return B.tag_vertex(out, anchor + k3_offset, ANCHOR)


# -- realization ------------------------------------------------------------------


@lru_cache(maxsize=32)
def remediated_triple(case_id: int, p: int, q: int, r: int) -> CaseTriple:
    return remediate(build_case(case_id, p, q, r))


@dataclass(frozen=True)
class Unrepresentable:
    n: int
    reason: str
    frobenius_bound: int | None = None

    def __bool__(self) -> bool:
        return False

    def to_dict(self) -> dict:
        return {"n": self.n, "representable": False, "reason": self.reason, "frobenius_bound": self.frobenius_bound}


@dataclass(frozen=True)
class Realization:
    diagram: TriangleDiagram
    certificate: AltCertificate
    plan: RealizationPlan
    case_id: int

    def to_dict(self) -> dict:
        return {
            "case": self.case_id,
            "n": self.plan.n,
            "plan": self.plan.to_dict(),
            "certificate": self.certificate.to_dict(),
        }


class ResultCache:
    """Content-addressed JSON store keyed by (p, q, r, case, n)."""

    def __init__(self, root: str | os.PathLike | None = None):
        if root is None:
            root = os.environ.get(CACHE_ENV) or Path.home() / ".cache" / "altquot"
        self.root = Path(root)

    def key(self, p: int, q: int, r: int, case_id: int, n: int) -> str:
        blob = json.dumps({"v": _CACHE_VERSION, "pqr": [p, q, r], "case": case_id, "n": n}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def get(self, p, q, r, case_id, n) -> dict | None:
        path = self._path(self.key(p, q, r, case_id, n))
        if not path.exists():
            return None
        return json.loads(path.read_text())

    def put(self, p, q, r, case_id, n, payload: dict) -> None:
        path = self._path(self.key(p, q, r, case_id, n))
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, separators=(",", ":")))
        tmp.replace(path)


def _from_payload(payload: dict) -> Realization | Unrepresentable:
    if not payload.get("representable", True):
        return Unrepresentable(payload["n"], payload["reason"], payload.get("frobenius_bound"))
    from .diagram import from_dict

    cert = AltCertificate.from_dict(payload["certificate"])
    pl = payload["plan"]
    plan = RealizationPlan(pl["p1"], pl["p2"], pl["k1"], pl["k2"], pl["n"], tuple(pl["sizes"]))
    return Realization(from_dict(cert.diagram), cert, plan, payload["case"])


def realize_degree(
    p: int,
    q: int,
    r: int,
    case_id: int | None,
    n: int,
    cache: ResultCache | None = None,
) -> Realization | Unrepresentable:
    """Build and certify a diagram of degree ``n`` whose group is A_n."""
    if case_id is None:
        case_id = detect_case(p, q, r)
    if cache is not None:
        hit = cache.get(p, q, r, case_id, n)
        if hit is not None:
            return _from_payload(hit)
    triple = remediated_triple(case_id, p, q, r)
    chk = check_proposition(triple)
    if not chk:
        raise RuntimeError("case triple fails the composition conditions: " + "; ".join(chk.failures()))
    plan = make_plan(triple.sizes, p, n)
    if plan is None:
        p1, p2 = choose_primes(triple.sizes, p)
        bound = (p1 * triple.sizes[0] - 1) * (p2 * triple.sizes[1] - 1) + triple.sizes[2]
        res: Realization | Unrepresentable = Unrepresentable(
            n, "no non-negative (k1, k2) solves the degree equation", bound
        )
    else:
        d = build_composite(triple, plan)
        cert = certify_alternating(d)
        if isinstance(cert, CertificationFailure):
            raise RuntimeError(f"composite of degree {n} failed certification: {cert.reason}")
        res = Realization(d, cert, plan, case_id)
    if cache is not None:
        cache.put(p, q, r, case_id, n, res.to_dict())
    return res


@dataclass(frozen=True)
class DegreeStatus:
    n: int
    representable: bool
    k1: int | None
    k2: int | None
    guaranteed: bool
    certified: bool | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _certify_one(args) -> tuple[int, bool]:
    p, q, r, case_id, n, root = args
    cache = ResultCache(root) if root is not None else None
    res = realize_degree(p, q, r, case_id, n, cache)
    return n, isinstance(res, Realization)


def enumerate_degrees(
    p: int,
    q: int,
    r: int,
    case_id: int | None,
    degrees: Iterable[int],
    certify: bool = False,
    jobs: int = 1,
    cache: ResultCache | None = None,
) -> tuple[list[DegreeStatus], int]:
    """Representability of each degree, plus the Frobenius bound.

    With ``certify`` every representable degree is also built and certified,
    fanned out over ``jobs`` worker processes.
    """
    if case_id is None:
        case_id = detect_case(p, q, r)
    triple = remediated_triple(case_id, p, q, r)
    sizes = triple.sizes
    p1, p2 = choose_primes(sizes, p)
    a, b, c = p1 * sizes[0], p2 * sizes[1], sizes[2]
    bound = (a - 1) * (b - 1) + c
    out = []
    for n in degrees:
        sol = coin_solve(n, a, b, c)
        out.append(
            DegreeStatus(n, sol is not None, sol[0] if sol else None, sol[1] if sol else None, n > bound)
        )
    if certify:
        todo = [(p, q, r, case_id, s.n, str(cache.root) if cache else None) for s in out if s.representable]
        if jobs > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                done = dict(ex.map(_certify_one, todo))
        else:
            done = dict(map(_certify_one, todo))
        out = [replace(s, certified=done.get(s.n)) if s.representable else s for s in out]
    return out, bound
