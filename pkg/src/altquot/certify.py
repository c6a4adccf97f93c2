"""Certificates that a diagram's permutation group is the alternating group.

The chain of reasoning: the diagram is connected (transitive action), some
power of X^-1 Y is a single prime q-cycle, every generator moves a point of
that cycle to another point of it (primitivity), q <= n - 3 (Jordan), and the
generators are even permutations (alternating rather than symmetric).

Independent oracles back this up: an exhaustive block-system search for
small degrees and an exact group order computation.
"""
from __future__ import annotations

import json
import math
import random
from collections.abc import Mapping, Sequence
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .diagram import TriangleDiagram, from_dict, to_dict, validate
from .perm import Permutation

__all__ = [
    "AltCertificate",
    "CertificationFailure",
    "OrderReport",
    "PrimeCycle",
    "PrimitivityResult",
    "RecheckReport",
    "blocks_oracle",
    "certify_alternating",
    "jordan_conclusion",
    "order_oracle",
    "order_report",
    "parity_resolution",
    "prime_cycle",
    "primitivity_check",
    "recheck",
]


# -- prime cycles and primitivity -------------------------------------------------


@dataclass(frozen=True)
class PrimeCycle:
    cycle: tuple[int, ...]
    exponent: int


def prime_cycle(a: Permutation, q: int) -> PrimeCycle | None:
    """The unique cycle of ``a`` with length divisible by ``q``, if it has length exactly ``q``.

    ``exponent`` is the lcm of the other cycle lengths, so ``a**exponent``
    is that q-cycle alone.
    """
    hits = [c for c in a.cycles if len(c) % q == 0]
    if len(hits) != 1 or len(hits[0]) != q:
        return None
    others = [len(c) for c in a.cycles if len(c) % q]
    return PrimeCycle(hits[0], math.lcm(*others) if others else 1)


@dataclass(frozen=True)
class PrimitivityResult:
    """Witness points, one per generator; ``None`` where none exists."""

    witnesses: tuple[int | None, ...]

    @property
    def ok(self) -> bool:
        return all(w is not None for w in self.witnesses)

    @property
    def verdict(self) -> str:
        return "primitive" if self.ok else "inconclusive"


def primitivity_check(generators: Sequence[Permutation], mu: Sequence[int]) -> PrimitivityResult:
    """For each generator find a point of supp(mu) that it maps into supp(mu).

    Success proves primitivity of a transitive group containing the prime
    cycle ``mu``; failure proves nothing.
    """
    supp = set(mu)
    wit = []
    for g in generators:
        w = next((a for a in sorted(supp) if g(a) in supp), None)
        wit.append(w)
    return PrimitivityResult(tuple(wit))


def _orbit(generators: Sequence[Permutation], start: int = 0) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for g in generators:
            w = g(v)
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return seen


def _block_closure(generators: Sequence[Permutation], n: int, seeds: Sequence[int]) -> tuple[int, ...]:
    """Smallest block containing ``seeds`` (all in one class), as a sorted tuple."""
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    pending = []
    for b in seeds[1:]:
        ra, rb = find(seeds[0]), find(b)
        if ra != rb:
            parent[rb] = ra
            pending.append((seeds[0], b))
    while pending:
        a, b = pending.pop()
        for g in generators:
            ra, rb = find(g(a)), find(g(b))
            if ra != rb:
                parent[rb] = ra
                pending.append((g(a), g(b)))
    root = find(seeds[0])
    return tuple(v for v in range(n) if find(v) == root)


def blocks_oracle(generators: Sequence[Permutation], max_degree: int = 16) -> list[list[tuple[int, ...]]]:
    """Every non-trivial block system, each as a sorted list of blocks.

    Blocks through 0 are closed under joins, and each one is the join of
    minimal blocks generated by pairs ``{0, b}``; the systems follow.
    """
    n = generators[0].degree
    if n > max_degree:
        raise ValueError(f"degree {n} exceeds the exhaustive limit {max_degree}")
    if len(_orbit(generators)) != n:
        raise ValueError("blocks are only defined here for transitive groups")
    found: set[tuple[int, ...]] = set()
    frontier = []
    for b in range(1, n):
        blk = _block_closure(generators, n, (0, b))
        if blk not in found:
            found.add(blk)
            frontier.append(blk)
    while frontier:
        new = []
        for a in frontier:
            for b in list(found):
                j = _block_closure(generators, n, tuple(sorted(set(a) | set(b))))
                if j not in found:
                    found.add(j)
                    new.append(j)
        frontier = new
    systems = []
    for blk in sorted(found, key=lambda t: (len(t), t)):
        if len(blk) == n:
            continue
        systems.append(_system_from_block(generators, n, blk))
    return systems


def _system_from_block(generators, n, blk) -> list[tuple[int, ...]]:
    blocks = {tuple(sorted(blk))}
    todo = [tuple(sorted(blk))]
    while todo:
        b = todo.pop()
        for g in generators:
            img = tuple(sorted(g(v) for v in b))
            if img not in blocks:
                blocks.add(img)
                todo.append(img)
    return sorted(blocks)


def jordan_conclusion(n: int, q: int, primitive: bool, has_q_cycle: bool) -> str:
    """``"AnOrSn"`` when Jordan's criterion applies, else ``"Unknown"``."""
    prime = q >= 2 and all(q % d for d in range(2, math.isqrt(q) + 1))
    if primitive and has_q_cycle and prime and q <= n - 3:
        return "AnOrSn"
    return "Unknown"


def parity_resolution(x: Permutation, y: Permutation, xy: Permutation | None = None) -> str:
    """``"An"`` when the generators are even permutations (odd orders force this)."""
    gens = [x, y] + ([xy] if xy is not None else [])
    if all(g.order() % 2 for g in gens) or all(g.sign() == 1 for g in (x, y)):
        return "An"
    return "Sn"


# -- group order --------------------------------------------------------------------


@dataclass(frozen=True)
class OrderReport:
    order: int
    method: str
    exact: bool = True


class _Chain:
    """Stabilizer chain with explicit transversals, right action, numpy arrays."""

    def __init__(self, n: int):
        self.n = n
        self.ident = np.arange(n, dtype=np.int32)
        self.base: list[int] = []
        self.gens: list[list[np.ndarray]] = []
        self.trans: list[dict[int, np.ndarray]] = []
        self._inv: list[dict[int, np.ndarray]] = []

    @staticmethod
    def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return b[a]

    @staticmethod
    def inv(a: np.ndarray) -> np.ndarray:
        out = np.empty_like(a)
        out[a] = np.arange(len(a), dtype=a.dtype)
        return out

    def size(self) -> int:
        out = 1
        for t in self.trans:
            out *= len(t)
        return out

    def uinv(self, i: int, pt: int) -> np.ndarray | None:
        cache = self._inv[i]
        u = cache.get(pt)
        if u is None:
            t = self.trans[i].get(pt)
            if t is None:
                return None
            u = cache[pt] = self.inv(t)
        return u

    def sift(self, g: np.ndarray) -> tuple[np.ndarray, int]:
        return self.sift_from(g, 0)

    def _grow(self, i: int, todo: list[int]) -> None:
        t = self.trans[i]
        while todo:
            pt = todo.pop()
            u = t[pt]
            for s in self.gens[i]:
                w = int(s[pt])
                if w not in t:
                    t[w] = s[u]
                    todo.append(w)

    def add(self, h: np.ndarray, level: int) -> None:
        if level == len(self.base):
            moved = np.nonzero(h != self.ident)[0]
            b = int(moved[0])
            self.base.append(b)
            self.gens.append([])
            self.trans.append({b: self.ident.copy()})
            self._inv.append({})
        for k in range(level + 1):
            self.gens[k].append(h)
            t = self.trans[k]
            fresh = []
            for pt in list(t):
                w = int(h[pt])
                if w not in t:
                    t[w] = h[t[pt]]
                    fresh.append(w)
            self._grow(k, fresh)

    def schreier_complete(self) -> bool:
        """Deterministic check; adds a generator and returns False on the first failure."""
        for i in range(len(self.base) - 1, -1, -1):
            t = self.trans[i]
            for pt, u in list(t.items()):
                for s in list(self.gens[i]):
                    w = int(s[pt])
                    g = self.uinv(i, w)[s[u]]
                    h, lvl = self.sift_from(g, i + 1)
                    if lvl < len(self.base) or not np.array_equal(h, self.ident):
                        self.add(h, lvl)
                        return False
        return True

    def sift_from(self, g: np.ndarray, start: int) -> tuple[np.ndarray, int]:
        for i in range(start, len(self.base)):
            u = self.uinv(i, int(g[self.base[i]]))
            if u is None:
                return g, i
            g = u[g]
        return g, len(self.base)


def _product_replacement(gens: list[np.ndarray], rng: random.Random):
    slots = [g.copy() for g in gens]
    while len(slots) < 10:
        slots.append(gens[len(slots) % len(gens)].copy())
    acc = slots[0].copy()
    inv = _Chain.inv

    def step():
        nonlocal acc
        i, j = rng.sample(range(len(slots)), 2)
        s = slots[j] if rng.random() < 0.5 else inv(slots[j])
        if rng.random() < 0.5:
            slots[i] = s[slots[i]]
        else:
            slots[i] = slots[i][s]
        acc = slots[i][acc] if rng.random() < 0.5 else acc[slots[i]]
        return acc

    for _ in range(50):
        step()
    return step


def _schreier_sims(gens: list[np.ndarray], n: int, bound: int | None, rng: random.Random) -> OrderReport:
    ch = _Chain(n)
    for g in gens:
        h, lvl = ch.sift(g)
        if lvl < len(ch.base) or not np.array_equal(h, ch.ident):
            ch.add(h, lvl)
    if bound is not None and ch.size() == bound:
        return OrderReport(bound, "schreier-sims (bound reached)")
    step = _product_replacement(gens, rng)
    quiet = 0
    while quiet < 30:
        h, lvl = ch.sift(step())
        if lvl < len(ch.base) or not np.array_equal(h, ch.ident):
            ch.add(h, lvl)
            quiet = 0
            if bound is not None and ch.size() == bound:
                return OrderReport(bound, "schreier-sims (bound reached)")
        else:
            quiet += 1
    while not ch.schreier_complete():
        if bound is not None and ch.size() == bound:
            return OrderReport(bound, "schreier-sims (bound reached)")
    return OrderReport(ch.size(), "schreier-sims (verified)")


def _three_cycle_alternating(gens: list[Permutation], rng: random.Random, tries: int = 400) -> bool:
    """True if the group provably contains the alternating group.

    A 3-cycle is sought as a power of a random element; its conjugates under
    the generators are 3-cycles too, and 3-cycles whose supports form a
    connected hypergraph on all points generate the full alternating group.
    """
    n = gens[0].degree
    arrs = [np.asarray(g.images, dtype=np.int32) for g in gens]
    step = _product_replacement(arrs, rng)
    triple = None
    for _ in range(tries):
        g = Permutation(tuple(int(v) for v in step()))
        div3 = [c for c in g.cycles if len(c) % 3 == 0]
        if len(div3) == 1 and len(div3[0]) == 3:
            triple = div3[0]
            break
    if triple is None:
        return False
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    comps = n

    def join(t):
        nonlocal comps
        for a in t[1:]:
            ra, rb = find(t[0]), find(a)
            if ra != rb:
                parent[rb] = ra
                comps -= 1

    seen = {frozenset(triple)}
    todo = [tuple(triple)]
    join(todo[0])
    while todo and comps > 1:
        t = todo.pop()
        for g in gens:
            img = tuple(g(v) for v in t)
            key = frozenset(img)
            if key not in seen:
                seen.add(key)
                join(img)
                todo.append(img)
    return comps == 1


def order_report(
    generators: Sequence[Permutation], method: str = "auto", seed: int = 0, large: int = 400
) -> OrderReport:
    """Exact order of the group generated by ``generators``.

    ``method`` is ``"schreier-sims"``, ``"alternating"`` (3-cycle test, falls
    back to Schreier-Sims when it fails) or ``"auto"``, which uses the 3-cycle
    test first above degree ``large``.
    """
    gens = [g for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].degree
    rng = random.Random(seed)
    if all(g.is_identity for g in gens):
        return OrderReport(1, "trivial")
    even = all(g.sign() == 1 for g in gens)
    transitive = len(_orbit(gens)) == n
    full = math.factorial(n) // (2 if even else 1)
    if method == "alternating" or (method == "auto" and n > large):
        if transitive and _three_cycle_alternating(gens, rng):
            return OrderReport(full, "3-cycle closure + parity")
        if method == "alternating" and n > 3000:
            raise ValueError("3-cycle test failed and the degree is too large for Schreier-Sims")
    bound = full if transitive and n >= 3 else None
    arrs = [np.asarray(g.images, dtype=np.int32) for g in gens if not g.is_identity]
    return _schreier_sims(arrs, n, bound, rng)


def order_oracle(generators: Sequence[Permutation], method: str = "auto", seed: int = 0) -> int:
    return order_report(generators, method, seed).order


# -- certificates -----------------------------------------------------------------


@dataclass(frozen=True)
class CertificationFailure:
    reason: str

    def __bool__(self) -> bool:
        return False

    def to_dict(self) -> dict:
        return {"certified": False, "reason": self.reason}


@dataclass(frozen=True)
class AltCertificate:
    """Witnesses, each checkable in linear time from X and Y."""

    n: int
    p: int
    q: int
    r: int
    spanning_tree: tuple[tuple[int, int, str], ...]  # (vertex, parent, "x" | "y")
    prime_cycle: tuple[int, ...]
    exponent: int
    primitivity: Mapping[str, int]
    jordan: str
    parity: str
    conclusion: str
    diagram: Mapping[str, Any] = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return True

    def to_dict(self) -> dict:
        d = asdict(self)
        d["spanning_tree"] = [list(t) for t in self.spanning_tree]
        d["prime_cycle"] = list(self.prime_cycle)
        d["primitivity"] = dict(self.primitivity)
        d["diagram"] = dict(self.diagram)
        d["certified"] = True
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> AltCertificate:
        return cls(
            n=d["n"],
            p=d["p"],
            q=d["q"],
            r=d["r"],
            spanning_tree=tuple((int(a), int(b), str(c)) for a, b, c in d["spanning_tree"]),
            prime_cycle=tuple(d["prime_cycle"]),
            exponent=int(d["exponent"]),
            primitivity={str(k): int(v) for k, v in d["primitivity"].items()},
            jordan=d["jordan"],
            parity=d["parity"],
            conclusion=d["conclusion"],
            diagram=d.get("diagram", {}),
        )

    @classmethod
    def from_json(cls, text: str) -> AltCertificate:
        return cls.from_dict(json.loads(text))


def _spanning_tree(d: TriangleDiagram) -> list[tuple[int, int, str]] | None:
    x, y = d.x.images, d.y.images
    seen = [False] * d.n
    seen[0] = True
    todo = [0]
    out = []
    while todo:
        v = todo.pop()
        for name, img in (("x", x), ("y", y)):
            w = img[v]
            if not seen[w]:
                seen[w] = True
                out.append((w, v, name))
                todo.append(w)
    return out if all(seen) else None


def certify_alternating(d: TriangleDiagram) -> AltCertificate | CertificationFailure:
    """Build the full certificate or name the first condition that fails."""
    rep = validate(d)
    if not rep.valid:
        return CertificationFailure("invalid diagram: " + "; ".join(rep.violations))
    tree = _spanning_tree(d)
    if tree is None:
        return CertificationFailure("not transitive: the diagram is disconnected")
    pc = prime_cycle(d.x_inv_y, d.q)
    if pc is None:
        return CertificationFailure(f"X^-1 Y has no unique q-cycle (q = {d.q})")
    prim = primitivity_check([d.x, d.y], pc.cycle)
    if not prim.ok:
        return CertificationFailure("primitivity test inconclusive: a generator moves supp(mu) off itself")
    jordan = jordan_conclusion(d.n, d.q, True, True)
    if jordan != "AnOrSn":
        return CertificationFailure(f"Jordan's criterion needs q <= n - 3 (q = {d.q}, n = {d.n})")
    parity = parity_resolution(d.x, d.y, d.xy)
    return AltCertificate(
        n=d.n,
        p=d.p,
        q=d.q,
        r=d.r,
        spanning_tree=tuple(tree),
        prime_cycle=pc.cycle,
        exponent=pc.exponent,
        primitivity={"x": prim.witnesses[0], "y": prim.witnesses[1]},
        jordan=jordan,
        parity=parity,
        conclusion="A_n" if parity == "An" else "S_n",
        diagram=to_dict(d),
    )


@dataclass(frozen=True)
class RecheckReport:
    ok: bool
    failures: tuple[str, ...] = ()


def recheck(cert: AltCertificate, d: TriangleDiagram | None = None) -> RecheckReport:
    """Re-verify every witness in linear time without any group computation."""
    if d is None:
        d = from_dict(cert.diagram)
    fails = []
    n, q = d.n, d.q
    if (d.p, d.q, d.r, d.n) != (cert.p, cert.q, cert.r, cert.n):
        fails.append("certificate parameters do not match the diagram")
    if not validate(d).valid:
        fails.append("diagram is not valid")
    x, y = d.x.images, d.y.images
    reached = [False] * n
    reached[0] = True
    for v, parent, g in cert.spanning_tree:
        img = x if g == "x" else y
        if not (0 <= parent < n and 0 <= v < n) or img[parent] != v:
            fails.append(f"spanning tree edge {parent} -{g}-> {v} is not an arc")
            break
        reached[v] = True
    if not all(reached):
        fails.append("spanning tree does not reach every vertex")
    a = d.x_inv_y
    mu = cert.prime_cycle
    if len(mu) != q or len(set(mu)) != q:
        fails.append("prime cycle does not have length q")
    elif not all(0 <= v < n for v in mu):
        fails.append("prime cycle names vertices outside the diagram")
    else:
        img = a.images
        if any(img[mu[i]] != mu[(i + 1) % q] for i in range(q)):
            fails.append("prime cycle is not a cycle of X^-1 Y")
        supp = set(mu)
        others = [len(c) for c in a.cycles if c[0] not in supp and not supp.intersection(c)]
        if any(L % q == 0 for L in others):
            fails.append("another cycle of X^-1 Y has length divisible by q")
        if cert.exponent % q == 0 or any(cert.exponent % L for L in others):
            fails.append("exponent does not kill the other cycles while keeping mu")
        for name, g in (("x", x), ("y", y)):
            w = cert.primitivity.get(name)
            if w is None or w not in supp or g[w] not in supp:
                fails.append(f"primitivity witness for {name} fails")
    if q > n - 3:
        fails.append("q > n - 3")
    orders = [math.lcm(*(len(c) for c in g.cycles)) for g in (d.x, d.y, d.xy)]
    if cert.conclusion == "A_n" and not all(o % 2 for o in orders):
        if not (d.x.sign() == 1 and d.y.sign() == 1):
            fails.append("generators are not all even")
    return RecheckReport(not fails, tuple(fails))
