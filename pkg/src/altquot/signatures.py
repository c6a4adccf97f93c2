"""Signatures of Fuchsian groups and the reductions between them.

A signature ``(g; m_1, ..., m_e; s; t)`` has genus ``g``, periods ``m_i``,
``s`` punctures and ``t`` boundary components.  Reductions chain
surjections and finite-index tricks from an arbitrary Fuchsian group down to
a short list of triangle and quadrilateral groups.
"""
from __future__ import annotations

import json
import math
import re
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from . import perm as P
from .perm import Permutation

__all__ = [
    "BASE_EXCEPTIONS",
    "DividePeriod",
    "DropPeriod",
    "FuchsianSignature",
    "ReduceGenus",
    "ReducePunctures",
    "ReductionError",
    "ReductionTrace",
    "Step",
    "Terminal",
    "classify",
    "decompose_cycle",
    "mu",
    "normalize_boundary",
    "reduce",
    "reduce_dyck_to_base",
    "reduce_to_dyck",
    "subgroup_signature",
    "surject",
    "surject_step",
]


@dataclass(frozen=True, order=True)
class FuchsianSignature:
    genus: int = 0
    periods: tuple[int, ...] = ()
    punctures: int = 0
    boundary: int = 0

    def __post_init__(self):
        periods = tuple(sorted(int(m) for m in self.periods))
        if any(m < 2 for m in periods):
            raise ValueError(f"periods must be >= 2: {periods}")
        for name in ("genus", "punctures", "boundary"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")
        object.__setattr__(self, "periods", periods)

    @classmethod
    def dyck(cls, *periods: int) -> FuchsianSignature:
        return cls(0, tuple(periods), 0, 0)

    @classmethod
    def parse(cls, text: str) -> FuchsianSignature:
        """Accepts ``"(g;m1,m2;s;t)"``, ``"(g;m1,m2;s)"`` or a Dyck tuple ``"(2,3,7)"``."""
        body = text.strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        fields = [f.strip() for f in body.split(";")]
        if len(fields) == 1:
            return cls.dyck(*_ints(fields[0]))
        if len(fields) not in (3, 4):
            raise ValueError(f"cannot parse signature {text!r}")
        g = int(fields[0])
        periods = _ints(fields[1])
        s = int(fields[2])
        t = int(fields[3]) if len(fields) == 4 else 0
        return cls(g, tuple(periods), s, t)

    @property
    def is_dyck(self) -> bool:
        return self.genus == 0 and self.punctures == 0 and self.boundary == 0

    def __str__(self) -> str:
        ps = ",".join(map(str, self.periods)) or "-"
        return f"({self.genus};{ps};{self.punctures};{self.boundary})"

    def short(self) -> str:
        if self.is_dyck:
            return "(" + ",".join(map(str, self.periods)) + ")"
        return str(self)

    def to_dict(self) -> dict:
        return {"g": self.genus, "periods": list(self.periods), "s": self.punctures, "t": self.boundary}

    @classmethod
    def from_dict(cls, d) -> FuchsianSignature:
        return cls(d["g"], tuple(d["periods"]), d.get("s", 0), d.get("t", 0))


def _ints(text: str) -> list[int]:
    text = text.strip()
    if text in ("", "-", "\u2014"):
        return []
    return [int(t) for t in re.split(r"[,\s]+", text) if t]


def mu(sig: FuchsianSignature) -> Fraction:
    return (
        2 * sig.genus
        - 2
        + sum(1 - Fraction(1, m) for m in sig.periods)
        + sig.punctures
        + sig.boundary
    )


def classify(sig: FuchsianSignature) -> str:
    v = mu(sig)
    return "Spherical" if v < 0 else "Euclidean" if v == 0 else "Fuchsian"


def normalize_boundary(sig: FuchsianSignature) -> FuchsianSignature:
    """Trade boundary components for punctures; mu is unchanged."""
    return FuchsianSignature(sig.genus, sig.periods, sig.punctures + sig.boundary, 0)


# -- surjections -------------------------------------------------------------


@dataclass(frozen=True)
class DropPeriod:
    index: int


@dataclass(frozen=True)
class DividePeriod:
    index: int
    divisor: int


@dataclass(frozen=True)
class ReduceGenus:
    genus: int


@dataclass(frozen=True)
class ReducePunctures:
    punctures: int


Rule = DropPeriod | DividePeriod | ReduceGenus | ReducePunctures


def surject_step(sig: FuchsianSignature, rule: Rule) -> FuchsianSignature:
    """Apply one surjection; indices refer to the current sorted periods."""
    ps = list(sig.periods)
    if isinstance(rule, DropPeriod):
        if not 0 <= rule.index < len(ps):
            raise ValueError(f"no period at index {rule.index}")
        del ps[rule.index]
        return FuchsianSignature(sig.genus, tuple(ps), sig.punctures, sig.boundary)
    if isinstance(rule, DividePeriod):
        if not 0 <= rule.index < len(ps):
            raise ValueError(f"no period at index {rule.index}")
        m, d = ps[rule.index], rule.divisor
        if d < 1 or m % d:
            raise ValueError(f"{d} does not divide {m}")
        if d == 1:
            del ps[rule.index]
        else:
            ps[rule.index] = d
        return FuchsianSignature(sig.genus, tuple(ps), sig.punctures, sig.boundary)
    if isinstance(rule, ReduceGenus):
        if not 0 <= rule.genus <= sig.genus:
            raise ValueError(f"cannot raise genus {sig.genus} to {rule.genus}")
        return FuchsianSignature(rule.genus, sig.periods, sig.punctures, sig.boundary)
    if isinstance(rule, ReducePunctures):
        if not 0 <= rule.punctures <= sig.punctures:
            raise ValueError(f"cannot raise punctures {sig.punctures} to {rule.punctures}")
        return FuchsianSignature(sig.genus, sig.periods, rule.punctures, sig.boundary)
    raise TypeError(f"unknown rule {rule!r}")


def surject(sig: FuchsianSignature, rules: Iterable[Rule]) -> FuchsianSignature:
    for rule in rules:
        sig = surject_step(sig, rule)
    return sig


# -- stabilizer signatures ------------------------------------------------------


def subgroup_signature(sig: FuchsianSignature, images: Sequence[Permutation]) -> FuchsianSignature:
    """Signature of a point stabilizer under a transitive action of a cocompact group.

    ``images`` gives one permutation per elliptic generator (in period
    order).  Their left-to-right product must be the identity.
    """
    if sig.punctures or sig.boundary:
        raise ValueError("stabilizer signatures need a cocompact group (s = t = 0)")
    if len(images) != len(sig.periods) + 2 * sig.genus and sig.genus:
        raise ValueError("genus > 0 needs images for the hyperbolic generators too")
    if len(images) < len(sig.periods):
        raise ValueError(f"need {len(sig.periods)} images, got {len(images)}")
    n = images[0].degree
    ell = list(images[: len(sig.periods)])
    for m, a in zip(sig.periods, ell):
        if a.degree != n:
            raise ValueError("images act on different degrees")
        if not P.power(a, m).is_identity:
            raise ValueError(f"image {a} does not satisfy x^{m} = 1")
    prod = P.identity(n)
    for a in ell:
        prod = P.compose(prod, a)
    rest = images[len(sig.periods) :]
    for i in range(0, len(rest), 2):
        a, b = rest[i], rest[i + 1]
        comm = P.compose(P.compose(P.inverse(a), P.inverse(b)), P.compose(a, b))
        prod = P.compose(prod, comm)
    if not prod.is_identity:
        raise ValueError("images violate the product relation")
    if not _transitive(images, n):
        raise ValueError("images do not act transitively")
    periods = []
    for m, a in zip(sig.periods, ell):
        for c in a.cycles:
            if len(c) < m:
                periods.append(m // len(c))
    target = n * mu(sig)
    partial = sum(1 - Fraction(1, m) for m in periods)
    two_g = target - partial + 2
    if two_g.denominator != 1 or two_g.numerator % 2 or two_g < 0:
        raise ValueError(f"non-integral genus {two_g / 2}: inconsistent input")
    return FuchsianSignature(int(two_g) // 2, tuple(periods), 0, 0)


def _transitive(images: Sequence[Permutation], n: int) -> bool:
    seen = {0}
    todo = [0]
    while todo:
        v = todo.pop()
        for a in images:
            w = a(v)
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == n


# -- reduction traces ------------------------------------------------------------

BASE_EXCEPTIONS: tuple[tuple[int, ...], ...] = (
    (2, 3, 8), (2, 3, 9), (2, 3, 10), (2, 3, 12), (2, 3, 15), (2, 3, 25),
    (2, 4, 6), (2, 4, 8), (2, 4, 9), (2, 5, 6), (2, 5, 9), (3, 4, 5),
    (2, 3, 3, 3), (3, 3, 3, 3),
)  # fmt: skip


@dataclass(frozen=True)
class Step:
    rule: str
    source: FuchsianSignature
    target: FuchsianSignature

    def to_dict(self) -> dict:
        return {"rule": self.rule, "source": str(self.source), "target": str(self.target)}


@dataclass(frozen=True)
class Terminal:
    """How a trace ends.

    ``kind`` is one of FreeRank2, TriangleFamily, Dyck, BaseCase, Exceptional.
    """

    kind: str
    ident: str = ""

    def __str__(self) -> str:
        return f'{self.kind}("{self.ident}")' if self.ident else self.kind


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[Step, ...]
    terminal: Terminal

    def __post_init__(self):
        for a, b in zip(self.steps, self.steps[1:]):
            if a.target != b.source:
                raise ValueError("trace steps do not chain")

    def to_dict(self) -> dict:
        return {"steps": [s.to_dict() for s in self.steps], "terminal": str(self.terminal)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def lines(self) -> list[str]:
        out = [f"{s.source} --[{s.rule}]--> {s.target}" for s in self.steps]
        out.append(f"terminal: {self.terminal}")
        return out


class ReductionError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def reduce_to_dyck(sig: FuchsianSignature) -> ReductionTrace:
    """Reduce a Fuchsian signature to a free group of rank 2, a triangle family or a Dyck group."""
    if classify(sig) != "Fuchsian":
        raise ReductionError(f"{sig} is not Fuchsian")
    steps: list[Step] = []

    def go(rule, target):
        if target == cur[0]:
            return
        steps.append(Step(rule, cur[0], target))
        cur[0] = target

    cur = [sig]
    if sig.boundary:
        go("boundary to punctures", normalize_boundary(sig))
    s = cur[0]
    g, ps, np_ = s.genus, s.periods, s.punctures
    if g >= 2:
        return ReductionTrace(tuple(steps), Terminal("FreeRank2", "a1, a2 onto free generators"))
    if g == 1:
        if ps:
            go("surject", FuchsianSignature(1, (ps[0],), 0, 0))
            m = ps[0]
            go("index-2 kernel", FuchsianSignature.dyck(2, 2, 2, 2 * m))
            return ReductionTrace(tuple(steps), Terminal("Dyck", cur[0].short()))
        go("surject", FuchsianSignature(1, (), 1, 0))
        return ReductionTrace(tuple(steps), Terminal("FreeRank2", "(1;-;1)"))
    # genus zero
    if np_ == 0:
        return ReductionTrace(tuple(steps), Terminal("Dyck", s.short()))
    e = len(ps)
    if e == 0:
        go("surject", FuchsianSignature(0, (), 3, 0))
        return ReductionTrace(tuple(steps), Terminal("FreeRank2", "(0;-;3)"))
    if e == 1 or (e == 2 and np_ >= 2):
        m1 = ps[0] if e == 1 else ps[-1]
        go("surject", FuchsianSignature(0, (m1,), 2, 0))
        return ReductionTrace(tuple(steps), Terminal("TriangleFamily", f"(3,{m1},r)"))
    if e == 2:
        return ReductionTrace(tuple(steps), Terminal("TriangleFamily", f"({ps[0]},{ps[1]},r)"))
    if ps[-1] >= 3:
        pair = (ps[0], ps[-1])
        go("surject", FuchsianSignature(0, pair, 1, 0))
        return ReductionTrace(tuple(steps), Terminal("TriangleFamily", f"({pair[0]},{pair[1]},r)"))
    go("surject", FuchsianSignature(0, (2, 2, 2), 1, 0))
    go("onto a quadrilateral group", FuchsianSignature.dyck(2, 2, 2, 3))
    return ReductionTrace(tuple(steps), Terminal("Dyck", "(2,2,2,3)"))


def _base_terminal(ps: tuple[int, ...]) -> Terminal | None:
    if ps in BASE_EXCEPTIONS:
        return Terminal("Exceptional", "(" + ",".join(map(str, ps)) + ")")
    if len(ps) == 3:
        a, b, c = ps
        if a < b < c and all(map(_is_prime, ps)):
            return Terminal("BaseCase", f"part 1 {ps}")
        if a == 2 and b == 4 and c >= 5 and _is_prime(c):
            return Terminal("BaseCase", f"part 2 {ps}")
    return None


def _moves(ps: tuple[int, ...]):
    e = len(ps)
    seen = set()

    def emit(rule, new):
        new = tuple(sorted(new))
        if new in seen or new == ps:
            return
        seen.add(new)
        if classify(FuchsianSignature.dyck(*new)) == "Fuchsian":
            yield rule, new

    # index-2 kernels: (a, a, b) sits inside (2, a, 2b)
    if e == 3:
        for i, j in ((0, 1), (1, 2), (0, 2)):
            if ps[i] == ps[j]:
                b = ps[3 - i - j]
                yield from emit("index-2 kernel", (2, ps[i], 2 * b))
    for i, m in enumerate(ps):
        for d in range(2, m):
            if m % d == 0:
                new = ps[:i] + (d,) + ps[i + 1 :]
                yield from emit(f"divide {m}->{d}", new)
    if e > 3:
        for i in range(e):
            yield from emit(f"drop {ps[i]}", ps[:i] + ps[i + 1 :])
        # two involutions multiply to an element of any order k
        if ps.count(2) >= 2 and e <= 5:
            rest = list(ps)
            rest.remove(2)
            rest.remove(2)
            for k in (3, 4, 5, 7, 11, 13):
                yield from emit(f"merge 2,2->{k}", tuple(rest) + (k,))


def reduce_dyck_to_base(periods: Sequence[int], max_depth: int = 8) -> ReductionTrace:
    """Shortest chain of reductions from a Fuchsian Dyck group to the base list."""
    start = tuple(sorted(int(m) for m in periods))
    sig0 = FuchsianSignature.dyck(*start)
    if classify(sig0) != "Fuchsian":
        raise ReductionError(f"{sig0.short()} is not Fuchsian")
    if len(start) > 5:
        chain = []
        ps = start
        while len(ps) > 5:
            new = ps[1:]
            chain.append(Step(f"drop {ps[0]}", FuchsianSignature.dyck(*ps), FuchsianSignature.dyck(*new)))
            ps = new
        rest = reduce_dyck_to_base(ps, max_depth)
        return ReductionTrace(tuple(chain) + rest.steps, rest.terminal)
    term = _base_terminal(start)
    if term:
        return ReductionTrace((), term)
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], str] | None] = {start: None}
    queue = deque([(start, 0)])
    while queue:
        ps, depth = queue.popleft()
        if depth >= max_depth:
            continue
        for rule, new in _moves(ps):
            if new in parent or max(new) > 4 * max(start) + 16:
                continue
            parent[new] = (ps, rule)
            term = _base_terminal(new)
            if term:
                steps = []
                cur = new
                while parent[cur] is not None:
                    prev, r = parent[cur]
                    steps.append(Step(r, FuchsianSignature.dyck(*prev), FuchsianSignature.dyck(*cur)))
                    cur = prev
                return ReductionTrace(tuple(reversed(steps)), term)
            queue.append((new, depth + 1))
    raise ReductionError(f"no reduction of {sig0.short()} within depth {max_depth}")


def reduce(sig: FuchsianSignature) -> ReductionTrace:
    """Full trace: first to a Dyck group (or a free/triangle terminal), then to the base list."""
    first = reduce_to_dyck(sig)
    if first.terminal.kind != "Dyck":
        return first
    target = first.steps[-1].target if first.steps else sig
    second = reduce_dyck_to_base(target.periods)
    return ReductionTrace(first.steps + second.steps, second.terminal)


# -- cycles as products of involutions -------------------------------------------


def decompose_cycle(k: int, n: int) -> tuple[Permutation, Permutation]:
    """Two involutions whose left-to-right product is the k-cycle ``(0 1 ... k-1)``.

    The first reflects ``v -> -v`` and the second ``v -> 1 - v`` (mod k) on
    ``0 .. k-1``; points ``k .. n-1`` are fixed.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < k:
        raise ValueError(f"ambient degree {n} is smaller than k = {k}")
    if k == 2:
        return P.Permutation.from_cycles([(0, 1)], n), P.identity(n)
    first = list(range(n))
    second = list(range(n))
    for v in range(k):
        first[v] = (-v) % k
        second[v] = (1 - v) % k
    return Permutation(tuple(first)), Permutation(tuple(second))
