"""Diagram surgery: q-gons, pendants, boosters, arrays and array maneuvers.

Every x-cycle is laid down the same way: its parts (runs of consecutive
vertices on q-gons, or fresh wedge vertices) are each traversed against the
Y order and concatenated.  With that orientation a type k pendant lengthens
the xy-face it is attached to by p - 2k + 1, and a chain connector merges the
booster's face into the host face; both agree with the counting rules the
cases rely on, which the tests check by building and measuring.
"""
from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace

from .diagram import Assembly, Handle, TriangleDiagram, is_handle
from .perm import Permutation

__all__ = [
    "FIGURES",
    "ArrayRecord",
    "ArraySpec",
    "CapacityError",
    "ConnectorType",
    "Scaffold",
    "ScaffoldSpec",
    "SearchConstraints",
    "SearchStats",
    "array_records",
    "build_scaffold",
    "expected_profiles",
    "reserve",
    "scaffold",
    "search_diagram",
    "attach_array",
    "attach_pendant",
    "booster",
    "booster_cycle_length",
    "pendant_cycle_effect",
    "push_pull_effect",
    "free_run",
    "modify_chain",
    "place_handle",
    "tag_vertex",
    "tagged_handles",
    "tagged_vertex",
    "push_pull",
    "qgon",
    "replace_array",
    "spoil",
]


class CapacityError(ValueError):
    """Not enough consecutive free vertices for the requested attachment."""


# -- specs -------------------------------------------------------------------


@dataclass(frozen=True)
class ConnectorType:
    """An x-cycle type such as ``[2, 5]`` or ``[1, ~2, 4]``.

    ``parts`` is a cyclic list of ``(size, wedge)``.  In a chain connector the
    first non-wedge part sits on the previous q-gon and the second on the new
    booster.
    """

    parts: tuple[tuple[int, bool], ...]

    def __post_init__(self):
        parts = tuple((int(s), bool(w)) for s, w in self.parts)
        if not parts or any(s < 1 for s, _ in parts):
            raise ValueError(f"connector parts must be positive: {parts}")
        if all(w for _, w in parts):
            raise ValueError("a connector needs at least one non-wedge part")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *sizes: int | str) -> ConnectorType:
        """``ConnectorType.of(1, "~2", 4)``; a leading ``~`` marks wedges."""
        parts = []
        for s in sizes:
            if isinstance(s, str) and s.startswith("~"):
                parts.append((int(s[1:]), True))
            else:
                parts.append((int(s), False))
        return cls(tuple(parts))

    @property
    def size(self) -> int:
        return sum(s for s, _ in self.parts)

    @property
    def wedge_total(self) -> int:
        return sum(s for s, w in self.parts if w)

    @property
    def attached(self) -> tuple[int, ...]:
        return tuple(s for s, w in self.parts if not w)

    def shifted(self, direction: int) -> ConnectorType:
        """Move one vertex between the two attached parts (chain modification)."""
        idx = [i for i, (_, w) in enumerate(self.parts) if not w]
        if len(idx) != 2:
            raise ValueError(f"{self} is not a two-ended chain connector")
        parts = list(self.parts)
        a, b = idx
        parts[a] = (parts[a][0] + direction, False)
        parts[b] = (parts[b][0] - direction, False)
        if parts[a][0] < 1 or parts[b][0] < 1:
            raise ValueError(f"chain modification of {self} degenerates a part")
        return ConnectorType(tuple(parts))

    def __str__(self) -> str:
        return "[" + ",".join(("~" if w else "") + str(s) for s, w in self.parts) + "]"


def _power_items(body: str, conv):
    out = []
    body = body.strip()
    if body in ("", "-", "\u2014", "---"):
        return out
    for tok in _split_top(body):
        tok = tok.strip()
        mult = 1
        m = re.fullmatch(r"(.*?)\^(\d+)", tok)
        if m:
            tok, mult = m.group(1).strip(), int(m.group(2))
        out.extend([conv(tok)] * mult)
    return out


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_connector(tok: str) -> ConnectorType:
    m = re.fullmatch(r"\[(.*)\]", tok.strip())
    if not m:
        raise ValueError(f"bad connector {tok!r}")
    return ConnectorType.of(*(t.strip() for t in m.group(1).split(",")))


@dataclass(frozen=True)
class ArraySpec:
    """A type ``{k_1, ..., k_t; X_1, ..., X_m}`` array.

    Pendant order is kept: along the host run the pendants come first, in
    this order, followed by the first connector of the chain.
    """

    pendants: tuple[int, ...] = ()
    chain: tuple[ConnectorType, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pendants", tuple(int(k) for k in self.pendants))
        object.__setattr__(self, "chain", tuple(self.chain))

    @classmethod
    def parse(cls, text: str) -> ArraySpec:
        """Parse ``"{2^3,4;[2,5]^2}"``; ``~`` marks a wedge part, ``-`` an empty side."""
        m = re.fullmatch(r"\s*\{(.*);(.*)\}\s*", text)
        if not m:
            raise ValueError(f"bad array spec {text!r}")
        pend = _power_items(m.group(1), int)
        chain = _power_items(m.group(2), _parse_connector)
        return cls(tuple(pend), tuple(chain))

    def __str__(self) -> str:
        def runs(items, fmt):
            out, i = [], 0
            while i < len(items):
                j = i
                while j < len(items) and items[j] == items[i]:
                    j += 1
                out.append(fmt(items[i]) + (f"^{j - i}" if j - i > 1 else ""))
                i = j
            return ",".join(out) or "-"

        return "{" + runs(self.pendants, str) + ";" + runs(self.chain, str) + "}"

    @property
    def m(self) -> int:
        return len(self.chain)

    def host_footprint(self) -> int:
        """Consecutive free host vertices used: ``l_11 + sum(k_i)``."""
        first = self.chain[0].attached[0] if self.chain else 0
        return sum(self.pendants) + first

    def increment(self, p: int, q: int) -> int:
        """Growth of the host xy-face, in y-arcs."""
        l, s = divmod(q, p)
        wedges = sum(c.wedge_total for c in self.chain)
        return self.m * (p + l + 2 - s) + sum(p - 2 * k + 1 for k in self.pendants) + 2 * wedges

    def new_vertices(self, p: int, q: int) -> int:
        s = q % p
        wedges = sum(c.wedge_total for c in self.chain)
        return sum(p - k for k in self.pendants) + self.m * (q + p - s) + wedges

    def validate(self, p: int, q: int) -> None:
        if any(not 1 <= k <= p for k in self.pendants):
            raise ValueError(f"pendant types must lie in [1, {p}]: {self.pendants}")
        if self.chain and q % p == 0:
            raise ValueError("boosters need q = lp + s with 1 <= s <= p-1")
        for c in self.chain:
            if c.size != p:
                raise ValueError(f"connector {c} does not have size p = {p}")
            if len(c.attached) != 2:
                raise ValueError(f"chain connector {c} must have exactly two attached parts")
        for a, b in zip(self.chain, self.chain[1:]):
            if a.attached[1] + b.attached[0] > p:
                raise CapacityError(f"connectors {a} and {b} overfill a booster's p free vertices")


def pendant_cycle_effect(p: int, k: int) -> tuple[int, int | None]:
    """Change to the X^-1 Y cycle through a pendant's host run, and any new cycle.

    Odd k lengthens the host cycle by p - k; even k shortens it by k/2 and
    splits off a new cycle of length p - k/2.
    """
    if k % 2:
        return p - k, None
    return -(k // 2), p - k // 2


def booster_cycle_length(p: int, q: int) -> int:
    """Length of the single X^-1 Y cycle of an isolated booster."""
    s = q % p
    return q + (p - s if s % 2 else -(s // 2))


def push_pull_effect(p: int, ki: int, kj: int) -> int:
    """Host-cycle change when pendant types (ki, kj) become (ki - 1, kj + 1).

    Sum of the per-pendant effects before and after; when ki and kj are both
    even it equals sum(p - k/2), and when both odd it is minus that sum over
    the new (even) types.
    """
    h = lambda k: pendant_cycle_effect(p, k)[0]  # noqa: E731
    return h(ki - 1) + h(kj + 1) - h(ki) - h(kj)


@dataclass(frozen=True)
class ArrayRecord:
    """Where an array sits and which vertices it owns."""

    id: str
    gon: str
    start: int
    spec: ArraySpec
    host: tuple[int, ...]
    owned: tuple[int, ...]
    boosters: tuple[str, ...]


# -- mutable working copy ----------------------------------------------------


class _Work:
    def __init__(self, d: TriangleDiagram | None = None, p=None, q=None, r=None):
        if d is None:
            self.p, self.q, self.r = p, q, r
            self.x: list[int] = []
            self.y: list[int] = []
            self.labels: dict[int, str] = {}
            self.gons: dict[str, tuple[int, ...]] = {}
            self.arrays: dict[str, ArrayRecord] = {}
            self.reserved: set[int] = set()
            return
        self.p, self.q, self.r = d.p, d.q, d.r
        self.x = list(d.x.images)
        self.y = list(d.y.images)
        self.labels = dict(d.labels)
        asm = d.assembly or Assembly()
        self.gons = dict(asm.gons)
        self.arrays = dict(asm.arrays)
        self.reserved = set(asm.reserved)

    # allocation
    def alloc(self, count: int, pool: list[int] | None, label: str) -> list[int]:
        out = []
        for _ in range(count):
            if pool:
                v = pool.pop(0)
            else:
                v = len(self.x)
                self.x.append(v)
                self.y.append(v)
            self.labels[v] = label
            out.append(v)
        return out

    def add_gon(self, name: str, size: int, pool: list[int] | None = None) -> tuple[int, ...]:
        if name in self.gons:
            raise ValueError(f"duplicate q-gon name {name}")
        vs = self.alloc(size, pool, name)
        for i, v in enumerate(vs):
            self.y[v] = vs[(i + 1) % size]
        self.gons[name] = tuple(vs)
        return tuple(vs)

    def add_xcycle(self, parts: Sequence[Sequence[int]]) -> None:
        seq = [v for part in parts for v in reversed(part)]
        if len(seq) != self.p:
            raise ValueError(f"x-cycle of length {len(seq)} in a p = {self.p} diagram")
        for v in seq:
            if self.x[v] != v:
                raise ValueError(f"vertex {v} already lies on an x-cycle")
        for i, v in enumerate(seq):
            self.x[v] = seq[(i + 1) % len(seq)]

    def gon_of(self, v: int) -> str:
        for name, vs in self.gons.items():
            if v in vs:
                return name
        # unregistered: adopt the Y-cycle through v
        cyc = [v]
        w = self.y[v]
        while w != v:
            cyc.append(w)
            w = self.y[w]
        if len(cyc) == 1:
            raise ValueError(f"vertex {v} is a wedge, not on a q-gon")
        lo = cyc.index(min(cyc))
        cyc = cyc[lo:] + cyc[:lo]
        name = f"G{cyc[0]}"
        self.gons[name] = tuple(cyc)
        return name

    def run_from(self, start: int, limit: int | None = None) -> list[int]:
        """Consecutive free, unreserved vertices along Y starting at ``start``."""
        out = []
        v = start
        while self.x[v] == v and v not in self.reserved and self.y[v] != v:
            out.append(v)
            if limit is not None and len(out) >= limit:
                break
            v = self.y[v]
            if v == start:
                break
        return out

    # removal
    def compact(self, dead: Iterable[int]) -> None:
        dead = set(dead)
        if not dead:
            return
        for v in dead:
            if self.x[v] != v or self.y[v] != v:
                raise AssertionError(f"cannot delete attached vertex {v}")
        keep = [v for v in range(len(self.x)) if v not in dead]
        new = {v: i for i, v in enumerate(keep)}
        self.x = [new[self.x[v]] for v in keep]
        self.y = [new[self.y[v]] for v in keep]
        self.labels = {new[v]: s for v, s in self.labels.items() if v in new}
        self.gons = {k: tuple(new[v] for v in vs) for k, vs in self.gons.items()}
        self.reserved = {new[v] for v in self.reserved if v in new}
        self.arrays = {
            k: replace(
                a,
                start=new[a.start],
                host=tuple(new[v] for v in a.host),
                owned=tuple(new[v] for v in a.owned),
            )
            for k, a in self.arrays.items()
        }

    def freeze(self) -> TriangleDiagram:
        asm = Assembly(dict(self.gons), dict(self.arrays), frozenset(self.reserved))
        return TriangleDiagram(
            self.p,
            self.q,
            self.r,
            Permutation(tuple(self.x)),
            Permutation(tuple(self.y)),
            self.labels,
            asm,
        )


# -- primitives --------------------------------------------------------------


def qgon(q: int, p: int, r: int) -> TriangleDiagram:
    """A bare q-gon: Y is a q-cycle, every vertex is free."""
    w = _Work(p=p, q=q, r=r)
    w.add_gon("Q", q)
    return w.freeze()


def free_run(d: TriangleDiagram, start: int, limit: int | None = None) -> list[int]:
    """Consecutive free vertices along Y from ``start`` (handles excluded)."""
    return _Work(d).run_from(start, limit)


def _check_run(w: _Work, run: Sequence[int]) -> None:
    for a, b in zip(run, run[1:]):
        if w.y[a] != b:
            raise ValueError(f"run is not consecutive under Y at {a} -> {b}")
    for v in run:
        if w.x[v] != v:
            raise ValueError(f"vertex {v} of the run is not free")
        if w.y[v] == v:
            raise ValueError(f"vertex {v} of the run is a wedge")


def _pendant(w: _Work, host: Sequence[int], k: int, pool, label: str) -> None:
    wedges = w.alloc(w.p - k, pool, label)
    w.add_xcycle([host, wedges])


def attach_pendant(d: TriangleDiagram, run: Sequence[int]) -> TriangleDiagram:
    """Attach a type ``k = len(run)`` pendant to consecutive free vertices."""
    k = len(run)
    if not 1 <= k <= d.p:
        raise ValueError(f"pendant type must lie in [1, {d.p}], got {k}")
    w = _Work(d)
    _check_run(w, run)
    if w.reserved.intersection(run):
        raise CapacityError("run overlaps reserved vertices")
    _pendant(w, run, k, None, f"pendant{k}")
    return w.freeze()


def _booster_into(w: _Work, name: str, pool) -> list[int]:
    """Lay down a booster q-gon; returns its p consecutive free vertices."""
    p, q = w.p, w.q
    l, s = divmod(q, p)
    if l < 1 or s == 0:
        raise ValueError(f"booster needs q = lp + s, l >= 1, 1 <= s <= p-1; got p={p}, q={q}")
    g = w.add_gon(name, q, pool)
    pos = 0
    for _ in range(l - 1):
        w.add_xcycle([g[pos : pos + p]])
        pos += p
    _pendant(w, g[pos : pos + s], s, pool, name + ".w")
    pos += s
    return list(g[pos:])


def booster(p: int, q: int, r: int) -> TriangleDiagram:
    """An isolated booster: q + p - s vertices with p consecutive free ones left."""
    w = _Work(p=p, q=q, r=r)
    _booster_into(w, "B", None)
    return w.freeze()


def _attach(w: _Work, array_id: str, gon: str, start: int, spec: ArraySpec, pool) -> ArrayRecord:
    p, q = w.p, w.q
    spec.validate(p, q)
    need = spec.host_footprint()
    run = w.run_from(start, need) if need else []
    if len(run) < need:
        raise CapacityError(
            f"array {array_id} {spec} needs {need} consecutive free vertices at {start}, found {len(run)}"
        )
    owned_start = len(w.x)
    pool_before = list(pool) if pool else []
    pos = 0

    def take(k):
        nonlocal pos
        seg = run[pos : pos + k]
        pos += k
        return seg

    for j, k in enumerate(spec.pendants):
        _pendant(w, take(k), k, pool, f"{array_id}.P{j + 1}")
    prev_free: list[int] | None = None
    boosters = []
    for i, conn in enumerate(spec.chain):
        bname = f"{array_id}.B{i + 1}"
        bfree = _booster_into(w, bname, pool)
        boosters.append(bname)
        first, second = conn.attached
        parts = []
        seen_first = False
        for size, wedge in conn.parts:
            if wedge:
                parts.append(w.alloc(size, pool, f"{array_id}.X{i + 1}.w"))
            elif not seen_first:
                seen_first = True
                if prev_free is None:
                    parts.append(take(size))
                else:
                    if len(prev_free) < size:
                        raise CapacityError(f"booster {i} of {array_id} lacks free vertices")
                    parts.append(prev_free[len(prev_free) - size :])
                    prev_free = prev_free[: len(prev_free) - size]
            else:
                parts.append(bfree[:size])
                rest = bfree[size:]
        w.add_xcycle(parts)
        prev_free = rest
    used_pool = [v for v in pool_before if pool is None or v not in pool]
    owned = tuple(used_pool) + tuple(range(owned_start, len(w.x)))
    rec = ArrayRecord(array_id, gon, start, spec, tuple(run[:pos]), owned, tuple(boosters))
    w.arrays[array_id] = rec
    return rec


def attach_array(
    d: TriangleDiagram, host_run: Sequence[int], spec: ArraySpec | str, array_id: str | None = None
) -> TriangleDiagram:
    """Attach an array to the free run starting at ``host_run[0]``.

    ``host_run`` must be consecutive free vertices; the array uses its first
    ``l_11 + sum(k_i)`` of them and may not reach past the supplied run.
    """
    if isinstance(spec, str):
        spec = ArraySpec.parse(spec)
    w = _Work(d)
    if not host_run:
        if spec.host_footprint():
            raise CapacityError("empty host run")
        return d
    _check_run(w, host_run)
    if spec.host_footprint() > len(host_run):
        raise CapacityError(f"{spec} needs {spec.host_footprint()} free vertices, run has {len(host_run)}")
    gon = w.gon_of(host_run[0])
    if array_id is None:
        array_id = f"A{len(w.arrays) + 1}"
        while array_id in w.arrays:
            array_id += "'"
    if array_id in w.arrays:
        raise ValueError(f"duplicate array id {array_id}")
    outside = set(w.run_from(host_run[0])) - set(host_run)
    w.reserved |= outside
    try:
        _attach(w, array_id, gon, host_run[0], spec, None)
    finally:
        w.reserved -= outside
    return w.freeze()


def replace_array(d: TriangleDiagram, array_id: str, spec: ArraySpec) -> TriangleDiagram:
    """Rebuild one array in place with a new type.

    Vertices owned by the old array are reused first; extra ones are
    appended and surplus ones deleted, so untouched vertices keep their ids
    unless vertices had to be removed.
    """
    if d.assembly is None or array_id not in d.assembly.arrays:
        raise KeyError(f"no array {array_id!r} in this diagram")
    w = _Work(d)
    rec = w.arrays.pop(array_id)
    for v in rec.host + rec.owned:
        w.x[v] = v
    for v in rec.owned:
        w.y[v] = v
    for b in rec.boosters:
        del w.gons[b]
    pool = list(rec.owned)
    _attach(w, array_id, rec.gon, rec.start, spec, pool)
    for v in pool:
        w.labels.pop(v, None)
    w.compact(pool)
    return w.freeze()


def spoil(d: TriangleDiagram, array_id: str) -> TriangleDiagram:
    """Add a type (p+1)/2 pendant to an array; its face increment is unchanged."""
    spec = _record(d, array_id).spec
    return replace_array(d, array_id, replace(spec, pendants=spec.pendants + ((d.p + 1) // 2,)))


def push_pull(d: TriangleDiagram, array_id: str, i: int, j: int) -> TriangleDiagram:
    """Replace pendant types ``k_i, k_j`` by ``k_i - 1, k_j + 1`` (0-based indices)."""
    spec = _record(d, array_id).spec
    ks = list(spec.pendants)
    if i == j or not (0 <= i < len(ks) and 0 <= j < len(ks)):
        raise ValueError(f"bad pendant indices {i}, {j} for {spec}")
    if ks[i] - 1 < 1 or ks[j] + 1 > d.p:
        raise ValueError(f"push-pull would leave pendant types outside [1, {d.p}]")
    ks[i] -= 1
    ks[j] += 1
    return replace_array(d, array_id, replace(spec, pendants=tuple(ks)))


def modify_chain(d: TriangleDiagram, array_id: str, i: int, direction: int) -> TriangleDiagram:
    """Shift connector ``i`` (0-based): ``[l1, ~l2, l3, ~l4] -> [l1 + dir, ~l2, l3 - dir, ~l4]``."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    spec = _record(d, array_id).spec
    chain = list(spec.chain)
    if not 0 <= i < len(chain):
        raise ValueError(f"array {array_id} has no connector {i}")
    chain[i] = chain[i].shifted(direction)
    return replace_array(d, array_id, replace(spec, chain=tuple(chain)))


def _record(d: TriangleDiagram, array_id: str) -> ArrayRecord:
    if d.assembly is None or array_id not in d.assembly.arrays:
        raise KeyError(f"no array {array_id!r} in this diagram")
    return d.assembly.arrays[array_id]


def array_records(d: TriangleDiagram) -> Mapping[str, ArrayRecord]:
    return {} if d.assembly is None else d.assembly.arrays


def reserve(d: TriangleDiagram, vertices: Iterable[int]) -> TriangleDiagram:
    """Mark vertices (typically handles) that later surgery must not use."""
    w = _Work(d)
    w.reserved |= set(vertices)
    return w.freeze()


# -- scaffolds ---------------------------------------------------------------

FIGURES = ("Fig4", "Fig5", "Fig5SingleArc", "Fig6")


@dataclass(frozen=True)
class ScaffoldSpec:
    figure: str
    p: int
    q: int
    expected_face_profile: Mapping[int, int] | None = None
    expected_xinvy_profile: Mapping[int, int] | None = None

    def __post_init__(self):
        if self.figure not in FIGURES:
            raise ValueError(f"unknown figure {self.figure!r}; choose from {FIGURES}")


@dataclass(frozen=True)
class Scaffold:
    """A scaffold diagram plus the named free runs the case recipes decorate.

    ``anchor`` is a vertex on the X^-1 Y cycle meant to become the prime
    q-cycle, when the figure supplies one.
    """

    diagram: TriangleDiagram
    runs: Mapping[str, tuple[int, ...]]
    anchor: int | None = None


def expected_profiles(figure: str, p: int, q: int) -> tuple[dict[int, int], dict[int, int]]:
    """Face and X^-1 Y profiles each figure is meant to have."""
    if figure == "Fig4":
        return {q - 2: 1, q: p - 2, 1: 2}, {q: p - 3, q - 2: 1, q + 2: 1}
    if figure in ("Fig5", "Fig5SingleArc"):
        return {q: p}, {q: p}
    if figure == "Fig6":
        h = (p - 1) // 2
        return {3 * q - 2 * p + 4: 1, 1: 2 * (p - 2)}, _merge({q - h: 1, q: 1, q + h: 1})
    raise ValueError(figure)


def _merge(d: Mapping[int, int]) -> dict[int, int]:
    return {k: v for k, v in d.items() if v}


def _fig4(w: _Work) -> Scaffold:
    p, q = w.p, w.q
    G = [w.add_gon(f"Q{i + 1}", q) for i in range(p - 1)]
    inner = [[g[0]] for g in G[:-1]] + [[G[-1][0], G[-1][1]]]
    outer = [[g[1]] for g in G[:-1]] + [[G[-1][2], G[-1][3]]]
    w.add_xcycle(inner)
    w.add_xcycle(outer[::-1])
    runs = {f"Q{i + 1}": tuple(g[2:]) for i, g in enumerate(G[:-1])}
    runs[f"Q{p - 1}"] = tuple(G[-1][4:])
    return Scaffold(w.freeze(), runs)


def _fig5(w: _Work, c: int) -> Scaffold:
    p, q = w.p, w.q
    G = [w.add_gon(f"Q{i + 1}", q) for i in range(p)]
    w.add_xcycle([[g[0]] for g in G])
    w.add_xcycle([[g[c]] for g in G][::-1])
    runs = {}
    for i, g in enumerate(G):
        # "prev" borders the face shared with Q_{i-1}, "next" the one shared with Q_{i+1}
        runs[f"Q{i + 1}.prev"] = tuple(g[1:c])
        runs[f"Q{i + 1}.next"] = tuple(g[c + 1 :])
    return Scaffold(w.freeze(), runs, anchor=G[-1][0])


def _fig6(w: _Work) -> Scaffold:
    p, q = w.p, w.q
    top, mid, bot = (w.add_gon(name, q) for name in ("T", "M", "B"))
    w.add_xcycle([list(top[: p - 1]), [mid[0]]])
    w.add_xcycle([list(mid[1:p]), [bot[0]]])
    d = w.freeze()
    runs = {"T": tuple(top[p - 1 :]), "M": tuple(mid[p:]), "B": tuple(bot[1:])}
    anchor = None
    for cyc in d.x_inv_y.cycles:
        if len(cyc) == q:
            anchor = cyc[0]
    return Scaffold(d, runs, anchor)


def build_scaffold(figure: str, p: int, q: int, r: int | None = None) -> Scaffold:
    r = r if r is not None else q + 1
    if figure in ("Fig4",) and p < 5:
        raise ValueError("Fig4 needs p >= 5")
    if figure == "Fig4" and q < 5:
        raise ValueError("Fig4 needs q >= 5")
    if figure == "Fig6" and q < p + 1:
        raise ValueError("Fig6 needs q > p")
    w = _Work(p=p, q=q, r=r)
    if figure == "Fig4":
        return _fig4(w)
    if figure == "Fig5":
        if q % 2 == 0:
            raise ValueError("Fig5 needs odd q")
        return _fig5(w, (q + 1) // 2)
    if figure == "Fig5SingleArc":
        return _fig5(w, 1)
    if figure == "Fig6":
        return _fig6(w)
    raise ValueError(f"unknown figure {figure!r}")


def scaffold(spec: ScaffoldSpec, r: int | None = None) -> TriangleDiagram:
    """Build a figure scaffold and check it against the expected profiles."""
    from .perm import cycle_structure

    sc = build_scaffold(spec.figure, spec.p, spec.q, r)
    d = sc.diagram
    faces = cycle_structure(d.xy)
    xinvy = cycle_structure(d.x_inv_y)
    if spec.expected_face_profile is not None and faces != spec.expected_face_profile:
        raise ValueError(f"{spec.figure}: face profile {faces.to_dict()} != {dict(spec.expected_face_profile)}")
    if spec.expected_xinvy_profile is not None and xinvy != spec.expected_xinvy_profile:
        raise ValueError(f"{spec.figure}: X^-1 Y profile {xinvy.to_dict()} != {dict(spec.expected_xinvy_profile)}")
    return d


# -- brute-force search ------------------------------------------------------


@dataclass(frozen=True)
class SearchConstraints:
    """Targets for :func:`search_diagram`.

    Profiles are exact cycle-type targets; ``valid`` demands the divisibility
    conditions (scaffolds are usually not valid, so it can be switched off).
    """

    y_profile: Mapping[int, int] | None = None
    face_profile: Mapping[int, int] | None = None
    xinvy_profile: Mapping[int, int] | None = None
    min_handles: int = 0
    valid: bool = True
    connected: bool = True


@dataclass
class SearchStats:
    nodes: int = 0
    exhausted: bool = False
    y_types_tried: list[dict[int, int]] = field(default_factory=list)


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _partitions(n: int, parts: list[int]) -> Iterable[dict[int, int]]:
    parts = sorted(parts, reverse=True)

    def rec(rem, i):
        if rem == 0:
            yield {}
            return
        if i == len(parts):
            return
        size = parts[i]
        for cnt in range(rem // size, -1, -1):
            for rest in rec(rem - cnt * size, i + 1):
                out = dict(rest)
                if cnt:
                    out[size] = cnt
                yield out

    yield from rec(n, 0)


def search_diagram(
    p: int,
    q: int,
    r: int,
    n: int,
    constraints: SearchConstraints | None = None,
    max_nodes: int = 2_000_000,
    stats: SearchStats | None = None,
) -> TriangleDiagram | None:
    """Backtracking search for a diagram of degree ``n``; ``None`` if none found.

    Y is fixed to a canonical permutation of each admissible cycle type and X
    is built point by point.  Every partial cycle or path of the generated maps
    is pruned against the admissible lengths, and untouched Y-cycles of equal
    length are treated as interchangeable.
    """
    c = constraints or SearchConstraints()
    st = stats if stats is not None else SearchStats()
    if not 2 <= p < q < r or n < 1:
        st.exhausted = True
        return None
    x_lens = set(_divisors(p)) if c.valid else set(range(1, p + 1))
    if c.face_profile is not None:
        xy_lens = set(c.face_profile)
        if c.valid:
            xy_lens &= set(_divisors(r))
    else:
        xy_lens = set(_divisors(r)) if c.valid else set(range(1, n + 1))
    xiy_lens = set(c.xinvy_profile) if c.xinvy_profile is not None else None
    if c.y_profile is not None:
        y_types = [dict(c.y_profile)]
    else:
        y_types = list(_partitions(n, _divisors(q) if c.valid else list(range(1, q + 1))))
    for yt in y_types:
        if sum(k * v for k, v in yt.items()) != n:
            continue
        st.y_types_tried.append(yt)
        found = _search_x(p, q, r, n, yt, x_lens, xy_lens, xiy_lens, c, max_nodes, st)
        if found is not None:
            return found
        if st.nodes >= max_nodes:
            return None
    st.exhausted = True
    return None


def _search_x(p, q, r, n, ytype, x_lens, xy_lens, xiy_lens, c, max_nodes, st):
    y = list(range(n))
    cyc_of = [0] * n
    cycles = []
    pos = 0
    for length in sorted(ytype, reverse=True):
        for _ in range(ytype[length]):
            vs = list(range(pos, pos + length))
            for i, v in enumerate(vs):
                y[v] = vs[(i + 1) % length]
                cyc_of[v] = len(cycles)
            cycles.append(vs)
            pos += length
    yinv = [0] * n
    for v, w in enumerate(y):
        yinv[w] = v
    x = [-1] * n
    xinv = [-1] * n
    touched = [0] * len(cycles)  # number of points of the cycle involved in X so far
    max_x = max(x_lens)
    max_xy = max(xy_lens)
    max_xiy = max(xiy_lens) if xiy_lens else n

    def x_path_ok(v):
        # closed cycle through v or open chain containing v
        length = 1
        w = x[v]
        while w != -1 and w != v:
            length += 1
            w = x[w]
        if w == v:
            return length in x_lens
        u = xinv[v]
        while u != -1:
            length += 1
            u = xinv[u]
        return length <= max_x

    def xy_f(u):
        return -1 if x[u] == -1 else y[x[u]]

    def xy_b(u):
        t = yinv[u]
        return xinv[t]

    def xiy_f(u):
        t = xinv[u]
        return -1 if t == -1 else y[t]

    def xiy_b(u):
        t = yinv[u]
        return x[t]

    def xy_ok(v):
        # measure the whole XY orbit/path through v
        length = 1
        w = xy_f(v)
        while w != -1 and w != v:
            length += 1
            if length > max_xy:
                return False
            w = xy_f(w)
        if w == v:
            return length in xy_lens
        u = xy_b(v)
        while u != -1:
            length += 1
            if length > max_xy:
                return False
            u = xy_b(u)
        return True

    def xiy_ok(v):
        if xiy_lens is None:
            return True
        length = 1
        w = xiy_f(v)
        while w != -1 and w != v:
            length += 1
            if length > max_xiy:
                return False
            w = xiy_f(w)
        if w == v:
            return length in xiy_lens
        u = xiy_b(v)
        while u != -1:
            length += 1
            if length > max_xiy:
                return False
            u = xiy_b(u)
        return True

    def candidates(v):
        seen_fresh = set()
        for w in range(n):
            if xinv[w] != -1:
                continue
            ci = cyc_of[w]
            if not touched[ci] and ci != cyc_of[v]:
                key = len(cycles[ci])
                if key in seen_fresh or w != cycles[ci][0]:
                    continue
                seen_fresh.add(key)
            yield w

    def leaf():
        d = TriangleDiagram(p, q, r, Permutation(tuple(x)), Permutation(tuple(y)))
        from .diagram import analyze, validate

        if c.valid and not validate(d).valid:
            return None
        an = analyze(d)
        if c.connected and an.components != 1:
            return None
        if c.face_profile is not None and an.xy_face_lengths != c.face_profile:
            return None
        if c.xinvy_profile is not None and an.x_inv_y != c.xinvy_profile:
            return None
        if len(an.handles) < c.min_handles:
            return None
        return d

    def next_point():
        # prefer an unassigned point on an already touched Y-cycle
        best = -1
        for v in range(n):
            if x[v] == -1:
                if touched[cyc_of[v]]:
                    return v
                if best == -1:
                    best = v
        return best

    def rec():
        if st.nodes >= max_nodes:
            return None
        st.nodes += 1
        v = next_point()
        if v == -1:
            return leaf()
        if c.connected and not touched[cyc_of[v]] and any(touched):
            return None
        for w in list(candidates(v)):
            x[v] = w
            xinv[w] = v
            touched[cyc_of[v]] += 1
            touched[cyc_of[w]] += 1
            # the new arcs are v -> Y(w) in XY and w -> Y(v) in X^-1 Y
            if x_path_ok(v) and xy_ok(v) and xiy_ok(w):
                found = rec()
                if found is not None:
                    return found
            touched[cyc_of[v]] -= 1
            touched[cyc_of[w]] -= 1
            x[v] = -1
            xinv[w] = -1
        return None

    return rec()


# -- tags --------------------------------------------------------------------
# Handles and anchors are remembered through labels, which follow vertices
# through surgery even when ids are renumbered.


def _tag(label: str | None, tag: str) -> str:
    return f"{label or ''}|{tag}"


def place_handle(d: TriangleDiagram, alpha: int, name: str) -> TriangleDiagram:
    """Reserve ``(alpha, Y(alpha))`` as a handle called ``name``."""
    w = _Work(d)
    beta = w.y[alpha]
    if not is_handle(d, Handle(alpha, beta)):
        raise ValueError(f"({alpha}, {beta}) is not a handle")
    if {alpha, beta} & w.reserved:
        raise ValueError(f"handle ({alpha}, {beta}) overlaps a reserved vertex")
    for a in w.arrays.values():
        if {alpha, beta} & set(a.host):
            raise ValueError(f"handle ({alpha}, {beta}) overlaps array {a.id}")
    w.labels[alpha] = _tag(w.labels.get(alpha), f"{name}.a")
    w.labels[beta] = _tag(w.labels.get(beta), f"{name}.b")
    w.reserved |= {alpha, beta}
    return w.freeze()


def tag_vertex(d: TriangleDiagram, v: int, tag: str) -> TriangleDiagram:
    w = _Work(d)
    w.labels[v] = _tag(w.labels.get(v), tag)
    return w.freeze()


def tagged_vertex(d: TriangleDiagram, tag: str) -> int | None:
    suffix = "|" + tag
    for v, lab in d.labels.items():
        if suffix in lab and (lab.endswith(suffix) or (suffix + "|") in lab):
            return v
    return None


def tagged_handles(d: TriangleDiagram) -> list[tuple[str, Handle]]:
    """Named handles recorded by :func:`place_handle`, sorted by name."""

    alphas, betas = {}, {}
    for v, lab in d.labels.items():
        for part in lab.split("|")[1:]:
            if part.endswith(".a"):
                alphas[part[:-2]] = v
            elif part.endswith(".b"):
                betas[part[:-2]] = v
    return [(k, Handle(alphas[k], betas[k])) for k in sorted(alphas) if k in betas]
