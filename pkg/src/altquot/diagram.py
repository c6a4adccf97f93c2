"""Coset diagrams for triangle groups (p, q, r) as pairs of permutations.

A diagram on ``n`` vertices is given by ``X`` and ``Y``; following an x-arc
from ``v`` lands on ``X(v)``.  Faces are modelled combinatorially: x-faces are
the cycles of ``X``, y-faces the cycles of ``Y`` and xy-faces the cycles of
``XY``.  The number of y-arcs bounding an xy-face is the length of its cycle.
"""
from __future__ import annotations

import json
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import TYPE_CHECKING, Any

from . import perm as P
from .perm import CycleStructure, Permutation

if TYPE_CHECKING:
    from .builders import ArrayRecord

__all__ = [
    "Assembly",
    "DiagramAnalysis",
    "Handle",
    "TriangleDiagram",
    "ValidationReport",
    "analyze",
    "bad_cycles",
    "compose",
    "components",
    "disjoint_union",
    "export_dot",
    "from_json",
    "is_connected",
    "to_json",
    "validate",
    "x_inv_y",
]


@dataclass(frozen=True)
class Handle:
    """Two X-fixed vertices with ``Y(alpha) == beta``."""

    alpha: int
    beta: int

    def shifted(self, offset: int) -> Handle:
        return Handle(self.alpha + offset, self.beta + offset)

    def as_tuple(self) -> tuple[int, int]:
        return (self.alpha, self.beta)


@dataclass(frozen=True)
class Assembly:
    """How a diagram was put together; lets the builders perform surgery.

    ``gons`` maps a name to the vertices of a q-gon in Y order.  ``reserved``
    holds vertices (handles, mostly) that surgery must leave free.
    """

    gons: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    arrays: Mapping[str, ArrayRecord] = field(default_factory=dict)
    reserved: frozenset[int] = frozenset()


@dataclass(frozen=True, eq=False)
class TriangleDiagram:
    p: int
    q: int
    r: int
    x: Permutation
    y: Permutation
    labels: Mapping[int, str] = field(default_factory=dict)
    assembly: Assembly | None = None

    def __post_init__(self):
        if self.x.degree != self.y.degree:
            raise ValueError("X and Y must act on the same vertex set")
        if not 2 <= self.p < self.q < self.r:
            raise ValueError(f"need 2 <= p < q < r, got {(self.p, self.q, self.r)}")
        object.__setattr__(self, "labels", MappingProxyType(dict(self.labels)))

    @property
    def n(self) -> int:
        return self.x.degree

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TriangleDiagram):
            return NotImplemented
        return (
            (self.p, self.q, self.r) == (other.p, other.q, other.r)
            and self.x == other.x
            and self.y == other.y
            and dict(self.labels) == dict(other.labels)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def xy(self) -> Permutation:
        return P.compose(self.x, self.y)

    @property
    def x_inv_y(self) -> Permutation:
        return x_inv_y(self)

    def with_labels(self, labels: Mapping[int, str]) -> TriangleDiagram:
        return TriangleDiagram(self.p, self.q, self.r, self.x, self.y, labels, self.assembly)

    def __repr__(self) -> str:
        return f"TriangleDiagram(p={self.p}, q={self.q}, r={self.r}, n={self.n})"


def x_inv_y(d: TriangleDiagram) -> Permutation:
    return P.compose(P.inverse(d.x), d.y)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.valid


def validate(d: TriangleDiagram) -> ValidationReport:
    """Check that each cycle length divides the order prescribed for its permutation."""
    violations = []
    for name, perm, order in (("X", d.x, d.p), ("Y", d.y, d.q), ("XY", d.xy, d.r)):
        for length in P.cycle_structure(perm):
            if order % length:
                violations.append(f"{name}-cycle length {length} ∤ {order}")
    return ValidationReport(not violations, tuple(violations))


@dataclass(frozen=True)
class DiagramAnalysis:
    free: frozenset[int]
    wedges: frozenset[int]
    xy_face_lengths: CycleStructure
    x_inv_y: CycleStructure
    handles: tuple[Handle, ...]
    components: int


def components(d: TriangleDiagram) -> list[list[int]]:
    """Orbits of <X, Y>, each sorted, ordered by least element."""
    n = d.n
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for perm in (d.x, d.y):
        for v, w in enumerate(perm.images):
            a, b = find(v), find(w)
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return [groups[k] for k in sorted(groups)]


def is_connected(d: TriangleDiagram) -> bool:
    return len(components(d)) == 1


def handles_of(d: TriangleDiagram) -> list[Handle]:
    x, y = d.x.images, d.y.images
    return [Handle(v, y[v]) for v in range(d.n) if x[v] == v and y[v] != v and x[y[v]] == y[v]]


def analyze(d: TriangleDiagram) -> DiagramAnalysis:
    x, y = d.x.images, d.y.images
    return DiagramAnalysis(
        free=frozenset(v for v in range(d.n) if x[v] == v),
        wedges=frozenset(v for v in range(d.n) if y[v] == v),
        xy_face_lengths=P.cycle_structure(d.xy),
        x_inv_y=P.cycle_structure(x_inv_y(d)),
        handles=tuple(handles_of(d)),
        components=len(components(d)),
    )


def is_handle(d: TriangleDiagram, h: Handle) -> bool:
    x, y = d.x.images, d.y.images
    n = d.n
    if not (0 <= h.alpha < n and 0 <= h.beta < n) or h.alpha == h.beta:
        return False
    return x[h.alpha] == h.alpha and x[h.beta] == h.beta and y[h.alpha] == h.beta


def disjoint_union(diagrams: Sequence[TriangleDiagram]) -> tuple[TriangleDiagram, list[int]]:
    """Juxtapose diagrams; returns the union and the vertex offset of each part."""
    if not diagrams:
        raise ValueError("nothing to join")
    pqr = {(d.p, d.q, d.r) for d in diagrams}
    if len(pqr) != 1:
        raise ValueError(f"parts disagree on (p, q, r): {sorted(pqr)}")
    xs: list[int] = []
    ys: list[int] = []
    labels: dict[int, str] = {}
    offsets = []
    for d in diagrams:
        off = len(xs)
        offsets.append(off)
        xs.extend(v + off for v in d.x.images)
        ys.extend(v + off for v in d.y.images)
        labels.update({v + off: lab for v, lab in d.labels.items()})
    p, q, r = pqr.pop()
    return TriangleDiagram(p, q, r, Permutation(tuple(xs)), Permutation(tuple(ys)), labels), offsets


def compose(parts: Sequence[tuple[TriangleDiagram, Sequence[Handle]]]) -> TriangleDiagram:
    """Higman composition of diagrams along exactly p handles.

    Parts are laid side by side in argument order.  The handles, in the order
    supplied, become ``alpha_1 .. alpha_p``; the x-loops at these vertices are
    replaced by x-edges ``alpha_j -> alpha_{j+1}`` and ``beta_j -> beta_{j-1}``.
    """
    if not parts:
        raise ValueError("nothing to compose")
    p = parts[0][0].p
    if len(parts) > p:
        raise ValueError(f"at most p = {p} parts may be composed, got {len(parts)}")
    total = sum(len(hs) for _, hs in parts)
    if total != p:
        raise ValueError(f"composition needs exactly p = {p} handles, got {total}")
    for i, (d, hs) in enumerate(parts):
        if not hs:
            raise ValueError(f"part {i} contributes no handle")
        used: set[int] = set()
        for h in hs:
            if not is_handle(d, h):
                raise ValueError(f"part {i}: {h} is not a handle")
            if h.alpha in used or h.beta in used:
                raise ValueError(f"part {i}: handles overlap at {h}")
            used.update(h.as_tuple())
    union, offsets = disjoint_union([d for d, _ in parts])
    alphas, betas = [], []
    for (d, hs), off in zip(parts, offsets):
        for h in hs:
            alphas.append(h.alpha + off)
            betas.append(h.beta + off)
    x = list(union.x.images)
    for j in range(p):
        x[alphas[j]] = alphas[(j + 1) % p]
        x[betas[j]] = betas[(j - 1) % p]
    return TriangleDiagram(union.p, union.q, union.r, Permutation(tuple(x)), union.y, union.labels)


def bad_cycles(d: TriangleDiagram, designated: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Cycles of X^-1 Y with length divisible by q, other than ``designated``."""
    cycles = [c for c in x_inv_y(d).cycles if len(c) % d.q == 0]
    if designated is None:
        return cycles
    target = frozenset(designated)
    keep = [c for c in cycles if frozenset(c) != target]
    if len(keep) == len(cycles):
        all_cycles = {frozenset(c) for c in x_inv_y(d).cycles}
        if target not in all_cycles:
            raise ValueError("designated vertices do not form a cycle of X^-1 Y")
    return keep


# -- serialization ---------------------------------------------------------


def to_dict(d: TriangleDiagram) -> dict[str, Any]:
    return {
        "p": d.p,
        "q": d.q,
        "r": d.r,
        "n": d.n,
        "x": list(d.x.images),
        "y": list(d.y.images),
        "labels": {str(k): v for k, v in sorted(d.labels.items())},
    }


def from_dict(obj: Mapping[str, Any]) -> TriangleDiagram:
    x = Permutation(tuple(obj["x"]))
    y = Permutation(tuple(obj["y"]))
    if "n" in obj and obj["n"] != x.degree:
        raise ValueError(f"declared n={obj['n']} but permutations have degree {x.degree}")
    labels = {int(k): str(v) for k, v in obj.get("labels", {}).items()}
    return TriangleDiagram(int(obj["p"]), int(obj["q"]), int(obj["r"]), x, y, labels)


def to_json(d: TriangleDiagram) -> str:
    return json.dumps(to_dict(d), separators=(",", ":"))


def from_json(text: str) -> TriangleDiagram:
    return from_dict(json.loads(text))


def export_dot(d: TriangleDiagram) -> str:
    """Graphviz text: X-arcs solid, Y-arcs dashed, free vertices doubled."""
    x, y = d.x.images, d.y.images
    lines = [f'digraph "triangle_{d.p}_{d.q}_{d.r}" {{']
    for v in range(d.n):
        attrs = []
        if x[v] == v:
            attrs.append("shape=doublecircle")
        if v in d.labels:
            attrs.append('label="{}: {}"'.format(v, d.labels[v].replace('"', "'")))
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for v in range(d.n):
        if x[v] != v:
            lines.append(f"  {v} -> {x[v]} [style=solid];")
    for v in range(d.n):
        if y[v] != v:
            lines.append(f"  {v} -> {y[v]} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
