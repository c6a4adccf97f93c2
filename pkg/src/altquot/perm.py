"""Permutations of {0, ..., n-1} under the right action.

Products read left to right: ``compose(a, b)`` first applies ``a`` and then
``b``, so ``compose(a, b)(v) == b(a(v))``.  This matches the path-tracing
convention used for coset diagrams, where the image of ``v`` under ``xy`` is
reached by following an x-arc and then a y-arc.
"""
from __future__ import annotations

import math
import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property

__all__ = [
    "CycleStructure",
    "Permutation",
    "compose",
    "cycle_structure",
    "identity",
    "inverse",
    "parse_cycles",
    "power",
    "structure_sum",
    "support",
]


class CycleStructure(Mapping):
    """Multiplicity of each cycle length, fixed points counted as length 1.

    Behaves as a read-only mapping ``length -> multiplicity``; lengths with
    multiplicity zero are never stored, and looking one up returns 0.
    """

    __slots__ = ("_counts",)

    def __init__(self, counts: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = counts.items() if isinstance(counts, Mapping) else counts
        clean: dict[int, int] = {}
        for length, mult in items:
            length, mult = int(length), int(mult)
            if length < 1:
                raise ValueError(f"cycle length must be positive, got {length}")
            if mult < 0:
                raise ValueError(f"multiplicity must be non-negative, got {mult}")
            if mult:
                clean[length] = clean.get(length, 0) + mult
        self._counts = dict(sorted(clean.items()))

    def __getitem__(self, length: int) -> int:
        return self._counts.get(length, 0)

    def __contains__(self, length: object) -> bool:
        return length in self._counts

    def __iter__(self) -> Iterator[int]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CycleStructure):
            return self._counts == other._counts
        if isinstance(other, Mapping):
            return self._counts == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._counts.items()))

    def __add__(self, other: CycleStructure) -> CycleStructure:
        return structure_sum(self, other)

    def __repr__(self) -> str:
        return f"CycleStructure({self._counts})"

    @property
    def degree(self) -> int:
        return sum(length * mult for length, mult in self._counts.items())

    def scaled(self, t: int) -> CycleStructure:
        return CycleStructure({k: v * t for k, v in self._counts.items()})

    def to_dict(self) -> dict[int, int]:
        return dict(self._counts)


@dataclass(frozen=True)
class Permutation:
    """An immutable bijection of ``{0, ..., degree-1}`` stored as its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        n = len(images)
        if n < 1:
            raise ValueError("a permutation needs degree >= 1")
        seen = bytearray(n)
        for v in images:
            if not 0 <= v < n or seen[v]:
                raise ValueError(f"images do not form a bijection of range({n})")
            seen[v] = 1
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Iterable[int]], degree: int) -> Permutation:
        images = list(range(degree))
        touched = set()
        for cyc in cycles:
            cyc = list(cyc)
            if touched.intersection(cyc) or len(set(cyc)) != len(cyc):
                raise ValueError("cycles must be disjoint")
            touched.update(cyc)
            for i, v in enumerate(cyc):
                images[v] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        return self.images[v]

    def __len__(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, e: int) -> Permutation:
        return power(self, e)

    def __invert__(self) -> Permutation:
        return inverse(self)

    @cached_property
    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """All disjoint cycles (fixed points included), each starting at its least point."""
        n = len(self.images)
        seen = bytearray(n)
        out = []
        img = self.images
        for start in range(n):
            if seen[start]:
                continue
            cyc = []
            v = start
            while not seen[v]:
                seen[v] = 1
                cyc.append(v)
                v = img[v]
            out.append(tuple(cyc))
        return tuple(out)

    def nontrivial_cycles(self) -> list[tuple[int, ...]]:
        return [c for c in self.cycles if len(c) > 1]

    @property
    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles))

    def sign(self) -> int:
        """+1 for even permutations, -1 for odd ones."""
        odd = sum(len(c) - 1 for c in self.cycles) % 2
        return -1 if odd else 1

    def to_cycle_string(self) -> str:
        cyc = self.nontrivial_cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __str__(self) -> str:
        return self.to_cycle_string()


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a`` then ``b``: the result sends ``v`` to ``b(a(v))``."""
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    bi = b.images
    return Permutation(tuple(bi[v] for v in a.images))


def inverse(a: Permutation) -> Permutation:
    out = [0] * a.degree
    for i, v in enumerate(a.images):
        out[v] = i
    return Permutation(tuple(out))


def power(a: Permutation, e: int) -> Permutation:
    # Computed per cycle, so large exponents cost O(n).
    if e < 0:
        return power(inverse(a), -e)
    out = list(range(a.degree))
    for cyc in a.cycles:
        k = len(cyc)
        shift = e % k
        if shift:
            for i, v in enumerate(cyc):
                out[v] = cyc[(i + shift) % k]
    return Permutation(tuple(out))


def cycle_structure(a: Permutation) -> CycleStructure:
    counts: dict[int, int] = {}
    for c in a.cycles:
        counts[len(c)] = counts.get(len(c), 0) + 1
    return CycleStructure(counts)


def structure_sum(*structures: CycleStructure) -> CycleStructure:
    total: dict[int, int] = {}
    for s in structures:
        for length, mult in s.items():
            total[length] = total.get(length, 0) + mult
    return CycleStructure(total)


def support(a: Permutation) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(a.images) if i != v)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation such as ``"(0 1 2)(3 4)"``; commas are also accepted.

    Without ``degree`` the permutation is as small as the largest point allows.
    """
    stripped = _CYCLE_RE.sub("", text).strip()
    if stripped:
        raise ValueError(f"unexpected text outside cycles: {stripped!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        pts = [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
        if pts:
            cycles.append(pts)
    top = max((max(c) for c in cycles), default=0) + 1
    if degree is None:
        degree = top
    elif degree < top:
        raise ValueError(f"degree {degree} too small for point {top - 1}")
    return Permutation.from_cycles(cycles, degree)
