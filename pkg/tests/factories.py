"""Random inputs shared by the property tests and the acceptance suite."""
from __future__ import annotations

import random

from altquot import builders as B
from altquot.builders import ArraySpec, ConnectorType
from altquot.diagram import Handle, TriangleDiagram, handles_of
from altquot.perm import Permutation

# (p, q, r) triples where a single q-gon with pendants can reach face length r
PENDANT_TRIPLES = [
    (3, 5, 7), (3, 7, 11), (3, 11, 13), (5, 7, 11), (5, 11, 13),
    (5, 13, 17), (7, 11, 13), (7, 13, 17), (7, 17, 19), (11, 13, 17),
]


def pendant_types(rng: random.Random, p: int, gain: int, room: int) -> list[int] | None:
    """Random pendant types with total face gain ``gain`` using at most ``room`` vertices."""
    for _ in range(200):
        ks: list[int] = []
        total = 0
        while total != gain and len(ks) < 6:
            k = rng.randint(1, p)
            ks.append(k)
            total += p - 2 * k + 1
        if total == gain and sum(ks) <= room:
            return ks
    return None


def random_valid_part(rng: random.Random, p: int, q: int, r: int) -> TriangleDiagram:
    """A decorated q-gon whose only non-trivial xy-face has length r."""
    while True:
        ks = pendant_types(rng, p, r - q, q - 2)
        if ks is None:
            continue
        d = B.qgon(q, p, r)
        gon = d.assembly.gons["Q"]
        start = rng.randrange(q)
        run = [gon[(start + i) % q] for i in range(q)]
        return B.attach_array(d, run, ArraySpec(tuple(ks)), "A")


def disjoint_handles(d: TriangleDiagram) -> list[Handle]:
    used: set[int] = set()
    out = []
    for h in handles_of(d):
        if h.alpha in used or h.beta in used:
            continue
        used.update(h.as_tuple())
        out.append(h)
    return out


def random_composable(rng: random.Random, triple=None):
    """Parts and a handle assignment summing to p, each part giving at least one."""
    while True:
        p, q, r = triple or rng.choice(PENDANT_TRIPLES)
        t = rng.randint(1, p)
        parts = [random_valid_part(rng, p, q, r) for _ in range(t)]
        pools = [disjoint_handles(d) for d in parts]
        if any(not hs for hs in pools) or sum(len(hs) for hs in pools) < p:
            continue
        take = [1] * t
        while sum(take) < p:
            i = rng.randrange(t)
            if take[i] < len(pools[i]):
                take[i] += 1
        chosen = []
        for hs, k in zip(pools, take):
            hs = hs[:]
            rng.shuffle(hs)
            chosen.append(hs[:k])
        return list(zip(parts, chosen))


def random_connector(rng: random.Random, p: int, first_max: int) -> ConnectorType:
    """Two attached parts plus optional wedge parts, sizes summing to p."""
    while True:
        wedges = rng.choice([0, 0, 0, rng.randint(1, max(1, p - 2))]) if p > 2 else 0
        rest = p - wedges
        if rest < 2:
            continue
        a = rng.randint(1, min(rest - 1, first_max))
        b = rest - a
        parts: list[int | str] = [a]
        if wedges:
            split = rng.randint(0, wedges)
            if split:
                parts.append(f"~{split}")
            parts.append(b)
            if wedges - split:
                parts.append(f"~{wedges - split}")
        else:
            parts.append(b)
        return ConnectorType.of(*parts)


def random_array_spec(rng: random.Random, p: int, q: int, max_m: int = 3) -> ArraySpec:
    """Random feasible spec whose host footprint fits on a q-gon."""
    while True:
        pend = tuple(rng.randint(1, p) for _ in range(rng.randint(0, 3)))
        m = rng.randint(0, max_m) if q % p else 0
        chain: list[ConnectorType] = []
        prev_tail = None
        for _ in range(m):
            first_max = p - 1 if prev_tail is None else p - prev_tail
            if first_max < 1:
                break
            c = random_connector(rng, p, first_max)
            chain.append(c)
            prev_tail = c.attached[1]
        spec = ArraySpec(pend, tuple(chain))
        if spec.host_footprint() <= q:
            spec.validate(p, q)
            return spec


def random_transitive(rng: random.Random, n: int) -> list[Permutation]:
    """Two generators acting transitively; about half preserve a pairing into blocks."""
    while True:
        gens = [Permutation(tuple(rng.sample(range(n), n))) for _ in range(2)]
        if rng.random() < 0.5:
            # bias toward imprimitive groups: preserve the blocks {i, i + n/2}
            if n % 2 == 0:
                h = n // 2
                perm_blocks = rng.sample(range(h), h)
                flips = [rng.random() < 0.5 for _ in range(h)]
                img = [0] * n
                for i in range(h):
                    a, b = perm_blocks[i], perm_blocks[i] + h
                    if flips[i]:
                        a, b = b, a
                    img[i], img[i + h] = a, b
                gens[1] = Permutation(tuple(img))
                gens[0] = Permutation.from_cycles([tuple(range(h)), tuple(range(h, n))], n)
        orb, todo = {0}, [0]
        while todo:
            v = todo.pop()
            for g in gens:
                if g(v) not in orb:
                    orb.add(g(v))
                    todo.append(g(v))
        if len(orb) == n:
            return gens
