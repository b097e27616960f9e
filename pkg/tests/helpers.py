from __future__ import annotations

import random

from cospec.graphs import CoalescingSpec, Partition, RootedGraph, random_connected_graph


def random_rooted(rng: random.Random, max_n: int = 3) -> RootedGraph:
    n = rng.randint(1, max_n)
    return RootedGraph(random_connected_graph(n, rng, p=0.4), rng.randrange(n))


def random_partition(n: int, rng: random.Random) -> Partition:
    verts = list(range(n))
    rng.shuffle(verts)
    k = rng.randint(1, n)
    cuts = sorted(rng.sample(range(1, n), k - 1))
    classes = [verts[a:b] for a, b in zip([0] + cuts, cuts + [n])]
    return Partition.of(classes, n)


def random_spec(rng: random.Random, max_base: int = 6, max_h: int = 3) -> CoalescingSpec:
    n = rng.randint(1, max_base)
    base = random_connected_graph(n, rng, p=0.35)
    part = random_partition(n, rng)
    atts = tuple(random_rooted(rng, max_h) for _ in part.classes)
    return CoalescingSpec(base, part, atts)
