"""Random diagram codes for property tests."""

from __future__ import annotations

import random

from yinv.diagram import MarkedGraphDiagram, Node


def random_code(rng: random.Random, nodes: int, kinds: str = "X", loops: int = 0) -> MarkedGraphDiagram:
    """Pair up the 4n slots at random; the result need not be planar."""
    slots = list(range(4 * nodes))
    rng.shuffle(slots)
    label = [0] * (4 * nodes)
    for k in range(0, len(slots), 2):
        label[slots[k]] = label[slots[k + 1]] = k // 2 + 1
    out = tuple(Node(rng.choice(kinds), tuple(label[4 * i:4 * i + 4])) for i in range(nodes))
    return MarkedGraphDiagram(out, loops)
