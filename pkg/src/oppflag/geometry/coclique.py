"""Exact maximum coclique search: branch and bound with greedy colouring.

A coclique of the opposition graph is a clique of its complement, so the
search runs a colouring-bounded clique search on the complement, with
vertex sets held as Python integers used as bitsets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .. import budget
from .graph import OppositionGraph


@dataclass
class CocliqueResult:
    size: int
    witness: tuple
    proven: bool
    nodes: int

    def to_json(self) -> dict:
        return {"max_coclique": self.size, "proven_optimal": self.proven, "witness": list(self.witness), "nodes": self.nodes}


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _colour_order(P: int, nbrs: list[int]) -> tuple[list[int], list[int]]:
    """Greedy colouring of P: vertices in colour order with their colour numbers."""
    order, colours = [], []
    uncoloured, colour = P, 0
    while uncoloured:
        colour += 1
        avail = uncoloured
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~nbrs[v] & ~(1 << v)
            uncoloured &= ~(1 << v)
            order.append(v)
            colours.append(colour)
    return order, colours


def max_coclique(graph: OppositionGraph, upper_hint: Optional[int] = None, node_budget: Optional[int] = None) -> CocliqueResult:
    """Largest coclique of the graph.

    ``upper_hint`` is a known upper bound (for example the Hoffman bound); the
    search stops as soon as a coclique of that size is found, which is then
    certified optimal.  If the node budget runs out the best coclique found so
    far is returned with ``proven`` False.
    """
    n = graph.order
    budget.check("coclique", n)
    limit = budget.budget("coclique_nodes") if node_budget is None else node_budget
    if n == 0:
        return CocliqueResult(0, (), True, 0)
    comp = ~graph.adjacency
    np.fill_diagonal(comp, False)
    nbrs = [int("".join("1" if x else "0" for x in row[::-1]), 2) for row in comp]
    best: list[int] = []
    nodes = 0
    stop = False
    target = n if upper_hint is None else min(n, int(upper_hint))

    def expand(R: list[int], P: int):
        nonlocal best, nodes, stop
        order, colours = _colour_order(P, nbrs)
        for idx in range(len(order) - 1, -1, -1):
            if stop:
                return
            if len(R) + colours[idx] <= len(best):
                return
            nodes += 1
            if nodes > limit:
                stop = True
                return
            v = order[idx]
            R.append(v)
            newP = P & nbrs[v]
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best = list(R)
                if len(best) >= target:
                    stop = True
            R.pop()
            P &= ~(1 << v)

    expand([], (1 << n) - 1)
    proven = nodes <= limit or len(best) >= target
    return CocliqueResult(len(best), tuple(sorted(best)), proven, nodes)
