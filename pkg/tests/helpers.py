"""Shared test utilities: independent reference oracles and tree generators.

The reference functions here deliberately reimplement the production logic
with different algorithms (trial division instead of bit tricks, raw pair
lists instead of operator objects) so tests can cross-check results against
an independent derivation.
"""
from __future__ import annotations

import random

from relce import PrefixTree, validate_tree


def ref_decode(code: int) -> tuple[int, int] | None:
    if code == 0:
        return None
    exponent = 0
    while code % 2 == 0:
        code //= 2
        exponent += 1
    return exponent, (code - 1) // 2


def ref_mask(sigma: str) -> str:
    out = []
    for code in range(len(sigma)):
        decoded = ref_decode(code)
        hit = decoded is not None and sigma[decoded[0]] == "1" and sigma[code] == "0"
        out.append("1" if hit else "0")
    return "".join(out)


def ref_evaluate(pairs, oracle) -> set[int]:
    oracle = set(oracle)
    return {target for target, condition in pairs if set(condition) <= oracle}


def ones(sigma: str) -> set[int]:
    return {i for i, ch in enumerate(sigma) if ch == "1"}


def all_tree_shapes(height: int) -> list[frozenset[str]]:
    """Every prefix-closed node set containing the empty string, within the
    complete binary tree of the given height.  676 shapes for height 3."""
    if height == 0:
        return [frozenset({""})]
    smaller = all_tree_shapes(height - 1)
    options = [None] + smaller
    shapes = []
    for left in options:
        for right in options:
            nodes = {""}
            if left is not None:
                nodes |= {"0" + node for node in left}
            if right is not None:
                nodes |= {"1" + node for node in right}
            shapes.append(frozenset(nodes))
    return shapes


def shape_as_tree(nodes: frozenset[str]) -> PrefixTree:
    """Use a shape at its own depth (its maximum node length)."""
    return validate_tree(max(len(node) for node in nodes), nodes)


def junk_tree(depth: int, rng: random.Random) -> PrefixTree:
    """Random full-depth paths plus random junk nodes, closed under prefixes.

    The junk creates dead ends, which is what exercises backtracking.
    """
    kept = []
    for _ in range(rng.randint(1, 3)):
        kept.append("".join(rng.choice("01") for _ in range(depth)))
    for _ in range(rng.randint(0, 2 * depth)):
        length = rng.randint(1, depth)
        kept.append("".join(rng.choice("01") for _ in range(length)))
    nodes = {node[:cut] for node in kept for cut in range(len(node) + 1)}
    return validate_tree(depth, nodes)


def random_bits(rng: random.Random, length: int) -> str:
    return "".join(rng.choice("01") for _ in range(length))
