"""Rightmost full-depth path through a finite prefix-closed tree, with the
enumeration-witness set accumulated along the way.

The walk starts from the empty string.  At each stage it extends by 1 when
the 1-child is in the tree; otherwise it cuts back to the greatest position
``l`` such that the cut string followed by 0 is in the tree and the cut makes
progress (``l`` is the current length, or position ``l`` currently holds 1).
A cut landing on a position already holding 0 would re-enter the branch just
abandoned and cycle, so such cuts are skipped; this is also the only reading
under which every cut strictly decreases the string lexicographically.  Every
cut appends ``(l, ones below l)`` to the witness set, which only ever grows.

Desk-scale semantics: the walk halts at the first stage whose string has full
depth, each cut (including its unbounded search for ``l``) counts as a single
stage, and "the class is nonempty" is proxied by "some full-depth node
exists".
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .bitstrings import as_bits, string_to_set
from .enumop import EnumOperator
from .errors import LabError, SchemaError

__all__ = [
    "PrefixTree",
    "TreeValidationError",
    "StuckError",
    "WitnessSet",
    "RightmostStage",
    "RightmostResult",
    "validate_tree",
    "rightmost_construct",
    "rightmost_oracle",
    "complete_tree",
    "single_path_tree",
    "random_tree",
    "tree_from_json",
]


class TreeValidationError(LabError, ValueError):
    """The node set is not a valid tree; carries every violation found."""

    kind = "invalid-tree"

    def __init__(self, violations: list[dict]):
        self.violations = violations
        super().__init__("; ".join(sorted({v["kind"] for v in violations})))

    def payload(self) -> dict:
        return {"violations": self.violations}


class StuckError(LabError):
    """No admissible cut exists; unreachable on valid trees, kept defensive."""

    kind = "stuck"

    def __init__(self, message: str, trace: list[dict]):
        self.trace = trace
        super().__init__(message)

    def payload(self) -> dict:
        return {"trace": self.trace}


@dataclass(frozen=True)
class PrefixTree:
    """A finite prefix-closed set of binary strings of length at most *depth*,
    containing the empty string and at least one full-depth node."""

    depth: int
    nodes: frozenset[str]


def validate_tree(depth: int, nodes) -> PrefixTree:
    """Check prefix closure, node lengths, and existence of a full-depth node.

    Raises :class:`TreeValidationError` listing every violation; otherwise
    returns the tree.
    """
    if not isinstance(depth, int) or isinstance(depth, bool) or depth < 0:
        raise SchemaError(f"depth must be a natural, got {depth!r}")
    node_set = frozenset(as_bits(node) for node in nodes)
    violations: list[dict] = []
    for node in sorted(node_set, key=lambda n: (len(n), n)):
        if len(node) > depth:
            violations.append({"kind": "overlong-node", "node": node})
        if node and node[:-1] not in node_set:
            violations.append({"kind": "not-prefix-closed", "node": node})
    if not any(len(node) == depth for node in node_set):
        violations.append({"kind": "empty-class"})
    if violations:
        raise TreeValidationError(violations)
    return PrefixTree(depth, node_set)


@dataclass(frozen=True)
class WitnessSet:
    """Ordered, append-only list of ``(l, condition)`` witness entries."""

    entries: tuple[tuple[int, frozenset[int]], ...]

    def as_operator(self) -> EnumOperator:
        return EnumOperator.from_pairs(self.entries)

    def to_json(self) -> list:
        return [[position, sorted(condition)] for position, condition in self.entries]


@dataclass(frozen=True)
class RightmostStage:
    s: int
    x: str
    appended: tuple[int, frozenset[int]] | None

    def to_json(self) -> dict:
        appended = None
        if self.appended is not None:
            appended = [self.appended[0], sorted(self.appended[1])]
        return {"s": self.s, "X": self.x, "appended": appended}


@dataclass(frozen=True)
class RightmostResult:
    x: str
    witness: WitnessSet
    trace: tuple[RightmostStage, ...]


def rightmost_construct(tree: PrefixTree) -> RightmostResult:
    """Walk *tree* to its rightmost full-depth node, accumulating witnesses.

    Returns the final string, the witness set (kept in insertion order, with
    repeats collapsed as set union would), and the full stage trace.  Halts
    within ``2**(depth + 1)`` stages.
    """
    x = ""
    entries: list[tuple[int, frozenset[int]]] = []
    seen: set[tuple[int, frozenset[int]]] = set()
    trace = [RightmostStage(0, x, None)]
    stage = 0
    stage_cap = 1 << (tree.depth + 2)  # strictly above the provable bound
    while len(x) < tree.depth:
        stage += 1
        if stage > stage_cap:
            raise StuckError(
                f"full depth not reached within {stage_cap} stages",
                [st.to_json() for st in trace],
            )
        if x + "1" in tree.nodes:
            x = x + "1"
            trace.append(RightmostStage(stage, x, None))
            continue
        cut = None
        for position in range(len(x), -1, -1):
            if position < len(x) and x[position] != "1":
                continue  # cutting onto a 0 re-enters the abandoned branch
            if x[:position] + "0" in tree.nodes:
                cut = position
                break
        if cut is None:
            raise StuckError(
                f"no admissible cut from {x!r}",
                [st.to_json() for st in trace],
            )
        entry = (cut, string_to_set(x[:cut]))
        if entry not in seen:
            seen.add(entry)
            entries.append(entry)
        x = x[:cut] + "0"
        trace.append(RightmostStage(stage, x, entry))
    return RightmostResult(x, WitnessSet(tuple(entries)), tuple(trace))


def rightmost_oracle(tree: PrefixTree) -> str:
    """Lexicographically greatest full-depth node, by exhaustive scan.

    Independent of the stage walk; prefix membership is re-checked even
    though closure already guarantees it.
    """
    best = None
    for node in tree.nodes:
        if len(node) != tree.depth:
            continue
        if not all(node[:k] in tree.nodes for k in range(len(node))):
            continue
        if best is None or node > best:
            best = node
    if best is None:
        raise TreeValidationError([{"kind": "empty-class"}])
    return best


def complete_tree(depth: int) -> PrefixTree:
    """The full binary tree of the given depth."""
    nodes = [""]
    for length in range(1, depth + 1):
        nodes.extend(format(value, "b").zfill(length) for value in range(1 << length))
    return validate_tree(depth, nodes)


def single_path_tree(depth: int, seed: int = 0) -> PrefixTree:
    """Prefixes of one full-depth path drawn from the seeded generator."""
    rng = random.Random(seed)
    path = "".join(rng.choice("01") for _ in range(depth))
    return validate_tree(depth, [path[:k] for k in range(depth + 1)])


def random_tree(depth: int, seed: int = 0, density: float = 0.5, ensure_path: bool = False) -> PrefixTree:
    """Keep each candidate node with probability *density*, close upward
    under prefixes, and validate.

    With ``ensure_path=True`` one seeded full-depth path is always added, so
    the result is valid for every seed; without it, unlucky seeds raise
    :class:`TreeValidationError` (empty-class).
    """
    if not 0 < density <= 1:
        raise SchemaError(f"density must be in (0, 1], got {density!r}")
    rng = random.Random(seed)
    kept: list[str] = []
    for length in range(depth + 1):
        for value in range(1 << length):
            if rng.random() < density:
                kept.append(format(value, "b").zfill(length) if length else "")
    if ensure_path:
        kept.append("".join(rng.choice("01") for _ in range(depth)))
    nodes = {node[:k] for node in kept for k in range(len(node) + 1)}
    return validate_tree(depth, nodes)


def tree_from_json(obj: object, seed_override: int | None = None) -> PrefixTree:
    """Build a tree from ``{"depth": D, "nodes": [...]}`` or a generator spec
    ``{"gen": "complete"|"single-path"|"random", "depth": D, "seed": u64,
    "density": f}``."""
    if not isinstance(obj, dict):
        raise SchemaError("tree JSON must be an object")
    if "gen" in obj:
        gen = obj["gen"]
        depth = obj.get("depth")
        if not isinstance(depth, int) or isinstance(depth, bool) or depth < 0:
            raise SchemaError(f"generator depth must be a natural, got {depth!r}")
        seed = seed_override if seed_override is not None else obj.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise SchemaError(f"seed must be an integer, got {seed!r}")
        if gen == "complete":
            return complete_tree(depth)
        if gen == "single-path":
            return single_path_tree(depth, seed)
        if gen == "random":
            if "density" not in obj:
                raise SchemaError('generator "random" requires "density"')
            density = obj["density"]
            if not isinstance(density, (int, float)) or isinstance(density, bool):
                raise SchemaError(f"density must be a number, got {density!r}")
            return random_tree(depth, seed, float(density))
        raise SchemaError(f"unknown generator {gen!r}")
    if "nodes" in obj:
        if seed_override is not None:
            raise SchemaError("a seed override only applies to generator specs")
        if "depth" not in obj:
            raise SchemaError('tree JSON requires "depth"')
        nodes = obj["nodes"]
        if not isinstance(nodes, list):
            raise SchemaError('"nodes" must be a list of bit strings')
        return validate_tree(obj["depth"], nodes)
    raise SchemaError('tree JSON must carry "nodes" or "gen"')
