"""Enumeration operators as finite axiom sets, plus witness verification.

An axiom ``(target, condition)`` enumerates its target from any oracle set
containing the whole condition.  Witness verification against a string is
truncated to positions below the string length; that truncation is the
declared finite-stage semantics of the whole laboratory.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .bitstrings import as_bits, string_to_set
from .errors import SchemaError

MISSING_AXIOM = "missing-axiom"
FALSE_POSITIVE = "false-positive"


@dataclass(frozen=True)
class EnumAxiom:
    """One axiom: *target* is enumerated once every member of *condition* appears."""

    target: int
    condition: frozenset[int]

    def to_json(self) -> list:
        return [self.target, sorted(self.condition)]


@dataclass(frozen=True)
class EnumOperator:
    """A finite set of axioms; duplicates and list order never matter."""

    axioms: frozenset[EnumAxiom]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, Iterable[int]]]) -> EnumOperator:
        axioms = set()
        for target, condition in pairs:
            if not isinstance(target, int) or isinstance(target, bool) or target < 0:
                raise SchemaError(f"axiom target must be a natural, got {target!r}")
            members = set()
            for element in condition:
                if not isinstance(element, int) or isinstance(element, bool) or element < 0:
                    raise SchemaError(f"axiom condition element must be a natural, got {element!r}")
                members.add(element)
            axioms.add(EnumAxiom(target, frozenset(members)))
        return cls(frozenset(axioms))

    @classmethod
    def from_json(cls, obj: object) -> EnumOperator:
        """Parse ``{"axioms": [[n, [e, ...]], ...]}``."""
        if not isinstance(obj, dict) or set(obj) != {"axioms"}:
            raise SchemaError('operator JSON must be {"axioms": [[n, [e, ...]], ...]}')
        pairs = obj["axioms"]
        if not isinstance(pairs, list):
            raise SchemaError('"axioms" must be a list')
        parsed = []
        for entry in pairs:
            if not isinstance(entry, list) or len(entry) != 2 or not isinstance(entry[1], list):
                raise SchemaError(f"axiom must be [target, [elements]], got {entry!r}")
            parsed.append((entry[0], entry[1]))
        return cls.from_pairs(parsed)

    def to_json(self) -> dict:
        ordered = sorted(self.axioms, key=lambda ax: (ax.target, sorted(ax.condition)))
        return {"axioms": [ax.to_json() for ax in ordered]}

    def evaluate(self, oracle: Iterable[int]) -> frozenset[int]:
        """Targets of every axiom whose condition is contained in the oracle.

        Monotone in both the oracle and the axiom set.
        """
        oracle = frozenset(oracle)
        return frozenset(ax.target for ax in self.axioms if ax.condition <= oracle)


@dataclass(frozen=True)
class WitnessFailure:
    position: int
    kind: str  # MISSING_AXIOM or FALSE_POSITIVE

    def to_json(self) -> dict:
        return {"m": self.position, "kind": self.kind}


@dataclass(frozen=True)
class WitnessReport:
    holds: bool
    failures: tuple[WitnessFailure, ...]

    def to_json(self) -> dict:
        return {"holds": self.holds, "failures": [f.to_json() for f in self.failures]}


def verify_enum_witness(op: EnumOperator, x: str) -> WitnessReport:
    """Check that, below ``len(x)``, the zeros of *x* are exactly the targets
    the operator enumerates from the set view of *x*.

    A zero position with no firing axiom is a ``missing-axiom`` failure; a one
    position with a firing axiom is a ``false-positive``.
    """
    as_bits(x)
    enumerated = op.evaluate(string_to_set(x))
    failures = []
    for m, ch in enumerate(x):
        if ch == "0" and m not in enumerated:
            failures.append(WitnessFailure(m, MISSING_AXIOM))
        elif ch == "1" and m in enumerated:
            failures.append(WitnessFailure(m, FALSE_POSITIVE))
    return WitnessReport(holds=not failures, failures=tuple(failures))
