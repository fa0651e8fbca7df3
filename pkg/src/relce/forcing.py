"""Pair-code witness masks, the witness-removal fixed point, danger-set
membership, finite-extension forcing, and contradiction certificates.

The witness mask of a string marks every in-range pair code ``<n, m>`` whose
first coordinate holds 1 while the code position itself holds 0; it is the
finite-stage view of coding a set by the pair codes that witness membership.
Pair codes at or beyond the string length are silently out of range.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .bitstrings import as_bits, decode_pair, encode_pair, string_to_set
from .enumop import EnumOperator
from .errors import LabError, SchemaError

DEFAULT_SCAN_CAP = 1 << 24

__all__ = [
    "DEFAULT_SCAN_CAP",
    "witness_mask",
    "recover_members",
    "danger_member",
    "FixpointStage",
    "FixpointResult",
    "MaskPreconditionError",
    "fixpoint_remove_witnesses",
    "ScanBudgetError",
    "AvoidanceResult",
    "avoidance_check",
    "Requirement",
    "ForceDecision",
    "ForceResult",
    "force_meet_or_avoid",
    "DangerCertificate",
    "NoCandidate",
    "danger_certificate",
]


class MaskPreconditionError(LabError, ValueError):
    """The fixed-point rule would not preserve the witness mask from here."""

    kind = "precondition-violated"

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        super().__init__(message)

    def payload(self) -> dict:
        return {} if self.position is None else {"position": self.position}


class ScanBudgetError(LabError):
    """An exhaustive extension scan would exceed the configured cap."""

    kind = "scan-budget-exceeded"

    def __init__(self, span: int, cap: int):
        self.span = span
        self.cap = cap
        super().__init__(f"scanning 2**{span} extensions exceeds the cap of {cap}")

    def payload(self) -> dict:
        return {"span": self.span, "cap": self.cap}


def witness_mask(sigma: str) -> str:
    """Mask of the same length whose bit at a pair code ``<n, m>`` is 1 iff
    position n holds 1 and the code position holds 0 in *sigma*."""
    as_bits(sigma)
    bits = []
    for code in range(len(sigma)):
        decoded = decode_pair(code)
        if decoded is None:
            bits.append("0")
            continue
        first, _ = decoded  # first < code, so always indexable
        bits.append("1" if sigma[first] == "1" and sigma[code] == "0" else "0")
    return "".join(bits)


def recover_members(mask: str) -> frozenset[int]:
    """First coordinates of the pair codes set in *mask*.

    Always a subset of the set view of any string whose mask this is.
    """
    as_bits(mask)
    members = set()
    for code, ch in enumerate(mask):
        if ch != "1":
            continue
        decoded = decode_pair(code)
        if decoded is not None:
            members.add(decoded[0])
    return frozenset(members)


def danger_member(sigma: str, op: EnumOperator) -> tuple[bool, int | None]:
    """Is some 1-position of *sigma* enumerated by *op* from the set view of
    the witness mask of *sigma*?  Returns the least such position as witness."""
    enumerated = op.evaluate(string_to_set(witness_mask(sigma)))
    for position, ch in enumerate(sigma):
        if ch == "1" and position in enumerated:
            return True, position
    return False, None


@dataclass(frozen=True)
class FixpointStage:
    i: int
    sigma: str
    changed: frozenset[int]

    def to_json(self) -> dict:
        return {"i": self.i, "sigma": self.sigma, "changed": sorted(self.changed)}


@dataclass(frozen=True)
class FixpointResult:
    sigma: str
    trace: tuple[FixpointStage, ...]


def _iterate_stages(sigma0: str, p: int) -> FixpointResult:
    """Run the rewrite stages with no precondition checks.

    Stage 1 sets position p; each later stage sets every in-range pair code
    whose first coordinate changed in the previous stage.  Since a code
    exceeds its first coordinate, the least changed position strictly
    increases per stage and the iteration stops within ``len(sigma0)``
    changing stages.  The trace ends with the no-change stage.
    """
    previous = sigma0
    current = sigma0[:p] + "1" + sigma0[p + 1 :]
    first_change = frozenset({p}) if sigma0[p] != "1" else frozenset()
    stages = [FixpointStage(1, current, first_change)]
    i = 1
    while stages[-1].changed:
        i += 1
        changed_before = [b for b in range(len(sigma0)) if current[b] != previous[b]]
        bits = list(current)
        changed = set()
        for first in changed_before:
            second = 0
            while True:
                code = encode_pair(first, second)
                if code >= len(sigma0):
                    break
                if bits[code] == "0":
                    bits[code] = "1"
                    changed.add(code)
                second += 1
        previous, current = current, "".join(bits)
        stages.append(FixpointStage(i, current, frozenset(changed)))
    return FixpointResult(current, tuple(stages))


def fixpoint_remove_witnesses(sigma0: str, p: int) -> FixpointResult:
    """Set position *p* of *sigma0* and iterate witness removal to a fixed point.

    Requires ``p < len(sigma0)``, position p clear, and the witness-mask bit
    at p clear: flipping a set mask bit would destroy it, and the fixed point
    would no longer share the mask of *sigma0* (see the documented negative
    example in the tests).  The result never clears a bit, sets p, and has
    the same witness mask as *sigma0*.
    """
    as_bits(sigma0)
    if not 0 <= p < len(sigma0):
        raise MaskPreconditionError(
            f"position {p} out of range for a string of length {len(sigma0)}", p
        )
    if sigma0[p] == "1":
        raise MaskPreconditionError(f"position {p} is already set", p)
    mask = witness_mask(sigma0)
    if mask[p] == "1":
        pair = decode_pair(p)
        raise MaskPreconditionError(
            f"position {p} carries mask bit 1: it codes the pair {pair} with "
            f"position {pair[0]} set and position {p} clear; setting it would "
            "destroy that mask bit",
            p,
        )
    return _iterate_stages(sigma0, p)


@dataclass(frozen=True)
class AvoidanceResult:
    holds: bool
    counterexample: str | None


def avoidance_check(
    base: str, l: int, t: int, op: EnumOperator, scan_cap: int = DEFAULT_SCAN_CAP
) -> AvoidanceResult:
    """Scan every extension of ``base[:l]`` up to length *t* for danger-set
    membership; report the shortest, then lexicographically least, hit."""
    as_bits(base)
    if not 0 <= l <= len(base) <= t:
        raise SchemaError(
            f"need 0 <= l <= len(base) <= t, got l={l}, len(base)={len(base)}, t={t}"
        )
    if (1 << (t - l)) > scan_cap:
        raise ScanBudgetError(t - l, scan_cap)
    stem = base[:l]
    for length in range(l, t + 1):
        for tail in itertools.product("01", repeat=length - l):
            candidate = stem + "".join(tail)
            hit, _ = danger_member(candidate, op)
            if hit:
                return AvoidanceResult(False, candidate)
    return AvoidanceResult(True, None)


@dataclass(frozen=True)
class Requirement:
    """One requirement: an explicit finite set of strings, or a danger-set
    spec given by an operator.  Exactly one of the two is present."""

    id: int
    members: frozenset[str] | None = None
    danger: EnumOperator | None = None

    def __post_init__(self):
        if (self.members is None) == (self.danger is None):
            raise SchemaError("requirement needs exactly one of members/danger")

    @classmethod
    def from_json(cls, obj: object) -> Requirement:
        if not isinstance(obj, dict) or "id" not in obj:
            raise SchemaError('requirement JSON must be an object with "id"')
        req_id = obj["id"]
        if not isinstance(req_id, int) or isinstance(req_id, bool) or req_id < 0:
            raise SchemaError(f"requirement id must be a natural, got {req_id!r}")
        keys = set(obj) - {"id"}
        if keys == {"members"}:
            members = obj["members"]
            if not isinstance(members, list):
                raise SchemaError('"members" must be a list of bit strings')
            return cls(req_id, members=frozenset(as_bits(m) for m in members))
        if keys == {"danger"}:
            return cls(req_id, danger=EnumOperator.from_json(obj["danger"]))
        raise SchemaError('requirement JSON must carry "members" or "danger"')

    def to_json(self) -> dict:
        if self.members is not None:
            return {"id": self.id, "members": sorted(self.members, key=lambda m: (len(m), m))}
        return {"id": self.id, "danger": self.danger.to_json()}


@dataclass(frozen=True)
class ForceDecision:
    id: int
    met: bool
    via: str | None

    def to_json(self) -> dict:
        return {"id": self.id, "met": self.met, "via": self.via}


@dataclass(frozen=True)
class ForceResult:
    sigma: str
    log: tuple[ForceDecision, ...]


def force_meet_or_avoid(
    requirements: Iterable[Requirement], t: int, scan_cap: int = DEFAULT_SCAN_CAP
) -> ForceResult:
    """Process requirements in id order by finite extension.

    For each requirement the shortest, then lexicographically least,
    extension of the current string (up to length *t*) that meets it becomes
    the new current string; requirements with no such extension are logged as
    avoided within the bound.  The final string is padded with 0s to length
    *t*.
    """
    if not isinstance(t, int) or isinstance(t, bool) or t < 0:
        raise SchemaError(f"t must be a natural, got {t!r}")
    requirements = sorted(requirements, key=lambda req: req.id)
    for req in requirements:
        if req.members is not None:
            for member in req.members:
                if len(member) > t:
                    raise SchemaError(
                        f"requirement {req.id} member {member!r} is longer than t={t}"
                    )
    sigma = ""
    log = []
    for req in requirements:
        found: str | None = None
        if req.members is not None:
            hits = sorted(
                (m for m in req.members if m.startswith(sigma)),
                key=lambda m: (len(m), m),
            )
            found = hits[0] if hits else None
        else:
            if (1 << (t - len(sigma))) > scan_cap:
                raise ScanBudgetError(t - len(sigma), scan_cap)
            for length in range(len(sigma), t + 1):
                for tail in itertools.product("01", repeat=length - len(sigma)):
                    candidate = sigma + "".join(tail)
                    if danger_member(candidate, req.danger)[0]:
                        found = candidate
                        break
                if found is not None:
                    break
        if found is not None:
            sigma = found
            log.append(ForceDecision(req.id, True, found))
        else:
            log.append(ForceDecision(req.id, False, None))
    return ForceResult(sigma.ljust(t, "0"), tuple(log))


@dataclass(frozen=True)
class DangerCertificate:
    """A string *tau* that extends ``sigma0[:l]``, keeps the witness mask of
    *sigma0*, and lands in the danger set: the certificate that *sigma0*
    cannot avoid the danger set above *l*."""

    l: int
    t: int
    p: int
    sigma0: str
    tau: str
    danger_witness: int

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "t": self.t,
            "p": self.p,
            "sigma0": self.sigma0,
            "tau": self.tau,
            "danger_witness": self.danger_witness,
        }

    @classmethod
    def from_json(cls, obj: object) -> DangerCertificate:
        if not isinstance(obj, dict):
            raise SchemaError("certificate JSON must be an object")
        try:
            return cls(
                l=obj["l"],
                t=obj["t"],
                p=obj["p"],
                sigma0=as_bits(obj["sigma0"]),
                tau=as_bits(obj["tau"]),
                danger_witness=obj["danger_witness"],
            )
        except KeyError as missing:
            raise SchemaError(f"certificate JSON lacks key {missing}") from None


@dataclass(frozen=True)
class NoCandidate:
    """No admissible target position at this stage; carries the stage-bounded
    candidate set so the caller can grow the input string."""

    candidates: frozenset[int]


def danger_certificate(
    sigma: str, l: int, op: EnumOperator
) -> DangerCertificate | NoCandidate:
    """Try to certify that *sigma* does not avoid the danger set of *op*
    above *l*.

    Candidates are the positions the operator enumerates from the witness
    mask of *sigma* but which are clear in *sigma*; the least candidate p
    with ``l < p < len(sigma)`` and a clear mask bit is set via the
    witness-removal fixed point.  The resulting string keeps the mask, so it
    still gets p enumerated, and now contains p: a danger-set member
    extending ``sigma[:l]``.
    """
    as_bits(sigma)
    if not 0 <= l <= len(sigma):
        raise SchemaError(f"need 0 <= l <= len(sigma), got l={l}, len={len(sigma)}")
    t = len(sigma)
    mask = witness_mask(sigma)
    enumerated = op.evaluate(string_to_set(mask))
    candidates = enumerated - string_to_set(sigma)
    admissible = [p for p in candidates if l < p < t and mask[p] == "0"]
    if not admissible:
        return NoCandidate(frozenset(candidates))
    p = min(admissible)
    tau = fixpoint_remove_witnesses(sigma, p).sigma
    hit, witness = danger_member(tau, op)
    if not (hit and tau.startswith(sigma[:l]) and witness_mask(tau) == mask):
        raise AssertionError("fixed point failed to produce a certificate")
    return DangerCertificate(l, t, p, sigma, tau, witness)
