from __future__ import annotations

import random

import pytest

from relce import (
    DangerCertificate,
    EnumOperator,
    MaskPreconditionError,
    NoCandidate,
    Requirement,
    ScanBudgetError,
    SchemaError,
    avoidance_check,
    danger_certificate,
    danger_member,
    fixpoint_remove_witnesses,
    force_meet_or_avoid,
    recover_members,
    string_to_set,
    witness_mask,
)
from relce.forcing import _iterate_stages

from helpers import ones, random_bits, ref_mask


def test_mask_examples():
    assert witness_mask("1010") == "0101"
    assert witness_mask("0000") == "0000"
    assert witness_mask("1111") == "0000"
    assert witness_mask("") == ""
    assert witness_mask("1") == "0"


def test_mask_agrees_with_reference():
    rng = random.Random(31)
    for _ in range(300):
        sigma = random_bits(rng, rng.randrange(0, 14))
        assert witness_mask(sigma) == ref_mask(sigma)


def test_recover_examples():
    assert recover_members("0101") == {0}
    assert recover_members("0000") == frozenset()
    assert recover_members("1") == frozenset()  # position 0 is not a code
    assert recover_members(witness_mask("1010")) == {0}
    assert recover_members(witness_mask("1010")) <= string_to_set("1010")


def test_danger_member_examples():
    op = EnumOperator.from_pairs([(0, {1})])
    assert danger_member("1010", op) == (True, 0)
    assert danger_member("0010", op) == (False, None)
    assert danger_member("1010", EnumOperator.from_pairs([])) == (False, None)


def test_danger_member_returns_least_witness():
    # both 1 and 3 are set and enumerated; 1 is the least
    op = EnumOperator.from_pairs([(1, ()), (3, ())])
    assert danger_member("0101", op) == (True, 1)


def test_fixpoint_worked_examples():
    result = fixpoint_remove_witnesses("000000", 1)
    assert result.sigma == "011010"
    assert [(st.i, st.sigma, sorted(st.changed)) for st in result.trace] == [
        (1, "010000", [1]),
        (2, "011000", [2]),
        (3, "011010", [4]),
        (4, "011010", []),
    ]
    assert witness_mask("011010") == witness_mask("000000")

    result = fixpoint_remove_witnesses("1000", 2)
    assert result.sigma == "1010"
    assert witness_mask("1010") == witness_mask("1000") == "0101"

    assert fixpoint_remove_witnesses("00", 1).sigma == "01"


def test_fixpoint_precondition_errors():
    with pytest.raises(MaskPreconditionError):
        fixpoint_remove_witnesses("0000", 4)
    with pytest.raises(MaskPreconditionError):
        fixpoint_remove_witnesses("0000", -1)
    with pytest.raises(MaskPreconditionError):
        fixpoint_remove_witnesses("0100", 1)
    with pytest.raises(MaskPreconditionError) as excinfo:
        fixpoint_remove_witnesses("10", 1)
    # the diagnostic names the mask bit the flip would destroy
    assert "(0, 0)" in str(excinfo.value)
    assert excinfo.value.position == 1


def test_documented_negative_running_the_rule_anyway():
    # with the mask bit at p set, the rule breaks mask preservation
    result = _iterate_stages("10", 1)
    assert result.sigma == "11"
    assert witness_mask("11") == "00"
    assert witness_mask("10") == "01"
    assert witness_mask(result.sigma) != witness_mask("10")


def test_avoidance_examples():
    empty = EnumOperator.from_pairs([])
    assert avoidance_check("0110", 2, 6, empty).holds
    op = EnumOperator.from_pairs([(0, {1})])
    result = avoidance_check("", 0, 2, op)
    assert not result.holds
    assert result.counterexample == "10"
    assert avoidance_check("00", 2, 2, op).holds


def test_avoidance_counterexample_is_shortest_then_least():
    # every string containing a set bit 0 beyond the stem is dangerous here
    op = EnumOperator.from_pairs([(0, ())])
    result = avoidance_check("00", 0, 3, op)
    assert result.counterexample == "1"


def test_avoidance_budget():
    op = EnumOperator.from_pairs([])
    with pytest.raises(ScanBudgetError):
        avoidance_check("", 0, 30, op, scan_cap=1 << 20)
    with pytest.raises(SchemaError):
        avoidance_check("01", 1, 1, op)


def test_force_worked_examples():
    result = force_meet_or_avoid([Requirement(0, members=frozenset({"1"}))], 2)
    assert result.sigma == "10"
    assert [(d.id, d.met, d.via) for d in result.log] == [(0, True, "1")]

    result = force_meet_or_avoid([], 3)
    assert result.sigma == "000"
    assert result.log == ()

    result = force_meet_or_avoid(
        [Requirement(0, members=frozenset({"11"})), Requirement(1, members=frozenset({"110"}))],
        3,
    )
    assert result.sigma == "110"
    assert all(d.met for d in result.log)


def test_force_processes_in_id_order_and_avoids():
    reqs = [
        Requirement(2, members=frozenset({"0"})),  # incompatible with "11" by then
        Requirement(1, members=frozenset({"11"})),
    ]
    result = force_meet_or_avoid(reqs, 3)
    assert result.sigma == "110"
    assert [(d.id, d.met) for d in result.log] == [(1, True), (2, False)]


def test_force_danger_requirement():
    op = EnumOperator.from_pairs([(0, {1})])
    result = force_meet_or_avoid([Requirement(0, danger=op)], 3)
    # the least dangerous extension of the empty string is "10"
    assert result.log[0].met and result.log[0].via == "10"
    assert result.sigma == "100"


def test_force_member_length_validation():
    with pytest.raises(SchemaError):
        force_meet_or_avoid([Requirement(0, members=frozenset({"0101"}))], 3)


def test_requirement_needs_exactly_one_payload():
    with pytest.raises(SchemaError):
        Requirement(0)
    with pytest.raises(SchemaError):
        Requirement(0, members=frozenset(), danger=EnumOperator.from_pairs([]))
    assert Requirement.from_json({"id": 1, "members": ["01"]}).members == {"01"}
    assert Requirement.from_json({"id": 1, "danger": {"axioms": []}}).danger is not None
    with pytest.raises(SchemaError):
        Requirement.from_json({"id": 1, "members": ["0"], "danger": {"axioms": []}})


def test_certificate_worked_example():
    op = EnumOperator.from_pairs([(2, {1})])
    cert = danger_certificate("1000", 1, op)
    assert isinstance(cert, DangerCertificate)
    assert cert.to_json() == {
        "l": 1,
        "t": 4,
        "p": 2,
        "sigma0": "1000",
        "tau": "1010",
        "danger_witness": 2,
    }


def test_certificate_no_candidates():
    op = EnumOperator.from_pairs([(2, {1})])
    silent = danger_certificate("0000", 0, op)
    assert isinstance(silent, NoCandidate)
    assert silent.candidates == frozenset()
    shadowed = danger_certificate("1000", 3, op)
    assert isinstance(shadowed, NoCandidate)
    assert shadowed.candidates == {2}


def test_certificate_implies_avoidance_counterexample():
    op = EnumOperator.from_pairs([(2, {1})])
    cert = danger_certificate("1000", 1, op)
    scan = avoidance_check(cert.sigma0, cert.l, cert.t, op)
    assert not scan.holds
    assert danger_member(scan.counterexample, op)[0]


def test_fixpoint_properties_random_sample():
    rng = random.Random(47)
    for _ in range(300):
        sigma0 = random_bits(rng, rng.randrange(1, 14))
        mask = witness_mask(sigma0)
        valid = [p for p in range(len(sigma0)) if sigma0[p] == "0" and mask[p] == "0"]
        if not valid:
            continue
        p = rng.choice(valid)
        result = fixpoint_remove_witnesses(sigma0, p)
        assert result.sigma[p] == "1"
        assert ones(sigma0) <= ones(result.sigma)
        assert witness_mask(result.sigma) == mask
        changing = [st for st in result.trace if st.changed]
        mins = [min(st.changed) for st in changing]
        assert mins == sorted(set(mins))
        assert len(changing) <= len(sigma0)
        assert result.trace[-1].changed == frozenset()
