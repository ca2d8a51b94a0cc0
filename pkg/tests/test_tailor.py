import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracgb import oracle
from fracgb.errors import ContradictionError
from fracgb.instances import (
    NOT2,
    OXR,
    FixedTerm,
    Not2Predicate,
    OxrPredicate,
    PredicateInstance,
    SignedLiteral,
    generate_satisfiable,
    parse_instance,
)
from fracgb.tailor import (
    KEEP_CASES,
    LonerRound,
    TailoringRecord,
    check_property1,
    check_property2,
    check_two_fifths,
    classify_not2,
    classify_oxr,
    reinsert_loners,
    tailor,
    tailor_not2,
    tailor_oxr,
)

from strategies import instances

L = SignedLiteral


# four predicates over l1..l4, every literal in at least two
PAIR_FREE = ["1 2 3", "1 2 4", "3 4 1", "2 3 4"]


def _inst(kind, n, lines):
    return parse_instance(f"p {kind} {n} {len(lines)}\n" + "\n".join(lines) + "\n")


# -- Not-2 cases -------------------------------------------------------------------


def test_case_2a_fixes_single_true():
    inst = _inst(NOT2, 4, PAIR_FREE + ["1 1 -1"])
    out, rec = tailor_not2(inst)
    assert rec.fixed_literals == {0: 0}
    assert (5, "2a") in rec.removed_trivial
    # x1 = 0: slots read 0, 0, 1
    assert inst.by_id()[5].total({0: 0}) == 1


def test_case_3b_forces_third_false():
    inst = _inst(NOT2, 4, PAIR_FREE + ["1 -1 2"])
    _, rec = tailor_not2(inst)
    assert rec.fixed_literals[1] == 0
    assert (5, "3b") in rec.removed_trivial


@pytest.mark.parametrize(
    "slots, code, fix",
    [
        ((L(0), L(0), L(0)), "1", None),
        ((L(0, True),) * 3, "1", None),
        ((L(0), L(0), L(0, True)), "2a", (0, 0)),
        ((L(0, True), L(0, True), L(0)), "2a", (0, 1)),
        ((L(0), L(0)), "2b", (0, 0)),
        ((L(0, True), L(0, True)), "2b", (0, 1)),
        ((L(0), L(0), L(1)), "2c", None),
        ((L(0), L(0), FixedTerm(1)), "2d", None),
        ((L(0), L(0, True), L(1, True)), "3b", (1, 1)),
        ((L(0), L(0, True), FixedTerm(0)), "3c", None),
        ((L(0), L(0, True)), "3d", None),
        ((L(0), L(1), L(2)), None, None),
    ],
)
def test_classify_not2_table(slots, code, fix):
    got = classify_not2(Not2Predicate(slots, 1))
    assert got == (None if code is None else (code, fix))


def test_classify_not2_contradiction():
    with pytest.raises(ContradictionError):
        classify_not2(Not2Predicate((L(0), L(0, True), FixedTerm(1)), 1))


def test_loner_round():
    inst = _inst(NOT2, 5, PAIR_FREE + ["1 3 5"])
    out, rec = tailor_not2(inst)
    assert rec.loner_rounds == [LonerRound((4,), (5,))]
    assert 4 not in out.literals and 5 not in out.by_id()


def test_loner_rounds_cascade():
    # l3 only lives in predicates 2 and 3; removing 3 (loner l4) leaves it alone
    inst = _inst(NOT2, 4, ["1 2 -1", "1 2 3", "3 4 2", "-1 -2 2"])
    _, rec = tailor_not2(inst)
    assert [r.literals for r in rec.loner_rounds][:2] == [(3,), (2,)]


# -- OXR cases ------------------------------------------------------------------------


def test_oxr_case1_fixes_special_true():
    inst = _inst(OXR, 4, ["1 2 2"])
    _, rec = tailor_oxr(inst)
    assert rec.fixed_literals == {0: 1}
    assert rec.removed_trivial == [(1, "OXR-1")]


def test_oxr_case2_removes_without_fixing():
    _, rec = tailor_oxr(_inst(OXR, 4, ["1 2 -2"]))
    assert rec.fixed_literals == {}
    assert rec.removed_trivial == [(1, "OXR-2")]


def test_oxr_negated_special():
    _, rec = tailor_oxr(_inst(OXR, 3, ["-1 3 3"]))
    assert rec.fixed_literals == {0: 0}


def test_oxr_fixed_special():
    assert classify_oxr(OxrPredicate(FixedTerm(1), L(1), L(1), 1)) == ("OXR-1", None)
    with pytest.raises(ContradictionError):
        classify_oxr(OxrPredicate(FixedTerm(0), L(1), L(1), 1))


def test_conflicting_fixes_raise():
    with pytest.raises(ContradictionError):
        tailor(_inst(OXR, 3, ["1 2 2", "-1 3 3"]))
    with pytest.raises(ContradictionError):
        tailor(_inst(NOT2, 3, ["1 1", "-1 -1"]))


def test_wrong_kind_rejected():
    with pytest.raises(ValueError):
        tailor_oxr(_inst(NOT2, 3, ["1 2 3"]))


# -- structural checks ------------------------------------------------------------


def test_two_fifths_examples():
    three = frozenset(range(3))
    a = PredicateInstance(NOT2, 3, (Not2Predicate((L(0), L(1), L(2)), 1),), three)
    assert not check_two_fifths(a)
    b = PredicateInstance(
        NOT2, 3,
        (Not2Predicate((L(0), L(1), L(2)), 1), Not2Predicate((L(0), L(1), L(2)), 2)),
        three,
    )
    assert check_two_fifths(b)


def test_property_checks_reject_bad_shapes():
    bad1 = PredicateInstance(NOT2, 2, (Not2Predicate((L(0), L(0, True), L(1)), 1),))
    assert not check_property1(bad1)
    bad2 = PredicateInstance(NOT2, 3, (Not2Predicate((L(0), L(1), L(2)), 1),))
    assert not check_property2(bad2)
    ok = PredicateInstance(OXR, 2, (OxrPredicate(L(0), L(1), L(0)),))
    assert check_property1(ok)


# -- properties ---------------------------------------------------------------------


def _tailor_or_none(inst):
    try:
        return tailor(inst)
    except ContradictionError:
        return None


@pytest.mark.parametrize("kind", [NOT2, OXR])
@given(data=st.data())
def test_tailoring_properties(kind, data):
    inst = data.draw(instances(kind, max_n=5, max_m=8))
    result = _tailor_or_none(inst)
    if result is None:
        # contradictions only come from unsatisfiable inputs
        assert inst.predicates and not oracle.is_satisfiable(inst)
        return
    out, rec = result
    assert check_property1(out) and check_property2(out)
    # idempotence
    again, rec2 = tailor(out)
    assert again.predicates == out.predicates and again.literals == out.literals
    assert not rec2.removed_trivial and not rec2.loner_rounds and not rec2.fixed_literals
    # case-log completeness
    logged = set(rec.case_log)
    assert all(entry in logged for entry in rec.removed_trivial)
    kept = {pid for pid, code in rec.case_log if code in KEEP_CASES}
    assert not kept & {pid for pid, _ in rec.removed_trivial}
    # every original predicate is either kept or accounted for exactly once
    ids = sorted(list(out.by_id()) + rec.removed_ids)
    assert ids == sorted(p.pid for p in inst.predicates)
    # satisfiability is preserved and reinsertion finishes the job
    if inst.predicates and oracle.is_satisfiable(inst):
        sols = oracle.satisfying_assignments(out) if out.predicates else [{}]
        assert sols
        x = {i: 0 for i in out.literals}
        x.update(sols[0])
        full = reinsert_loners(x, rec, inst)
        removed = inst.by_id()
        assert all(removed[pid].is_satisfied(full) for pid in rec.removed_ids)


# -- reinsertion ---------------------------------------------------------------------


def test_reinsert_oxr_special_loner():
    inst = PredicateInstance(OXR, 3, (OxrPredicate(L(0), L(1), L(2), 1),))
    rec = TailoringRecord(OXR, loner_rounds=[LonerRound((0,), (1,))])
    x = reinsert_loners({1: 1, 2: 1}, rec, inst)
    assert x[0] == 1
    inst_neg = PredicateInstance(OXR, 3, (OxrPredicate(L(0, True), L(1), L(2), 1),))
    assert reinsert_loners({1: 0, 2: 0}, rec, inst_neg)[0] == 0


def test_reinsert_not2_pair_already_two():
    inst = PredicateInstance(NOT2, 3, (Not2Predicate((L(1), L(2), L(0)), 1),))
    rec = TailoringRecord(NOT2, loner_rounds=[LonerRound((0,), (1,))])
    x = reinsert_loners({1: 1, 2: 1}, rec, inst)
    assert x[0] == 1 and inst.predicates[0].total(x) == 3
    x = reinsert_loners({1: 0, 2: 1}, rec, inst)
    assert x[0] == 0


def test_reinsert_no_rounds_keeps_partial_and_fixed():
    inst = PredicateInstance(NOT2, 3, ())
    rec = TailoringRecord(NOT2, fixed_literals={2: 1})
    assert reinsert_loners({0: 1, 1: 0}, rec, inst) == {0: 1, 1: 0, 2: 1}


def test_reinsert_random_assignments():
    rng = random.Random(5)
    inst, _ = generate_satisfiable(NOT2, 9, 14, seed=11)
    out, rec = tailor(inst)
    sols = oracle.satisfying_assignments(out) if out.predicates else [{}]
    for x in rng.sample(sols, min(10, len(sols))):
        full = reinsert_loners({**{i: 0 for i in out.literals}, **x}, rec, inst)
        assert inst.count_satisfied(full) == len(inst)
