from fractions import Fraction

import pytest

from fracgb.errors import ContradictionError, NotSatisfiableError
from fracgb.instances import (
    NOT2,
    OXR,
    generate_satisfiable,
    parse_instance,
    serialize_instance,
)
from fracgb.pipeline import PipelineError, run_instance, run_pipeline
from fracgb.solver import STRATEGIES

Q_NOT2 = Fraction(7, 10) + Fraction(1, 20)
Q_OXR = Fraction(4, 5) + Fraction(1, 20)


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_not2_flags(strategy):
    inst, _ = generate_satisfiable(NOT2, 10, 30, seed=1)
    rep = run_instance(inst, Q_NOT2, strategy, seed=3)
    assert rep.all_flags_ok
    assert rep.p_r + rep.p_d == rep.predicates_tailored
    assert rep.flag_removed_all and rep.satisfied_p_r == rep.p_r
    assert rep.fraction_original >= rep.bound_tailored


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_oxr_flags(strategy):
    inst, _ = generate_satisfiable(OXR, 10, 30, seed=2)
    rep = run_instance(inst, Q_OXR, strategy, seed=3)
    assert rep.all_flags_ok and rep.bound_tailored == Fraction(6, 8) + Fraction(1, 16)


def test_empty_strategy_satisfies_everything():
    inst, _ = generate_satisfiable(NOT2, 10, 30, seed=5)
    rep = run_instance(inst, Q_NOT2, "empty")
    assert rep.fraction_tailored == 1 and rep.fraction_original == 1 and rep.p_d == 0


def test_below_threshold_skips_bound_flags():
    inst, _ = generate_satisfiable(NOT2, 8, 20, seed=5)
    rep = run_instance(inst, Fraction(1, 2), "greedy")
    assert rep.flag_inequality == "skipped"
    assert rep.flag_final_bound in ("skipped", "true")
    assert rep.all_flags_ok


def test_report_text_is_stable():
    inst, _ = generate_satisfiable(OXR, 9, 25, seed=8)
    a = run_instance(inst, Q_OXR, "random", seed=4).to_text()
    b = run_pipeline(serialize_instance(inst), OXR, Q_OXR, "random", seed=4).to_text()
    assert a == b
    assert "flag_final_bound: true\n" in a and "q: 17/20\n" in a


def test_unsatisfiable_input_is_reported():
    with pytest.raises(PipelineError) as info:
        run_pipeline("p not2 1 2\n1 1 -1\n-1 -1 1\n", q=Q_NOT2)
    assert info.value.stage == "oracle"
    assert isinstance(info.value.cause, NotSatisfiableError)


def test_contradiction_without_oracle():
    inst = parse_instance("p oxr 3 2\n1 2 2\n-1 3 3\n")
    with pytest.raises(PipelineError) as info:
        run_instance(inst, Q_OXR, check_satisfiable=False)
    assert info.value.stage == "tailor" and isinstance(info.value.cause, ContradictionError)


def test_parse_errors_and_bad_q():
    with pytest.raises(PipelineError) as info:
        run_pipeline("p not2 3 1\n1 2 3 4\n")
    assert info.value.stage == "parse"
    with pytest.raises(PipelineError):
        run_pipeline("p not2 3 1\n1 2 3\n", kind=OXR)
    inst, _ = generate_satisfiable(NOT2, 5, 5, seed=0)
    with pytest.raises(ValueError):
        run_instance(inst, Fraction(5, 4))
