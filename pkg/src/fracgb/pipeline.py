"""End-to-end run: parse, tailor, encode, solve, extract, derandomize, reinsert."""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Dict, Optional

from . import oracle
from .algebra import DEFAULT_PRIME, LexOrder, check_prime
from .assign import PartialAssignment, derandomize, expected_satisfied, satisfaction_probability
from .encode import ENUMERATION_CAP_BITS, encode
from .errors import FracGBError, InternalError, NotSatisfiableError
from .instances import PredicateInstance, parse_instance
from .solver import (
    FINAL_BASE,
    budget,
    check_budget_inequality,
    epsilon,
    extract_point,
    solve_fractional,
)
from .tailor import check_two_fifths, reinsert_loners, tailor


class PipelineError(FracGBError):
    """A stage failed; ``stage`` names it and ``__cause__`` holds the original error."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


@dataclass
class PipelineReport:
    kind: str
    prime: int
    q: Fraction
    epsilon: Fraction
    strategy: str
    seed: int
    literals_original: int
    predicates_original: int
    literals_fixed: int
    predicates_removed_trivial: int
    loner_rounds: int
    loner_literals: int
    loner_predicates: int
    literals_tailored: int
    predicates_tailored: int
    system_size: int
    ignored_vars: int
    touched: int
    budget: Fraction
    p_r: int
    p_d: int
    basis_size: int
    satisfied_p_r: int
    satisfied_p_d: int
    expected_p_d: Fraction
    satisfied_removed: int
    satisfied_tailored: int
    fraction_tailored: Fraction
    bound_tailored: Fraction
    satisfied_original: int
    fraction_original: Fraction
    assignment: str
    flag_two_fifths: bool
    flag_budget: bool
    flag_inequality: str
    flag_p_r_all: bool
    flag_removed_all: bool
    flag_p_d_half: bool
    flag_final_bound: str

    FLAGS = (
        "flag_two_fifths",
        "flag_budget",
        "flag_inequality",
        "flag_p_r_all",
        "flag_removed_all",
        "flag_p_d_half",
        "flag_final_bound",
    )

    def to_text(self) -> str:
        return "".join(f"{f.name}: {_fmt(getattr(self, f.name))}\n" for f in fields(self))

    @property
    def all_flags_ok(self) -> bool:
        return all(_fmt(getattr(self, name)) in ("true", "skipped") for name in self.FLAGS)


def run_instance(
    inst: PredicateInstance,
    q,
    strategy: str = "greedy",
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
    order: Optional[LexOrder] = None,
    check_satisfiable: bool = True,
) -> PipelineReport:
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    stage = "input"
    try:
        check_prime(prime)
        if check_satisfiable and inst.num_literals <= ENUMERATION_CAP_BITS and inst.predicates:
            stage = "oracle"
            if not oracle.is_satisfiable(inst):
                raise NotSatisfiableError("instance has no satisfying assignment")
        stage = "tailor"
        tailored, rec = tailor(inst)
        stage = "encode"
        sys = encode(tailored, rec, prime)
        stage = "solve"
        if order is None:
            order = LexOrder.default(sys.nvars)
        sol = solve_fractional(sys, q, strategy, order, seed)
        stage = "extract"
        point = extract_point(sol, order)
        stage = "assign"
        lit_of = sys.literal_of_var
        values = {lit_of[v]: b for v, b in point.items()}
        undecided = frozenset(lit_of[v] for v in sol.ignored_vars)
        by_id = tailored.by_id()
        pr_preds = [by_id[pid] for pid in sol.pr_ids]
        pd_preds = [by_id[pid] for pid in sol.pd_ids]
        partial = PartialAssignment(values, undecided)
        # a surviving polynomial can omit a literal its predicate mentions
        # (e.g. the zero polynomial of an OXR predicate with a fixed-true
        # special slot); such predicates hold whatever the coins say
        loose = [p for p in pr_preds if p.literal_indices() & undecided]
        for p in loose:
            if satisfaction_probability(p, partial) != 1:
                raise InternalError(f"surviving predicate {p.pid} depends on an ignored literal")
        expected = expected_satisfied(pd_preds, partial)
        total = derandomize(pd_preds + loose, partial)
        stage = "reinsert"
        full = reinsert_loners(total.values, rec, inst)
    except PipelineError:
        raise
    except Exception as exc:
        raise PipelineError(stage, exc) from exc

    sat_pr = sum(p.is_satisfied(full) for p in pr_preds)
    sat_pd = sum(p.is_satisfied(full) for p in pd_preds)
    orig_by_id = inst.by_id()
    removed = rec.removed_ids
    sat_removed = sum(orig_by_id[pid].is_satisfied(full) for pid in removed)
    sat_tailored = sat_pr + sat_pd
    n_tailored = len(tailored.predicates)
    sat_original = inst.count_satisfied(full)
    frac_tailored = Fraction(sat_tailored, n_tailored) if n_tailored else Fraction(1)
    frac_original = Fraction(sat_original, len(inst)) if len(inst) else Fraction(1)

    eps = epsilon(q, inst.kind)
    bound = FINAL_BASE[inst.kind] + Fraction(5, 4) * eps
    floor_count = len(pr_preds) + math.ceil(Fraction(len(pd_preds), 2)) + len(removed)
    if sat_original < floor_count:
        final = "false"
    elif eps < 0:
        final = "skipped"
    else:
        final = _fmt(frac_tailored >= bound and frac_original >= bound)

    return PipelineReport(
        kind=inst.kind,
        prime=prime,
        q=q,
        epsilon=eps,
        strategy=strategy,
        seed=seed,
        literals_original=inst.num_literals,
        predicates_original=len(inst),
        literals_fixed=len(rec.fixed_literals),
        predicates_removed_trivial=len(rec.removed_trivial),
        loner_rounds=len(rec.loner_rounds),
        loner_literals=len(rec.loner_literals),
        loner_predicates=sum(len(r.predicate_ids) for r in rec.loner_rounds),
        literals_tailored=len(tailored.literals),
        predicates_tailored=n_tailored,
        system_size=len(sys),
        ignored_vars=len(sol.ignored_vars),
        touched=sol.touched,
        budget=budget(q, len(sys)),
        p_r=len(pr_preds),
        p_d=len(pd_preds),
        basis_size=len(sol.basis),
        satisfied_p_r=sat_pr,
        satisfied_p_d=sat_pd,
        expected_p_d=expected,
        satisfied_removed=sat_removed,
        satisfied_tailored=sat_tailored,
        fraction_tailored=frac_tailored,
        bound_tailored=bound,
        satisfied_original=sat_original,
        fraction_original=frac_original,
        assignment="".join(str(full[i]) for i in range(inst.num_literals)),
        flag_two_fifths=check_two_fifths(tailored),
        flag_budget=sol.within_budget(),
        flag_inequality="skipped" if eps < 0 else _fmt(check_budget_inequality(sol, inst.kind)),
        flag_p_r_all=sat_pr == len(pr_preds),
        flag_removed_all=sat_removed == len(removed),
        flag_p_d_half=sat_pd >= math.ceil(Fraction(len(pd_preds), 2)) and expected * 2 >= len(pd_preds),
        flag_final_bound=final,
    )


def run_pipeline(
    text,
    kind: Optional[str] = None,
    q=Fraction(3, 4),
    strategy: str = "greedy",
    seed: int = 0,
    prime: int = DEFAULT_PRIME,
    order: Optional[LexOrder] = None,
) -> PipelineReport:
    """Parse instance text and run every stage; see :func:`run_instance`."""
    try:
        inst = parse_instance(text)
        if kind is not None and inst.kind != kind:
            raise ValueError(f"--kind {kind} does not match instance kind {inst.kind}")
    except Exception as exc:
        raise PipelineError("parse", exc) from exc
    return run_instance(inst, q, strategy, seed, prime, order)
