"""Spec-level entry points for the three node transforms."""

from typing import Optional

from .aig import Aig
from .refactor import refactor_check
from .resub import resub_check
from .rewrite import rewrite_check
from .transforms import (
    CODE_REFACTOR,
    CODE_RESUB,
    CODE_REWRITE,
    Candidate,
    PassContext,
    TransformOutcome,
    apply_candidate,
)


def check_for_code(g: Aig, v: int, code: int, ctx: Optional[PassContext] = None,
                   zero_rw: bool = False, zero_rf: bool = False) -> Optional[Candidate]:
    if code == CODE_REWRITE:
        return rewrite_check(g, v, ctx, zero_cost=zero_rw)
    if code == CODE_REFACTOR:
        return refactor_check(g, v, ctx, zero_cost=zero_rf)
    if code == CODE_RESUB:
        return resub_check(g, v, ctx)
    raise ValueError(f"no transform with code {code}")


def is_transformable(g: Aig, v: int, code: int, zero_rw: bool = False, zero_rf: bool = False) -> bool:
    """True iff the transform would change the graph under the given flags; read-only."""
    return check_for_code(g, v, code, None, zero_rw, zero_rf) is not None


def rewrite_apply(g: Aig, cand: Candidate, ctx: Optional[PassContext] = None) -> TransformOutcome:
    return apply_candidate(g, cand, ctx)


def refactor_node(g: Aig, v: int, zero_cost: bool = False, ctx: Optional[PassContext] = None) -> TransformOutcome:
    cand = refactor_check(g, v, ctx, zero_cost=zero_cost)
    if cand is None:
        return TransformOutcome(applied=False)
    return apply_candidate(g, cand, ctx)


def resub_node(g: Aig, v: int, ctx: Optional[PassContext] = None) -> TransformOutcome:
    cand = resub_check(g, v, ctx)
    if cand is None:
        return TransformOutcome(applied=False)
    return apply_candidate(g, cand, ctx)
