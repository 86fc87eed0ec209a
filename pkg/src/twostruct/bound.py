"""The least number of vertices to add for a primitive faithful extension.

:func:`primitive_bound` answers by case analysis and returns a checked witness;
:func:`oracle_min_extension` answers by enumerating every faithful extension.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Optional

from twostruct.clans import is_primitive, matrix_is_primitive
from twostruct.core import TwoStructure, meet, star
from twostruct.decomposition import completeness_profile
from twostruct.errors import BudgetExceeded, InternalProofViolation
from twostruct.extensions import (
    Extension,
    _power_of,
    ceil_log,
    extend_log,
    extend_power_case,
    extend_small_c,
    extend_tournament,
    is_faithful,
    lift_nonreversible,
    sumner_extension,
)

DEFAULT_BUDGET = 2 ** 24


def default_budget() -> int:
    return int(os.environ.get("TWOSTRUCT_BUDGET", DEFAULT_BUDGET))


# ---------------------------------------------------------------------------
# exhaustive enumeration


def _candidate_count(sigma: TwoStructure, k: int) -> int:
    slots = k * sigma.n + k * (k - 1) // 2
    return len(sigma.pair_types) ** slots


def _faithful_extensions(sigma: TwoStructure, k: int):
    """Yield color matrices of all faithful ``k``-extensions in lexicographic order of the
    flattened new pairs ``(v, a_0) for v < n, (v, a_1) for v < n+1, ...``.

    A new pair may carry ``(color(v,a), color(a,v)) = (e, f)`` exactly when some pair of
    the base already does; for reversible structures that is ``f = e*``."""
    n, types = sigma.n, sigma.pair_types
    size = n + k
    slots = [(v, n + i) for i in range(k) for v in range(n + i)]
    rows = [list(r) + [-1] * k for r in sigma.matrix] + [[-1] * size for _ in range(k)]
    for i in range(size):
        rows[i][i] = -1
    for choice in itertools.product(types, repeat=len(slots)):
        for (v, a), (e, f) in zip(slots, choice):
            rows[v][a] = e
            rows[a][v] = f
        yield rows


def exhaustive_extension(sigma: TwoStructure, k: int,
                         budget: Optional[int] = None) -> Optional[Extension]:
    """Lexicographically first primitive faithful ``k``-extension, or None."""
    budget = default_budget() if budget is None else budget
    count = _candidate_count(sigma, k)
    if count > budget:
        raise BudgetExceeded(f"{count} candidate {k}-extensions exceed the budget {budget}")
    for rows in _faithful_extensions(sigma, k):
        if matrix_is_primitive(rows, sigma.epsilon):
            tau = TwoStructure(sigma.catalog, rows)
            return Extension(tau, sigma.n, tuple(range(sigma.epsilon)), "oracle")
    return None


@dataclass
class OracleResult:
    k: Optional[int]  # None: no primitive extension with at most k_max new vertices
    k_max: int
    witness: Optional[Extension] = None

    def to_json(self) -> dict:
        from twostruct.formats import dumps_2s

        return {"k": self.k, "k_max": self.k_max,
                "witness": dumps_2s(self.witness.tau, self.witness.original)
                if self.witness else None}


def oracle_min_extension(sigma: TwoStructure, k_max: int = 3,
                         budget: Optional[int] = None) -> OracleResult:
    """Least ``k <= k_max`` admitting a primitive faithful ``k``-extension, by brute force.

    The budget caps the total number of candidates over all ``k`` tried."""
    budget = default_budget() if budget is None else budget
    spent = 0
    for k in range(k_max + 1):
        count = _candidate_count(sigma, k)
        spent += count
        if spent > budget:
            raise BudgetExceeded(f"{spent} candidates up to k = {k} exceed the budget {budget}")
        found = exhaustive_extension(sigma, k, budget)
        if found is not None:
            return OracleResult(k, k_max, found)
    return OracleResult(None, k_max)


def count_primitive_1extensions(sigma: TwoStructure, budget: Optional[int] = None) -> int:
    budget = default_budget() if budget is None else budget
    count = _candidate_count(sigma, 1)
    if count > budget:
        raise BudgetExceeded(f"{count} candidates exceed the budget {budget}")
    return sum(1 for rows in _faithful_extensions(sigma, 1)
               if matrix_is_primitive(rows, sigma.epsilon))


# ---------------------------------------------------------------------------
# case analysis


@dataclass
class BoundResult:
    value: Optional[int]  # None: no faithful primitive extension exists
    case: str
    lower: int
    witness: Optional[Extension] = None
    sumner: Optional[int] = None
    sumner_witness: Optional[Extension] = None

    @property
    def undefined(self) -> bool:
        return self.value is None

    def to_json(self) -> dict:
        from twostruct.formats import dumps_2s

        out = {
            "p": self.value,
            "case": self.case,
            "lower": self.lower,
            "witness": dumps_2s(self.witness.tau, self.witness.original)
            if self.witness else None,
        }
        if self.sumner is not None:
            out["sumner"] = self.sumner
        return out


def _lower(sigma: TwoStructure) -> int:
    if sigma.epsilon < 2 or not sigma.is_reversible:
        return 0
    return ceil_log(sigma.epsilon, completeness_profile(sigma).c)


def _checked(sigma: TwoStructure, result: BoundResult) -> BoundResult:
    ext = result.witness
    if ext is not None:
        if ext.k != result.value or not is_primitive(ext.tau) \
                or not is_faithful(sigma, ext).faithful:
            raise InternalProofViolation(f"{result.case}: witness fails verification")
    return result


def primitive_bound(sigma: TwoStructure) -> BoundResult:
    n, eps = sigma.n, sigma.epsilon
    if not sigma.is_reversible:
        inner = primitive_bound(meet(sigma, star(sigma)))
        witness = None
        if inner.witness is not None:
            witness = lift_nonreversible(sigma, inner.witness)
        return _checked(sigma, BoundResult(inner.value, "NonrevReduction+" + inner.case,
                                           inner.lower, witness))
    if is_primitive(sigma):
        ext = Extension(sigma, n, tuple(range(eps)), "Primitive0")
        return _checked(sigma, BoundResult(0, "Primitive0", 0, ext))
    if eps == 0:
        # a single vertex: no colors, so every faithful extension is that vertex again
        return BoundResult(None, "UndefinedFaithful", 0)
    if eps == 1:
        ext = sumner_extension(sigma)
        return BoundResult(None, "UndefinedFaithful", 0, sumner=ext.k, sumner_witness=ext)
    if sigma.is_tournament:
        ext = extend_tournament(sigma)
        return _checked(sigma, BoundResult(ext.k, "T4bound", 0, ext))
    prof = completeness_profile(sigma)
    c = prof.c
    rev = sigma.reversibility
    lower = _lower(sigma)
    if c == 1 and (eps >= 3 or not rev.asymmetric):
        return _checked(sigma, BoundResult(1, "T2bound-2", lower, extend_small_c(sigma)))
    if 2 <= c < eps:
        return _checked(sigma, BoundResult(1, "T2bound-1", lower, extend_small_c(sigma)))
    k = _power_of(eps, c)
    if k is None:
        ext = extend_log(sigma)
        return _checked(sigma, BoundResult(ceil_log(eps, c), "C1bound-nonpower", lower, ext))
    if any(len(iso) == c for iso in prof.isolated.values()):
        return _checked(sigma, BoundResult(k + 1, "T3Abound-k+1", lower, extend_log(sigma)))
    return _checked(sigma, BoundResult(k, "T3Abound-k", lower, extend_power_case(sigma)))
