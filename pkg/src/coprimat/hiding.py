"""Hiding a matrix as two coprime powers and recovering it.

The sender publishes C = M^k1 and D = M^k2.  Whoever knows the exponents
can peel the pair back down with the Euclid quotients: each step replaces
the larger power by the remainder power,

    next = prev * (inverse(cur))^q,

costing q + 1 operations, until the exponent reaches 1.  The same walk in
closed form is C^p * D^t with the final Bezout coefficients.  Either route
ends with a cheap verification that the result really reproduces D.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import VerificationFailed
from .euclid import CoprimePair, bezout_table, quotient_sequence
from .matrix import (
    ExactMatrix,
    OpCounter,
    PowerCache,
    mat_inverse,
    mat_mul,
    mat_pow,
    optimal_storage,
)

__all__ = [
    "HiddenPair",
    "HideResult",
    "RecoveryStep",
    "RecoveryTrace",
    "hide",
    "recover_iterative",
    "recover_bezout",
    "intermediate_bezout_forms",
]


@dataclass(frozen=True)
class HiddenPair:
    """The published pair (C, D) = (M^k1, M^k2)."""

    c: ExactMatrix
    d: ExactMatrix

    def __post_init__(self):
        if self.c.dim != self.d.dim:
            raise ValueError("hidden pair matrices must share a dimension")

    @property
    def dim(self) -> int:
        return self.c.dim


@dataclass(frozen=True)
class HideResult:
    """Hidden pair plus the sender's audited multiplication counts.

    ops_c and ops_d are the storage-plan counts for each power on its own;
    ops_shared re-runs the smaller power against the cache filled while
    computing the larger one, which is how a sender would actually work.
    """

    hidden: HiddenPair
    ops_c: int
    ops_d: int
    ops_shared: int

    @property
    def ops_total(self) -> int:
        return self.ops_c + self.ops_d


def hide(m: ExactMatrix, pair: CoprimePair) -> HideResult:
    """Raise the seed to both exponents with optimal storage plans."""
    counter_c = OpCounter()
    cache = PowerCache(m)
    c = cache.planned_power(pair.k1, counter_c)
    counter_shared = OpCounter()
    d = cache.greedy_power(pair.k2, counter_shared)

    counter_d = OpCounter()
    d_alone = PowerCache(m).planned_power(pair.k2, counter_d)
    assert d_alone == d
    return HideResult(
        hidden=HiddenPair(c, d),
        ops_c=counter_c.mults,
        ops_d=counter_d.mults,
        ops_shared=counter_c.mults + counter_shared.mults,
    )


@dataclass(frozen=True)
class RecoveryStep:
    exponent: int      # exponent of the matrix this step produces
    quotient: int
    ops: int           # q + 1: one inversion plus q products


@dataclass(frozen=True)
class RecoveryTrace:
    steps: tuple[RecoveryStep, ...]
    total_ops: int
    result: ExactMatrix


def _verify(result: ExactMatrix, hp: HiddenPair, pair: CoprimePair) -> None:
    k2 = pair.k2
    plan = optimal_storage(k2) if k2 >= 2 else None
    if mat_pow(result, k2, plan) != hp.d:
        raise VerificationFailed(result)


def recover_iterative(hp: HiddenPair, pair: CoprimePair) -> RecoveryTrace:
    """Walk the Euclid quotients down to the seed matrix.

    Raises VerificationFailed (carrying the wrong matrix) when the claimed
    exponents do not reproduce D, e.g. after a key transmission error.
    """
    qs = quotient_sequence(pair)
    prev, cur = hp.c, hp.d
    exponent_prev, exponent_cur = pair.k1, pair.k2
    steps = []
    for q in qs[:-1]:
        counter = OpCounter()
        inv = mat_inverse(cur, counter)
        acc = inv
        for _ in range(q - 1):
            acc = mat_mul(acc, inv, counter)
        nxt = mat_mul(prev, acc, counter)
        exponent_next = exponent_prev - q * exponent_cur
        steps.append(RecoveryStep(exponent_next, q, counter.total))
        prev, cur = cur, nxt
        exponent_prev, exponent_cur = exponent_cur, exponent_next
    result = cur  # for k2 == 1 there are no steps and D is already the seed
    trace = RecoveryTrace(tuple(steps), sum(s.ops for s in steps), result)
    _verify(result, hp, pair)
    return trace


def recover_bezout(hp: HiddenPair, pair: CoprimePair, counter: OpCounter | None = None) -> ExactMatrix:
    """One-shot recovery C^p * D^t from the final Bezout row.

    Exactly equals the iterative walk, at the price of two large
    storage-planned powers instead of many small ones.
    """
    rows = bezout_table(pair)
    if rows:
        p, t = rows[-1].p, rows[-1].t
    else:
        p, t = 0, 1  # k2 == 1: the seed is D itself
    factors = []
    for base, e in ((hp.c, p), (hp.d, t)):
        if e == 0:
            continue
        plan = optimal_storage(abs(e)) if abs(e) >= 2 else None
        factors.append(mat_pow(base, e, plan, counter))
    if not factors:
        result = ExactMatrix.identity(hp.dim)
    elif len(factors) == 1:
        result = factors[0]
    else:
        result = mat_mul(factors[0], factors[1], counter)
    _verify(result, hp, pair)
    return result


def intermediate_bezout_forms(pair: CoprimePair) -> list[tuple[int, int, int]]:
    """The (p, t, remainder) exponents of every intermediate power.

    Row l says the l-th intermediate of the quotient walk equals
    C^p * D^t and carries exponent ``remainder``.
    """
    return [(row.p, row.t, row.remainder) for row in bezout_table(pair)]
