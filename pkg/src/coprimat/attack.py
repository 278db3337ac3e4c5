"""Brute-force quotient search: what recovering the seed costs without the key.

The attacker knows the published pair came from one matrix raised to two
unknown coprime exponents and replays the quotient walk with guessed
quotients (m1, m2, ...).  Guesses are processed level by level, all
vectors of length j before any of length j+1, because a candidate at
level j+1 is built from its parent and grandparent at the previous two
levels.  Every candidate X is screened by determinant, then confirmed by
checking X^k against either published matrix for k in the configured
exponent window.

Exhausting L guesses per level down to depth r-1 visits
L + L^2 + ... + L^(r-1) candidates, which is why even single-digit L and
moderate depth push the work into the billions while the key holder needs
a handful of products.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .hiding import HiddenPair
from .matrix import (
    ExactMatrix,
    OpCounter,
    mat_inverse,
    mat_mul,
    mat_pow,
    optimal_storage,
)

__all__ = [
    "AttackBudget",
    "AttackHit",
    "PassReport",
    "AttackReport",
    "enumerate_cost",
    "expected_trials",
    "expected_trials_exact",
    "brute_force_attack",
]


def enumerate_cost(max_quotient: int, depth_plus_one: int) -> int:
    """Candidates visited when exhausting guesses 1..L down to depth r-1.

    Closed form L*(L^(r-1) - 1)/(L - 1); degenerates to r - 1 for L == 1.
    """
    L, r = max_quotient, depth_plus_one
    if L < 1 or r < 2:
        raise ValueError("need max_quotient >= 1 and depth >= 1")
    if L == 1:
        return r - 1
    return L * (L ** (r - 1) - 1) // (L - 1)


def expected_trials_exact(space_size: int) -> Fraction:
    """Mean index of the first success over a truncated geometric model.

    Success probability 1/N per trial, renormalised over N trials.  The
    closed form (1 - 2*q^N) / (p * (1 - q^N)) with p = 1/N, q = 1 - p is
    exact; tests cross-check it against the literal sum.
    """
    n = space_size
    if n < 1:
        raise ValueError("space size must be positive")
    if n == 1:
        return Fraction(1)
    p = Fraction(1, n)
    q = 1 - p
    return (1 - 2 * q ** n) / (p * (1 - q ** n))


def expected_trials(space_size: int) -> float:
    """Float version of :func:`expected_trials_exact`, safe for huge spaces.

    Roughly 0.418 * N for large N, so the usual "about N" estimate is a
    mild overcount but the exponential growth in depth is untouched.
    """
    n = space_size
    if n < 1:
        raise ValueError("space size must be positive")
    if n == 1:
        return 1.0
    if n <= 4000:
        return float(expected_trials_exact(n))
    qn = math.exp(n * math.log1p(-1.0 / n))
    return (1.0 - 2.0 * qn) / ((1.0 / n) * (1.0 - qn))


@dataclass(frozen=True)
class AttackBudget:
    """Search limits: guesses per level, depth, exponent window, candidate cap."""

    max_quotient: int
    max_depth: int
    exp_lo: int
    exp_hi: int
    max_candidates: int | None = None

    def __post_init__(self):
        if self.max_quotient < 1:
            raise ValueError("max_quotient must be at least 1")
        if self.max_depth < 3:
            raise ValueError("max_depth must be at least 3")
        if not 1 <= self.exp_lo <= self.exp_hi:
            raise ValueError("need 1 <= exp_lo <= exp_hi")
        if self.max_candidates is not None and self.max_candidates < 1:
            raise ValueError("candidate cap must be positive")


@dataclass(frozen=True)
class AttackHit:
    """A candidate whose power reproduced a published matrix."""

    seed: ExactMatrix
    guesses: tuple[int, ...]
    orientation: str            # "primary" or "swapped"
    exponent_c: int | None      # k with seed^k == C, if found in the window
    exponent_d: int | None


@dataclass(frozen=True)
class PassReport:
    orientation: str
    candidates_tested: int
    multiplications: int
    inversions: int
    depth_reached: int
    found: AttackHit | None


@dataclass(frozen=True)
class AttackReport:
    found: AttackHit | None
    passes: tuple[PassReport, ...]
    candidates_tested: int
    multiplications: int
    inversions: int
    elapsed: float
    table_formula_mults: int

    def as_dict(self) -> dict:
        def hit_dict(h):
            if h is None:
                return None
            return {
                "guesses": list(h.guesses),
                "orientation": h.orientation,
                "exponent_c": h.exponent_c,
                "exponent_d": h.exponent_d,
                "seed_rows": h.seed.rows_as_strings(),
            }

        return {
            "found": hit_dict(self.found),
            "candidates_tested": self.candidates_tested,
            "multiplications": self.multiplications,
            "inversions": self.inversions,
            "elapsed_seconds": self.elapsed,
            "table_formula_mults": self.table_formula_mults,
            "passes": [
                {
                    "orientation": p.orientation,
                    "candidates_tested": p.candidates_tested,
                    "multiplications": p.multiplications,
                    "inversions": p.inversions,
                    "depth_reached": p.depth_reached,
                    "found": hit_dict(p.found),
                }
                for p in self.passes
            ],
        }


def _scalar_power_matches(det_x, det_target, lo: int, hi: int) -> list[int]:
    """Exponents k in [lo, hi] with det_x^k == det_target."""
    matches = []
    acc = det_x ** lo
    for k in range(lo, hi + 1):
        if acc == det_target:
            matches.append(k)
        if k < hi:
            acc = acc * det_x
    return matches


def _test_candidate(x, guesses, orientation, targets, budget, counter):
    """Screen by determinant, then confirm by planned matrix powers."""
    det_x = x.det()
    if not det_x:
        return None
    exponents = {"c": None, "d": None}
    hit = False
    for name, (target, det_target, trace_target) in targets.items():
        for k in _scalar_power_matches(det_x, det_target, budget.exp_lo, budget.exp_hi):
            plan = optimal_storage(k) if k >= 2 else None
            powered = mat_pow(x, k, plan, counter)
            if powered.trace() != trace_target:
                continue
            if powered == target:
                exponents[name] = k
                hit = True
                break
    if not hit:
        return None
    return AttackHit(
        seed=x,
        guesses=guesses,
        orientation=orientation,
        exponent_c=exponents["c"],
        exponent_d=exponents["d"],
    )


def _expand_node(node, max_quotient, counter):
    """Children of one node: prev * inverse(cur)^m for m = 1..L."""
    guesses, prev, cur = node
    inv = mat_inverse(cur, counter)
    children = []
    acc = inv
    for m in range(1, max_quotient + 1):
        child = mat_mul(prev, acc, counter)
        children.append((guesses + (m,), cur, child))
        if m < max_quotient:
            acc = mat_mul(acc, inv, counter)
    return children


def _expand_chunk(args):
    """Worker task: expand a slice of nodes and test every child."""
    nodes, a, b, budget, orientation = args
    counter = OpCounter()
    targets = {
        "c": (a, a.det(), a.trace()),
        "d": (b, b.det(), b.trace()),
    }
    children = []
    hits = []
    for node in nodes:
        for child in _expand_node(node, budget.max_quotient, counter):
            children.append(child)
            hit = _test_candidate(
                child[2], child[0], orientation, targets, budget, counter
            )
            if hit is not None:
                hits.append(hit)
    return children, hits, counter.mults, counter.invs


def _search_pass(a, b, budget, orientation, jobs, candidates_before):
    """One full orientation: levels 1..max_depth-1, stop at the first
    level that contains a hit (the whole level is still processed, matching
    the group-by-group accounting of the cost model)."""
    counter_mults = 0
    counter_invs = 0
    tested = 0
    depth_reached = 0
    found = None
    nodes = [((), a, b)]
    cap = budget.max_candidates

    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for depth in range(1, budget.max_depth):
            if cap is not None and candidates_before + tested >= cap:
                break
            depth_reached = depth
            # trim expansion so the candidate cap is never exceeded
            budget_left = None
            if cap is not None:
                budget_left = cap - candidates_before - tested
                max_nodes = -(-budget_left // budget.max_quotient)  # ceil
                nodes = nodes[:max_nodes]
            if jobs > 1 and len(nodes) > 1:
                chunk = max(1, len(nodes) // (jobs * 4))
                slices = [nodes[i:i + chunk] for i in range(0, len(nodes), chunk)]
                results = list(
                    executor.map(
                        _expand_chunk,
                        [(s, a, b, budget, orientation) for s in slices],
                    )
                )
            else:
                results = [_expand_chunk((nodes, a, b, budget, orientation))]
            children = []
            hits = []
            for ch, h, mults, invs in results:
                children.extend(ch)
                hits.extend(h)
                counter_mults += mults
                counter_invs += invs
            if budget_left is not None and len(children) > budget_left:
                children = children[:budget_left]
                hits = [h for h in hits if h.guesses in {c[0] for c in children}]
            tested += len(children)
            if hits:
                found = min(hits, key=lambda h: h.guesses)
                break
            nodes = children
    finally:
        if executor is not None:
            executor.shutdown()

    return PassReport(
        orientation=orientation,
        candidates_tested=tested,
        multiplications=counter_mults,
        inversions=counter_invs,
        depth_reached=depth_reached,
        found=found,
    )


def brute_force_attack(hp: HiddenPair, budget: AttackBudget, jobs: int = 1) -> AttackReport:
    """Run the quotient-guess search; never raises on failure.

    An exhausted budget comes back as a report with ``found is None``.
    After the primary orientation fails, the swapped orientation
    (inverse(D), inverse(C)) is tried with whatever budget remains.
    Parallel runs split each level over worker processes and merge the
    slices in order, so reports are identical to serial ones apart from
    the elapsed time.
    """
    start = time.perf_counter()
    passes = []
    setup_invs = 0
    primary = _search_pass(hp.c, hp.d, budget, "primary", jobs, 0)
    passes.append(primary)
    if primary.found is None:
        setup = OpCounter()
        swapped_a = mat_inverse(hp.d, setup)
        swapped_b = mat_inverse(hp.c, setup)
        setup_invs = setup.invs
        swapped = _search_pass(
            swapped_a, swapped_b, budget, "swapped", jobs, primary.candidates_tested
        )
        passes.append(swapped)
    found = next((p.found for p in passes if p.found is not None), None)
    depth = max(p.depth_reached for p in passes)
    per_level = budget.max_quotient * (budget.max_quotient + 1) // 2
    formula = sum(per_level ** j for j in range(1, depth + 1))
    elapsed = time.perf_counter() - start
    return AttackReport(
        found=found,
        passes=tuple(passes),
        candidates_tested=sum(p.candidates_tested for p in passes),
        multiplications=sum(p.multiplications for p in passes),
        inversions=sum(p.inversions for p in passes) + setup_invs,
        elapsed=elapsed,
        table_formula_mults=formula,
    )
