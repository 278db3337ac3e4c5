"""Exact square-matrix algebra over Gaussian rationals.

Multiplication, inversion and determinants are done with exact rational
Gauss-Jordan elimination, so results are bit-exact.  Powers are computed
either naively (k-1 products) or through a :class:`PowerPlan` that stores
the low powers M..M^x and then walks up in strides of x, which costs
exactly ``(x - 1) + (k - 1) // x`` products.  The plan that minimises this
count keeps roughly sqrt(k-1) stored powers.

Repeated squaring is deliberately not the default; the storage schedule is
the audited cost model of this package.  ``mat_pow_binary`` exists for
benchmark comparisons only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DimensionMismatch, SingularMatrix
from .exactnum import GaussianRational, ONE, ZERO

__all__ = [
    "OpCounter",
    "ExactMatrix",
    "PowerPlan",
    "mat_mul",
    "mat_inverse",
    "determinant",
    "mat_pow",
    "mat_pow_binary",
    "op_count_with_storage",
    "optimal_storage",
    "PowerCache",
]


@dataclass
class OpCounter:
    """Tally of matrix multiplications and inversions.

    Counters are created by the caller and threaded through the operations
    that should be audited; there is no shared global state.
    """

    mults: int = 0
    invs: int = 0

    def count_mult(self) -> None:
        self.mults += 1

    def count_inv(self) -> None:
        self.invs += 1

    @property
    def total(self) -> int:
        return self.mults + self.invs


class ExactMatrix:
    """Immutable square matrix of GaussianRational entries."""

    __slots__ = ("entries",)

    def __init__(self, rows):
        entries = tuple(
            tuple(GaussianRational.coerce(x) for x in row) for row in rows
        )
        n = len(entries)
        if n == 0 or any(len(row) != n for row in entries):
            raise DimensionMismatch("matrix must be square and non-empty")
        self.entries = entries

    # construction helpers -------------------------------------------------

    @classmethod
    def identity(cls, dim: int) -> "ExactMatrix":
        return cls(
            [[ONE if i == j else ZERO for j in range(dim)] for i in range(dim)]
        )

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def rows_as_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]

    # comparisons ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    # arithmetic -----------------------------------------------------------

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_mul(self, other)

    def __pow__(self, k: int) -> "ExactMatrix":
        return mat_pow(self, k)

    def inverse(self) -> "ExactMatrix":
        return mat_inverse(self)

    def det(self) -> GaussianRational:
        return determinant(self)

    def trace(self) -> GaussianRational:
        t = ZERO
        for i in range(self.dim):
            t = t + self.entries[i][i]
        return t

    def __str__(self) -> str:
        return "\n".join("  ".join(str(x) for x in row) for row in self.entries)

    def __repr__(self) -> str:
        return f"ExactMatrix({[[str(x) for x in row] for row in self.entries]})"


def mat_mul(a: ExactMatrix, b: ExactMatrix, counter: OpCounter | None = None) -> ExactMatrix:
    """Exact product of two square matrices of equal dimension."""
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot multiply {a.dim}x{a.dim} by {b.dim}x{b.dim}")
    n = a.dim
    bt = list(zip(*b.entries))  # column access
    rows = []
    for i in range(n):
        arow = a.entries[i]
        rows.append(
            [
                sum((arow[k] * bt[j][k] for k in range(n)), ZERO)
                for j in range(n)
            ]
        )
    if counter is not None:
        counter.count_mult()
    return ExactMatrix(rows)


def mat_inverse(a: ExactMatrix, counter: OpCounter | None = None) -> ExactMatrix:
    """Inverse by exact Gauss-Jordan elimination with first-nonzero pivots."""
    n = a.dim
    work = [list(row) + [ONE if i == j else ZERO for j in range(n)]
            for i, row in enumerate(a.entries)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col]), None)
        if pivot_row is None:
            raise SingularMatrix("matrix is singular")
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
        inv_pivot = work[col][col].inverse()
        work[col] = [x * inv_pivot for x in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    if counter is not None:
        counter.count_inv()
    return ExactMatrix([row[n:] for row in work])


def determinant(a: ExactMatrix) -> GaussianRational:
    """Exact determinant via elimination, tracking row-swap signs."""
    n = a.dim
    work = [list(row) for row in a.entries]
    sign = 1
    det = ONE
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col]), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            sign = -sign
        pivot = work[col][col]
        det = det * pivot
        inv_pivot = pivot.inverse()
        for r in range(col + 1, n):
            if work[r][col]:
                factor = work[r][col] * inv_pivot
                work[r] = [x - factor * y for x, y in zip(work[r], work[col])]
    return det if sign == 1 else -det


def op_count_with_storage(k: int, x_s: int) -> int:
    """Products needed for the k-th power keeping x_s stored low powers.

    x_s == 1 degenerates to the no-storage count k - 1.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if x_s < 1:
        raise ValueError("storage size must be at least 1")
    return (x_s - 1) + (k - 1) // x_s


@dataclass(frozen=True)
class PowerPlan:
    """Storage schedule for one exponent: keep powers 1..x_s, stride by x_s."""

    k: int
    x_s: int
    predicted_ops: int = field(init=False)

    def __post_init__(self):
        if self.k < 1 or self.x_s < 1:
            raise ValueError("plan needs k >= 1 and x_s >= 1")
        if self.k <= self.x_s:
            ops = self.k - 1
        else:
            ops = op_count_with_storage(self.k, self.x_s)
        object.__setattr__(self, "predicted_ops", ops)


def optimal_storage(k: int) -> PowerPlan:
    """Plan with the fewest products over all storage sizes.

    The cost (x - 1) + (k - 1) // x is minimised at x near sqrt(k - 1); the
    discrete minimum always lands on isqrt(k-1) or isqrt(k-1) + 1, and ties
    between the two are resolved toward the smaller storage size.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    s = max(1, math.isqrt(k - 1))
    best = min((s, s + 1), key=lambda x: (op_count_with_storage(k, x), x))
    return PowerPlan(k, best)


def _pow_planned(a, k, plan, counter, cache):
    """Power via the storage schedule; records every computed power in cache."""
    if plan.k != k:
        raise ValueError(f"plan is for exponent {plan.k}, not {k}")
    x_s = min(plan.x_s, k)
    stored = [a]  # stored[i] == a^(i+1)
    if cache is not None:
        cache.setdefault(1, a)
    for e in range(2, x_s + 1):
        nxt = mat_mul(stored[-1], a, counter)
        stored.append(nxt)
        if cache is not None:
            cache.setdefault(e, nxt)
    if k <= plan.x_s:
        return stored[k - 1]
    strides, rem = divmod(k - 1, x_s)
    acc = stored[rem]  # a^(rem+1)
    exp = rem + 1
    step = stored[x_s - 1]
    for _ in range(strides):
        acc = mat_mul(acc, step, counter)
        exp += x_s
        if cache is not None:
            cache.setdefault(exp, acc)
    return acc


def mat_pow(
    a: ExactMatrix,
    k: int,
    plan: PowerPlan | None = None,
    counter: OpCounter | None = None,
) -> ExactMatrix:
    """Exact k-th power; k may be negative when the matrix is invertible.

    With a plan the call performs exactly ``plan.predicted_ops``
    multiplications (plus one inversion when k < 0).  Without a plan the
    power is the plain chain of ``|k| - 1`` products.
    """
    if k == 0:
        return ExactMatrix.identity(a.dim)
    base = a
    if k < 0:
        base = mat_inverse(a, counter)
        k = -k
    if k == 1:
        return base
    if plan is not None:
        return _pow_planned(base, k, plan, counter, None)
    acc = base
    for _ in range(k - 1):
        acc = mat_mul(acc, base, counter)
    return acc


def mat_pow_binary(a: ExactMatrix, k: int, counter: OpCounter | None = None) -> ExactMatrix:
    """Repeated-squaring power, kept only for benchmark comparisons."""
    if k == 0:
        return ExactMatrix.identity(a.dim)
    base = a
    if k < 0:
        base = mat_inverse(a, counter)
        k = -k
    result = None
    square = base
    while k:
        if k & 1:
            result = square if result is None else mat_mul(result, square, counter)
        k >>= 1
        if k:
            square = mat_mul(square, square, counter)
    return result


class PowerCache:
    """Cache of computed powers of one base matrix, for cross-power reuse."""

    def __init__(self, base: ExactMatrix):
        self.base = base
        self.powers: dict[int, ExactMatrix] = {1: base}

    def planned_power(self, k: int, counter: OpCounter | None = None) -> ExactMatrix:
        """Power through the optimal storage plan, remembering intermediates."""
        if k == 1:
            return self.base
        if k in self.powers:
            return self.powers[k]
        result = _pow_planned(self.base, k, optimal_storage(k), counter, self.powers)
        self.powers[k] = result
        return result

    def greedy_power(self, k: int, counter: OpCounter | None = None) -> ExactMatrix:
        """Power assembled greedily from already-cached exponents."""
        if k < 1:
            raise ValueError("greedy_power needs k >= 1")
        if k in self.powers:
            return self.powers[k]
        largest = max(e for e in self.powers if e < k)
        rest = self.greedy_power(k - largest, counter)
        result = mat_mul(self.powers[largest], rest, counter)
        self.powers[k] = result
        return result
