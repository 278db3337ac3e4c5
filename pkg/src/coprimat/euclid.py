"""Quotient sequences, continued fractions, Bezout tables and key policy.

A coprime pair (k1, k2) with k1 > k2 > 0 and its Euclid quotient sequence
determine each other uniquely.  The quotient sequence is the combinatorial
core of the recovery key: recovery walks the quotients, and the final
Bezout row (p, t) with p*k1 + t*k2 = 1 gives the one-shot form C^p * D^t.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import BadOrder, NotCoprime

__all__ = [
    "CoprimePair",
    "QuotientSequence",
    "BezoutRow",
    "BezoutTable",
    "quotient_sequence",
    "continued_fraction_eval",
    "quotients_to_pair_matrix",
    "bezout_table",
    "closed_form_coefficients",
    "recovery_op_count",
    "gauss_kuzmin_probability",
    "keygen_quotients",
    "KeygenResult",
]


@dataclass(frozen=True)
class CoprimePair:
    """Exponent pair with k1 > k2 > 0 and gcd(k1, k2) == 1."""

    k1: int
    k2: int

    def __post_init__(self):
        if self.k2 <= 0 or self.k1 <= self.k2:
            raise BadOrder(f"need k1 > k2 > 0, got ({self.k1}, {self.k2})")
        if math.gcd(self.k1, self.k2) != 1:
            raise NotCoprime(f"gcd({self.k1}, {self.k2}) != 1")

    def as_tuple(self) -> tuple[int, int]:
        return (self.k1, self.k2)


@dataclass(frozen=True)
class QuotientSequence:
    """Canonical Euclid quotients (q2, ..., q_{r+1}) of a coprime pair.

    Canonical form means the last quotient is at least 2 (a trailing 1 is
    always folded into its predecessor), which makes the map between pairs
    and sequences a bijection.
    """

    quotients: tuple[int, ...]

    def __post_init__(self):
        qs = tuple(int(q) for q in self.quotients)
        object.__setattr__(self, "quotients", qs)
        if not qs:
            raise ValueError("quotient sequence must be non-empty")
        if any(q < 1 for q in qs):
            raise ValueError("quotients must be positive")
        if qs[-1] < 2:
            raise ValueError("canonical sequences end with a quotient >= 2")

    @property
    def r(self) -> int:
        """Number of divisions in the underlying Euclid run."""
        return len(self.quotients)

    def __iter__(self):
        return iter(self.quotients)

    def __len__(self):
        return len(self.quotients)

    def __getitem__(self, idx):
        return self.quotients[idx]

    @classmethod
    def canonical(cls, raw: list[int] | tuple[int, ...]) -> "QuotientSequence":
        """Build a sequence, folding a trailing //..., q, 1// into //..., q+1//."""
        qs = list(int(q) for q in raw)
        if len(qs) > 1 and qs[-1] == 1:
            qs[-2] += 1
            qs.pop()
        return cls(tuple(qs))


@dataclass(frozen=True)
class BezoutRow:
    """One identity p*k1 + t*k2 = remainder, with p and t of opposite sign."""

    index: int
    p: int
    t: int
    remainder: int


# a table is simply the ordered rows; the last row has remainder 1
BezoutTable = tuple[BezoutRow, ...]


def quotient_sequence(pair: CoprimePair) -> QuotientSequence:
    """Quotients of the Euclid run on (k1, k2), down to remainder zero.

    Every adjacent remainder pair along the way is itself coprime, so the
    run always ends ... , 1, 0 and the final quotient is the last remainder
    before 1.
    """
    a, b = pair.k1, pair.k2
    qs = []
    while b:
        q, r = divmod(a, b)
        qs.append(q)
        a, b = b, r
    return QuotientSequence(tuple(qs))


def continued_fraction_eval(qs: QuotientSequence) -> CoprimePair:
    """Evaluate //q2, ..., q_{r+1}// exactly into the reduced pair (k1, k2).

    Inverse of :func:`quotient_sequence` on canonical sequences.
    """
    num, den = qs[-1], 1
    for q in reversed(qs[:-1]):
        num, den = q * num + den, num
    return CoprimePair(num, den)


def quotients_to_pair_matrix(qs: QuotientSequence) -> CoprimePair:
    """Same evaluation through the 2x2 product [[q, 1], [1, 0]] ... (k_r, 1).

    Kept separate from :func:`continued_fraction_eval` as an independent
    route; both must agree on every sequence.
    """
    k1, k2 = qs[-1], 1
    for q in reversed(qs[:-1]):
        k1, k2 = q * k1 + k2, k1
    return CoprimePair(k1, k2)


def bezout_table(pair: CoprimePair) -> BezoutTable:
    """Rows (p_l, t_l, k_{l+2}) with p_l*k1 + t_l*k2 = k_{l+2} for every
    Euclid step, ending at remainder 1.

    Signs alternate (p_l * t_l < 0).  For k2 == 1 there are no steps and
    the table is empty.
    """
    a, b = pair.k1, pair.k2
    # coefficients expressing the current remainders over (k1, k2)
    pa, ta = 1, 0
    pb, tb = 0, 1
    rows = []
    index = 1
    while b > 1:
        q, r = divmod(a, b)
        pr, tr = pa - q * pb, ta - q * tb
        rows.append(BezoutRow(index, pr, tr, r))
        a, b = b, r
        pa, ta, pb, tb = pb, tb, pr, tr
        index += 1
    return tuple(rows)


_CLOSED_FORMS = {
    1: lambda q: (1, -q[0]),
    2: lambda q: (-q[1], q[0] * q[1] + 1),
    3: lambda q: (q[1] * q[2] + 1, -(q[0] * (1 + q[1] * q[2]) + q[2])),
    4: lambda q: (
        -q[1] * (1 + q[2] * q[3]) - q[3],
        q[0] * q[1] + q[0] * q[3] + q[2] * q[3] + q[0] * q[1] * q[2] * q[3] + 1,
    ),
}


def closed_form_coefficients(qs: QuotientSequence, l: int) -> tuple[int, int]:
    """Symbolic (p_l, t_l) in terms of the quotients, for rows 1 through 4.

    Cross-check only; the iterative table is the primary computation.
    """
    if l not in _CLOSED_FORMS:
        raise IndexError(f"closed forms exist for rows 1..4, not {l}")
    if len(qs) < l + 1:
        raise IndexError(f"row {l} needs at least {l + 1} quotients")
    return _CLOSED_FORMS[l](qs.quotients)


def recovery_op_count(qs: QuotientSequence) -> int:
    """Operations (products plus inversions) of the quotient-walk recovery.

    One step per quotient except the last, costing q + 1 each.
    """
    return sum(q + 1 for q in qs[:-1])


def gauss_kuzmin_probability(a: int) -> float:
    """Probability that a quotient of a random continued fraction equals a.

    log2(1 + 1/a) - log2(1 + 1/(a+1)); about 0.415, 0.170, 0.093, 0.059
    for a = 1..4, so nearly three quarters of random quotients are small.
    A key-choice policy that wants unguessable quotients should pick them
    larger than 4.
    """
    if a < 1:
        raise ValueError("quotient values start at 1")
    return math.log2(1 + 1 / a) - math.log2(1 + 1 / (a + 1))


@dataclass(frozen=True)
class KeygenResult:
    quotients: QuotientSequence
    pair: CoprimePair


def keygen_quotients(count: int, min_quotient: int, rng_seed: int) -> KeygenResult:
    """Draw a reproducible quotient sequence and its induced pair.

    Quotients are uniform on [min_quotient, min_quotient + 15]; the final
    quotient is drawn from at least 2 so the sequence is canonical.  The
    same seed always yields the same key.
    """
    if count < 1:
        raise ValueError("need at least one quotient")
    if min_quotient < 1:
        raise ValueError("minimum quotient must be at least 1")
    rng = random.Random(rng_seed)
    qs = [rng.randint(min_quotient, min_quotient + 15) for _ in range(count - 1)]
    last_lo = max(2, min_quotient)
    qs.append(rng.randint(last_lo, last_lo + 15))
    seq = QuotientSequence(tuple(qs))
    return KeygenResult(seq, continued_fraction_eval(seq))
