"""Blur protocol: hide the determinant-ratio leak of a published pair.

For an honest pair the ratio ln(det C) / ln(det D) sits close to k1/k2,
which hands an eavesdropper the exponents.  The fix: derive a complex
number z from modular inverses of the exponents, pick two catalog matrices
parameterised by z, and publish (Z_C * C, Z_D * D) instead.  Undoing the
blur costs the receiver two inversions and two products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .errors import NotInvertible, SingularZ, ZeroDeterminant
from .euclid import CoprimePair
from .exactnum import GaussianRational, I, ONE, ZERO, mod_inverse_class
from .hiding import HiddenPair
from .matrix import ExactMatrix, OpCounter, determinant, mat_inverse, mat_mul

__all__ = [
    "DisguiseKey",
    "derive_z",
    "catalog_size",
    "catalog_formula",
    "catalog_matrix",
    "catalog_manifest",
    "blur",
    "unblur",
    "det_ratio_leak",
    "ratio_fraction_guesses",
]


def _entry_zc(z, zc):
    return [[z, ONE], [-ONE, zc]]


def _entry_zd(z, zc):
    return [[I, z], [zc, -I]]


# index -> (formula text, builder); index 0 is the identity no-op entry.
# The formula strings are mirrored in catalog.txt, the shipped manifest.
_CATALOG: list[tuple[str, object]] = [
    ("identity", None),
    ("[[z, 1], [-1, z*]]", _entry_zc),
    ("[[i, z], [z*, -i]]", _entry_zd),
    ("[[z*, 1], [-1, z]]", lambda z, zc: [[zc, ONE], [-ONE, z]]),
    ("[[-i, z], [z*, i]]", lambda z, zc: [[-I, z], [zc, I]]),
    ("[[z, -1], [1, z*]]", lambda z, zc: [[z, -ONE], [ONE, zc]]),
    ("[[i, z*], [z, -i]]", lambda z, zc: [[I, zc], [z, -I]]),
    ("[[z, i], [i, z*]]", lambda z, zc: [[z, I], [I, zc]]),
    ("[[1, z], [-z*, 1]]", lambda z, zc: [[ONE, z], [-zc, ONE]]),
]


def catalog_size() -> int:
    """Number of catalog entries, identity entry 0 included."""
    return len(_CATALOG)


def catalog_formula(index: int) -> str:
    if not 0 <= index < len(_CATALOG):
        raise IndexError(f"catalog has entries 0..{len(_CATALOG) - 1}")
    return _CATALOG[index][0]


def catalog_manifest() -> str:
    """The shipped manifest text pinning index -> formula across releases."""
    return resources.files(__package__).joinpath("catalog.txt").read_text()


def catalog_matrix(index: int, z: GaussianRational, dim: int = 2) -> ExactMatrix:
    """Instantiate a catalog entry at z, embedded top-left for dim > 2.

    Raises SingularZ when the entry is singular for this z (entry 2, for
    instance, degenerates whenever |z| = 1).
    """
    if not 0 <= index < len(_CATALOG):
        raise IndexError(f"catalog has entries 0..{len(_CATALOG) - 1}")
    if index == 0:
        return ExactMatrix.identity(dim)
    if dim < 2:
        raise ValueError("catalog matrices need dimension >= 2")
    block = _CATALOG[index][1](z, z.conjugate())
    rows = [
        [
            block[i][j] if i < 2 and j < 2 else (ONE if i == j else ZERO)
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    m = ExactMatrix(rows)
    if not determinant(m):
        raise SingularZ(index)
    return m


@dataclass(frozen=True)
class DisguiseKey:
    """Everything the receiver needs: exponents, inverse class, catalog picks."""

    k1: int
    k2: int
    m: int
    l: int
    catalog_c: int
    catalog_d: int

    def __post_init__(self):
        CoprimePair(self.k1, self.k2)  # validates coprimality and order
        if self.m <= 1:
            raise ValueError("modulus m must exceed 1")
        if self.l < 0:
            raise ValueError("class shift l must be nonnegative")
        if math.gcd(self.k1, self.m) != 1 or math.gcd(self.k2, self.m) != 1:
            raise NotInvertible("both exponents must be invertible modulo m")
        for idx in (self.catalog_c, self.catalog_d):
            if not 0 <= idx < catalog_size():
                raise ValueError(f"catalog index {idx} out of range")
        if self.catalog_c == self.catalog_d:
            raise ValueError("the two catalog picks must differ")

    @property
    def pair(self) -> CoprimePair:
        return CoprimePair(self.k1, self.k2)

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.k1, self.k2, self.m, self.l, self.catalog_c, self.catalog_d)


def derive_z(key: DisguiseKey) -> GaussianRational:
    """z = kbar1 + i*kbar2, built from the modular inverse classes."""
    re = mod_inverse_class(key.k1, key.m, key.l)
    im = mod_inverse_class(key.k2, key.m, key.l)
    return GaussianRational(re, im)


def blur(hp: HiddenPair, key: DisguiseKey, counter: OpCounter | None = None) -> HiddenPair:
    """Left-multiply the pair by the two catalog matrices; two products."""
    z = derive_z(key)
    zc = catalog_matrix(key.catalog_c, z, hp.dim)
    zd = catalog_matrix(key.catalog_d, z, hp.dim)
    return HiddenPair(mat_mul(zc, hp.c, counter), mat_mul(zd, hp.d, counter))


def unblur(hp: HiddenPair, key: DisguiseKey, counter: OpCounter | None = None) -> HiddenPair:
    """Invert the blur; two inversions and two products."""
    z = derive_z(key)
    zc = catalog_matrix(key.catalog_c, z, hp.dim)
    zd = catalog_matrix(key.catalog_d, z, hp.dim)
    return HiddenPair(
        mat_mul(mat_inverse(zc, counter), hp.c, counter),
        mat_mul(mat_inverse(zd, counter), hp.d, counter),
    )


def _principal_log(value: GaussianRational) -> complex:
    """Principal-branch complex log of an exact value of any magnitude.

    Works directly on the integer parts so determinants far beyond float
    range still get an accurate log.
    """
    n = value.norm()
    magnitude = 0.5 * (math.log(n.numerator) - math.log(n.denominator))
    a = value.re.numerator * value.im.denominator
    b = value.im.numerator * value.re.denominator
    shift = max(a.bit_length(), b.bit_length()) - 500
    if shift > 0:
        a >>= shift
        b >>= shift
    return complex(magnitude, math.atan2(float(b), float(a)))


def det_ratio_leak(hp: HiddenPair) -> complex:
    """ln(det C) / ln(det D) with principal-branch logs, as a complex float.

    This is the eavesdropper's statistic: for an honest unblurred pair with
    positive real determinant of the seed its real part is exactly k1/k2;
    with complex determinants the branch wrapping distorts it, and after a
    blur it stops pointing at the exponent ratio altogether.
    """
    dc = determinant(hp.c)
    dd = determinant(hp.d)
    if not dc or not dd:
        raise ZeroDeterminant("leak ratio needs nonzero determinants")
    return _principal_log(dc) / _principal_log(dd)


def ratio_fraction_guesses(value: float, max_denominator: int = 40) -> list[Fraction]:
    """Small-denominator rational guesses near a leaked real part.

    What a cryptanalyst would tabulate when reading the ratio as k1/k2.
    """
    guesses = []
    for den in range(1, max_denominator + 1):
        f = Fraction(value).limit_denominator(den)
        if f not in guesses:
            guesses.append(f)
    guesses.sort(key=lambda f: abs(float(f) - value))
    return guesses[:5]
