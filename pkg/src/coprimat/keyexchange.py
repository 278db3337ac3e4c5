"""Toy Diffie-Hellman and RSA, just strong enough to move a key tuple.

Everything here is educational, not secure: the moduli in the examples
are three or four digits, there is no padding, and no attempt at
constant-time anything.  Do not protect real secrets with this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import BadSecretKey, MessageTooLarge, PartTooWide

__all__ = [
    "DISCLAIMER",
    "DHParams",
    "dh_public",
    "dh_shared",
    "dh_pairwise",
    "search_secret",
    "RSAKeySet",
    "rsa_keygen",
    "rsa_encrypt",
    "rsa_decrypt",
    "pack_keys",
    "unpack_keys",
    "is_prime",
]

DISCLAIMER = "educational, not secure"

_SMALL_PRIME_LIMIT = 10 ** 6
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Trial division below 1e6, fixed-witness Miller-Rabin above."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13):
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _SMALL_PRIME_LIMIT:
        f = 17
        while f * f <= n:
            if n % f == 0:
                return False
            f += 2
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class DHParams:
    """Public pair (p, q): prime modulus and a base that p does not divide."""

    p: int
    q: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        if self.q % self.p == 0:
            raise ValueError("base must not be a multiple of the modulus")


def dh_public(params: DHParams, secret: int) -> int:
    """q^secret mod p, the number a party exposes."""
    if secret < 1:
        raise ValueError("secret exponent must be positive")
    return pow(params.q, secret, params.p)


def dh_shared(params: DHParams, received: int, secret: int) -> int:
    """received^secret mod p; both parties land on the same value."""
    if not 0 < received < params.p:
        raise ValueError("received value must lie in (0, p)")
    return pow(received, secret, params.p)


def dh_pairwise(params: DHParams, secrets: list[int]) -> list[list[int]]:
    """Symmetric matrix of pairwise shared keys for n parties, zero diagonal."""
    if len(secrets) < 2:
        raise ValueError("pairwise exchange needs at least two parties")
    publics = [dh_public(params, a) for a in secrets]
    n = len(secrets)
    return [
        [0 if i == j else pow(publics[j], secrets[i], params.p) for j in range(n)]
        for i in range(n)
    ]


def search_secret(
    params: DHParams,
    received: int,
    candidates: Iterable[int],
    predicate: Callable[[int], bool],
) -> tuple[int, int] | None:
    """First candidate secret whose shared key satisfies the predicate.

    Mirrors a sender trying exponents until the resulting key looks
    convenient; what counts as convenient is the caller's business.
    """
    for x in candidates:
        key = dh_shared(params, received, x)
        if predicate(key):
            return x, key
    return None


@dataclass(frozen=True)
class RSAKeySet:
    p: int
    q: int
    n: int
    phi: int
    d: int
    e: int


def rsa_keygen(p: int, q: int, d: int) -> RSAKeySet:
    """Build the key set around a chosen secret exponent d.

    d must be coprime with both the totient and the modulus, otherwise no
    encryption exponent exists.
    """
    if not is_prime(p) or not is_prime(q):
        raise ValueError("p and q must both be prime")
    n = p * q
    phi = (p - 1) * (q - 1)
    if math.gcd(d, phi) != 1 or math.gcd(d, n) != 1:
        raise BadSecretKey(f"d={d} shares a factor with phi={phi} or n={n}")
    e = pow(d, -1, phi)
    return RSAKeySet(p=p, q=q, n=n, phi=phi, d=d, e=e)


def rsa_encrypt(msg: int, e: int, n: int) -> int:
    if not 0 <= msg < n:
        raise MessageTooLarge(f"message must lie in [0, {n})")
    return pow(msg, e, n)


def rsa_decrypt(cipher: int, d: int, n: int) -> int:
    if not 0 <= cipher < n:
        raise MessageTooLarge(f"ciphertext must lie in [0, {n})")
    return pow(cipher, d, n)


def pack_keys(parts: list[int], width: int) -> int:
    """Concatenate parts as fixed-width decimal blocks into one integer."""
    if width < 1:
        raise ValueError("width must be positive")
    for part in parts:
        if not 0 <= part < 10 ** width:
            raise PartTooWide(f"{part} does not fit in {width} decimal digits")
    return int("".join(f"{part:0{width}d}" for part in parts))


def unpack_keys(packed: int, count: int, width: int) -> list[int]:
    """Split a packed integer back into its fixed-width parts."""
    if packed < 0:
        raise ValueError("packed value must be nonnegative")
    text = str(packed).zfill(count * width)
    if len(text) > count * width:
        raise PartTooWide(f"{packed} has more than {count} x {width} digits")
    return [int(text[i * width:(i + 1) * width]) for i in range(count)]
