"""Exception hierarchy shared by all coprimat modules."""


class CoprimatError(Exception):
    """Base class for every error raised by this package."""


class FileFormatError(CoprimatError):
    """A workspace file is malformed, has an unknown kind, or an unsupported version."""


class NotCoprime(CoprimatError):
    """The two exponents share a common factor greater than one."""


class BadOrder(CoprimatError):
    """Exponent pair violates k1 > k2 > 0."""


class DimensionMismatch(CoprimatError):
    """Matrix operands do not have compatible dimensions."""


class SingularMatrix(CoprimatError):
    """A matrix that must be inverted has determinant zero."""


class ZeroDeterminant(SingularMatrix):
    """A determinant required to be nonzero is zero."""


class SingularZ(SingularMatrix):
    """A catalog matrix is singular for the derived z value."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"catalog entry {index} is singular for this z")


class VerificationFailed(CoprimatError):
    """Recovered matrix failed the power check against the published pair.

    The wrong matrix is kept on the exception so callers can inspect or
    dump what a mistaken key actually produces.
    """

    def __init__(self, matrix, message: str = "recovered matrix failed verification"):
        self.matrix = matrix
        super().__init__(message)


class KeyMaterialError(CoprimatError):
    """Base class for key-handling errors (exit code 7 in the CLI)."""


class NotInvertible(KeyMaterialError):
    """No modular inverse exists for the given modulus."""


class BadSecretKey(KeyMaterialError):
    """Secret exponent is not coprime with the totient or the modulus."""


class MessageTooLarge(KeyMaterialError):
    """Message does not fit below the modulus."""


class PartTooWide(KeyMaterialError):
    """A packed key part does not fit in the requested decimal width."""


class KeyFileMismatch(KeyMaterialError):
    """Key file carries quotients that disagree with its exponent pair."""
