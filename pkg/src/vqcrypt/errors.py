"""Exception types shared across the codec."""


class PgmParseError(ValueError):
    """Malformed portable graymap input."""


class ContainerError(ValueError):
    """Corrupt or inconsistent cipher container data."""


class BadMagicError(ContainerError):
    """Container does not start with the expected magic bytes."""


class BadVersionError(ContainerError):
    """Container version byte is not one this codec understands."""


class BadFlagsError(ContainerError):
    """Container flags byte does not select exactly one payload scheme."""


class LengthError(ContainerError):
    """Container is truncated or carries trailing bytes."""


class IndexRangeError(ContainerError):
    """An index entry points outside the codebook."""
