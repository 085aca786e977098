"""Exception hierarchy shared by all fuzzkey modules."""


class FuzzkeyError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(FuzzkeyError):
    """A value violates a construction invariant (bad N, L, shape params, ...)."""


class ContractViolationError(FuzzkeyError):
    """Caller broke an operation precondition (length mismatch, empty input, ...)."""


class DataFormatError(FuzzkeyError):
    """Malformed input data: CSV dialect violations, bad envelope bytes."""


class InvalidKeyError(ConfigurationError):
    """Cipher key is empty or contains bytes outside the mode's alphabet."""


class InvalidPlaintextError(DataFormatError):
    """Plaintext contains bytes outside the cipher mode's alphabet."""


class IntegrityError(FuzzkeyError):
    """Envelope tag does not match the ciphertext."""
