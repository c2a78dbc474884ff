"""Typed errors with stable, machine-parsable codes.

Every data-level failure raised by the toolkit derives from BitextError and
carries a `code` attribute. The CLI prints failures as a single
``CODE: message`` line on stderr and exits 3 (2 for usage/config errors).
"""


class BitextError(Exception):
    """Base class for all toolkit data errors."""

    code = "ERROR"


class ConfigError(BitextError):
    """Invalid configuration or command usage (exit code 2 at the CLI)."""

    code = "CONFIG_ERROR"


# corpus ingestion
class LineCountMismatch(BitextError):
    code = "LINE_COUNT_MISMATCH"


class InvalidEncoding(BitextError):
    code = "INVALID_ENCODING"


class MalformedTsv(BitextError):
    code = "MALFORMED_TSV"


class EmptyCorpus(BitextError):
    code = "EMPTY_CORPUS"


# embeddings
class MalformedHeader(BitextError):
    code = "MALFORMED_HEADER"


class DimensionMismatch(BitextError):
    code = "DIMENSION_MISMATCH"


class InvalidNumber(BitextError):
    code = "INVALID_NUMBER"


class ZeroVector(BitextError):
    code = "ZERO_VECTOR"


class BadMagic(BitextError):
    code = "BAD_MAGIC"


class UnsupportedVersion(BitextError):
    code = "UNSUPPORTED_VERSION"


class TruncatedFile(BitextError):
    code = "TRUNCATED_FILE"


class UnsortedIds(BitextError):
    code = "UNSORTED_IDS"


# scoring
class MissingEmbeddings(BitextError):
    code = "MISSING_EMBEDDINGS"


# metrics
class LengthMismatch(BitextError):
    code = "LENGTH_MISMATCH"


class ConstantSeries(BitextError):
    code = "CONSTANT_SERIES"
