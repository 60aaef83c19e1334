"""Exception hierarchy shared across the package."""


class PhemotionError(Exception):
    """Base class for every error raised by this package."""


# -- palette / mapping ------------------------------------------------------

class UnknownTarget(PhemotionError):
    """An edit referenced a label that is not in the palette."""


class DuplicateLabel(PhemotionError):
    """Adding or renaming would produce two tokens with the same label."""


class InvalidLabel(PhemotionError):
    """Label is empty after trimming, or longer than 40 characters."""


class IntensityOutOfRange(PhemotionError):
    """Intensity outside [0, 4.5] or not a multiple of 0.1."""


class SequenceGap(PhemotionError):
    """Edit event sequence number does not continue the log."""


class InvalidMatrix(PhemotionError):
    """Mapping matrix violates one of its invariants."""


# -- geometry ---------------------------------------------------------------

class SubdivisionOutOfRange(PhemotionError):
    """Icosphere subdivision level outside [0, 6]."""


class GridTooLarge(PhemotionError):
    """Legend grid dimensions outside [2, 9]."""


# -- export -----------------------------------------------------------------

class InvalidMesh(PhemotionError):
    """Mesh fails basic structural checks (counts, indices, unit normals)."""


class ParseError(PhemotionError):
    """Manifest bytes are not well-formed JSON."""


class SchemaViolation(PhemotionError):
    """Manifest JSON is valid but does not match the schema."""


class VersionMismatch(PhemotionError):
    """Manifest carries an unsupported version number."""


# -- provider pipeline ------------------------------------------------------

class ProviderUnavailable(PhemotionError):
    """Chat provider unreachable after exhausting retries, or disabled."""


class EmptyReply(PhemotionError):
    """Provider returned an empty assistant message."""


class MalformedProviderOutput(PhemotionError):
    """Provider output could not be parsed even after one reprompt."""


class TooFewTokens(PhemotionError):
    """Extraction produced fewer than 4 usable tokens after one reprompt."""
