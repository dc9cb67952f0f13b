"""Exception taxonomy, aligned with the CLI exit codes.

Exit code 1: the input could not be read (syntax, bad names, conflicting
duplicate entries).  Exit code 2: the input parsed but violates a
precondition (degenerate metric, connection table failing the defining
identities, operation applied to a structure outside its theorem's
hypotheses).  Exit code 3: an internal certificate failed to re-verify —
always a bug or corrupted input, never a normal outcome.
"""


class MetricLieError(Exception):
    exit_code = 1


class InputFormatError(MetricLieError):
    """Malformed input document (syntax / schema / duplicate conflicts)."""

    exit_code = 1


class PreconditionError(MetricLieError):
    """Structurally valid input outside the hypotheses of the operation."""

    exit_code = 2


class CertificateError(MetricLieError):
    """A produced certificate or theorem-backed claim failed verification."""

    exit_code = 3
