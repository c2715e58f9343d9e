"""Exception hierarchy shared by the whole engine."""


class EllipticaError(Exception):
    """Base class for all engine errors."""


# --- linear algebra ---------------------------------------------------------

class CompositionNotZero(EllipticaError):
    """d_out . d_in != 0: the differential upstream is broken."""


class NotASubspace(EllipticaError):
    """A claimed boundary vector is outside the span of the cycles."""


# --- graded algebra / Lie algebra -------------------------------------------

class DegreeMismatch(EllipticaError):
    """An element fails a homogeneity or degree-shift requirement."""


# --- models -----------------------------------------------------------------

class TruncationNotClosed(EllipticaError):
    """A differential image escapes the truncated generator range."""


class InternalInconsistency(EllipticaError):
    """A quantity the theory forces to vanish came out nonzero."""


class ExactnessFailure(EllipticaError):
    """A Whitehead sequence node failed im = ker; this is an engine bug."""


class NotEllipticWithinBound(EllipticaError):
    """Nonzero cohomology persists past the elliptic window."""


class UnboundedGamma(EllipticaError):
    """Vanishing of the Gamma spaces could not be certified in the window."""


# --- DSL / catalog ----------------------------------------------------------

class ModelSyntaxError(EllipticaError):
    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = "" if line is None else f" (line {line}" + (
            "" if col is None else f", col {col}") + ")"
        super().__init__(message + where)


class UnknownGenerator(ModelSyntaxError):
    pass


class DegreeError(ModelSyntaxError):
    pass


class OddSquareError(ModelSyntaxError):
    pass


class ValidationError(EllipticaError):
    """A parsed model failed structural validation (d^2 != 0, etc.)."""


class UnknownCatalogEntry(EllipticaError):
    pass


class BadParameter(EllipticaError):
    pass
