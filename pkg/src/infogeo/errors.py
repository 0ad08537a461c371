"""Exception taxonomy shared by all infogeo modules."""


class InfoGeoError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(InfoGeoError, ValueError):
    """A value violates a documented type invariant."""


class DimensionMismatch(InfoGeoError, ValueError):
    """Operands have incompatible dimensions."""


class SingularMetric(InfoGeoError, ValueError):
    """The metric quadratic form is evaluated along a direction that leaves
    the face of the simplex, i.e. dp_i != 0 where p_i = 0."""


class AbsoluteContinuityViolation(InfoGeoError, ValueError):
    """The KL divergence is undefined: the first argument puts mass where
    the second has none."""


class ZeroLikelihoodBoth(InfoGeoError, ValueError):
    """Observed counts are impossible under both hypotheses."""


class OddDimension(InfoGeoError, ValueError):
    """An event vector cannot be split into consecutive pairs."""


class EmptyGrid(InfoGeoError, ValueError):
    """A sample grid has fewer than two points."""


class NotOrthogonal(InfoGeoError, ValueError):
    """A real matrix fails m.T @ m = I within tolerance."""


class NotUnitary(InfoGeoError, ValueError):
    """A complex matrix fails u.conj().T @ u = I within tolerance."""


class WrongType(InfoGeoError, ValueError):
    """A conversion was requested for a map of the wrong commutation type."""


class ImpossibleOutcome(InfoGeoError, ValueError):
    """A forced measurement outcome has (numerically) zero probability."""
