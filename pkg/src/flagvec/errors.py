"""Exception types shared across the package."""


class FlagVecError(Exception):
    """Base class for all errors raised by flagvec."""


class InvalidParams(FlagVecError):
    """A construction parameter is outside the supported domain."""


class DeskScaleExceeded(InvalidParams):
    """The requested object is larger than the enumeration budget allows."""


class FaceNotInLattice(FlagVecError):
    """A vertex set was passed that is not a face of the lattice."""


class MissingEntry(FlagVecError):
    """A flag-vector entry needed for the computation is absent."""


class IncompleteBasis(FlagVecError):
    """Sparse flag data does not cover the whole sparse basis."""


class DimensionMismatch(FlagVecError):
    """Objects of different dimensions were combined."""


class UnsupportedDimension(FlagVecError):
    """The operation is only defined for specific dimensions."""


class NotEulerian(FlagVecError):
    """The flag data is inconsistent with an Eulerian lattice."""


class DegreeMismatch(FlagVecError):
    """A cd-word's degree does not match the polytope dimension."""
