"""Exception hierarchy shared by every module of the package."""


class AlgebraError(Exception):
    """Base class for all library errors."""


# scalars
class FieldMismatch(AlgebraError):
    pass


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class ZeroInput(AlgebraError, ValueError):
    pass


class InvalidField(AlgebraError, ValueError):
    """A field descriptor failed validation (non-prime modulus, reducible minpoly, ...)."""


class UnsupportedField(AlgebraError):
    """The requested computation has no implemented algorithm over this field."""


# groups
class DimensionMismatch(AlgebraError, ValueError):
    pass


class GroupMismatch(AlgebraError):
    pass


class RelationNotKilled(AlgebraError):
    def __init__(self, generator, image):
        self.generator = generator
        self.image = image
        super().__init__(
            f"canonical generator {generator} has finite order but its image {image} does not"
        )


class ZeroGenerator(AlgebraError, ValueError):
    pass


class NotAnIsomorphism(AlgebraError):
    pass


# linear algebra / algebras
class AmbientMismatch(AlgebraError):
    pass


class NotSplitOverField(AlgebraError):
    def __init__(self, factors):
        # factors: list of (polynomial coefficients low->high, multiplicity)
        self.factors = factors
        degrees = sorted(len(f) - 1 for f, _ in factors)
        self.degrees = degrees
        super().__init__(f"characteristic polynomial has non-linear factors of degrees {degrees}")


class NotDiagonalizable(AlgebraError):
    def __init__(self, eigenvalue, algebraic, geometric):
        self.eigenvalue = eigenvalue
        self.algebraic = algebraic
        self.geometric = geometric
        super().__init__(
            f"eigenvalue {eigenvalue}: algebraic multiplicity {algebraic}, geometric {geometric}"
        )


class NotAnAutomorphism(AlgebraError):
    pass


# gradings
class NotDirectSum(AlgebraError):
    def __init__(self, total_dim, rank, dim):
        self.total_dim = total_dim
        self.rank = rank
        self.dim = dim
        super().__init__(
            f"components have total dimension {total_dim} and span rank {rank}; algebra has dimension {dim}"
        )


class AxiomViolated(AlgebraError):
    def __init__(self, g, h, witness):
        self.g = g
        self.h = h
        self.witness = witness
        super().__init__(f"product of components {g} and {h} leaves the component of {g + h}")


class NotARealization(AlgebraError):
    pass


class NotCompatible(AlgebraError):
    def __init__(self, deficit):
        self.deficit = deficit
        super().__init__(f"component intersections miss {deficit} dimensions")


class ComponentNotPreserved(AlgebraError):
    def __init__(self, degree):
        self.degree = degree
        super().__init__(f"the map does not preserve the component of degree {degree}")


# comodules / characters
class NotAGenericAutomorphism(AlgebraError):
    pass


class CharacterValueUnavailable(AlgebraError):
    pass


# extension
class NotDefinedOverBase(AlgebraError):
    def __init__(self, degree, rational_dim, dim):
        self.degree = degree
        self.rational_dim = rational_dim
        self.dim = dim
        super().__init__(
            f"component of degree {degree} has dimension {dim} but only {rational_dim} "
            "dimensions of base-rational points"
        )


# catalog / io
class UnknownEntry(AlgebraError, KeyError):
    pass


class ParseError(AlgebraError, ValueError):
    def __init__(self, message, path="$", line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = path if line is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class ValidationError(AlgebraError, ValueError):
    def __init__(self, cause):
        self.cause = cause
        super().__init__(str(cause))
