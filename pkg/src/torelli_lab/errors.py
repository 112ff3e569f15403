"""Exception hierarchy shared by every layer of the package."""


class AlgebraError(Exception):
    """Base class for all errors raised by torelli_lab."""


# --- field construction and arithmetic ---

class NotPrime(AlgebraError):
    pass


class DegreeZero(AlgebraError):
    pass


class CtxMismatch(AlgebraError):
    """Two elements from structurally different fields were combined."""


class DivideByZero(AlgebraError, ZeroDivisionError):
    pass


class WrongCharacteristic(AlgebraError):
    pass


# --- polynomials and rational functions ---

class BothZero(AlgebraError):
    pass


class NonSplitDenominator(AlgebraError):
    """Denominator has an irreducible factor of degree > 1 over the field.

    The offending residual factor is attached as .residual.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


# --- curve models ---

class WrongDegree(AlgebraError):
    pass


class NotSquarefree(AlgebraError):
    pass


class DuplicateBranchPoint(AlgebraError):
    pass


class ZeroResidue(AlgebraError):
    pass


class FieldTooSmall(AlgebraError):
    pass


class NonGenericB(AlgebraError):
    pass


class DegenerateCurve(AlgebraError):
    pass


class TraceObstruction(DegenerateCurve):
    """Constant term has no Artin-Schreier preimage e with e^2+e=c over this
    field; the curve is a twist not expressible in normal form without a
    field extension."""


class ModelMismatch(AlgebraError):
    pass


# --- sections and linear maps ---

class PoleAtBranch(AlgebraError):
    pass


class NotInKernel(AlgebraError):
    pass


class DenominatorOverflow(AlgebraError):
    pass


# --- surface lattice ---

class SurfaceMismatch(AlgebraError):
    pass


class OddAdjunction(AlgebraError):
    pass


# --- parsing ---

class ParseError(AlgebraError):
    """Syntax error in a field/polynomial/curve spec string.

    .pos is the byte offset of the first offending character.
    """

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos
