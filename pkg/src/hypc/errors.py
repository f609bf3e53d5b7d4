"""Exception hierarchy. Every error carries a stable ``kind`` used by the CLI."""


class HypcError(Exception):
    kind = "HypcError"


class NotOnLattice(HypcError, ValueError):
    kind = "NotOnLattice"


class ZeroBase(HypcError, ValueError):
    kind = "ZeroBase"


class PoleAtPoint(HypcError, ArithmeticError):
    kind = "PoleAtPoint"


class Indeterminate(HypcError, ArithmeticError):
    kind = "Indeterminate"


class DenominatorPole(HypcError, ValueError):
    kind = "DenominatorPole"


class SeriesDivergent(HypcError, ArithmeticError):
    kind = "SeriesDivergent"


class BudgetExceeded(HypcError, RuntimeError):
    kind = "BudgetExceeded"


class ParameterCollision(HypcError, ValueError):
    kind = "ParameterCollision"


class ResonantParameters(HypcError, ValueError):
    kind = "ResonantParameters"


class OnUnitCircle(HypcError, ValueError):
    kind = "OnUnitCircle"


class DivergentIntegral(HypcError, ValueError):
    kind = "DivergentIntegral"


class NotAbsolutelyConvergent(HypcError, ValueError):
    kind = "NotAbsolutelyConvergent"


class QuadratureBudgetExceeded(HypcError, RuntimeError):
    kind = "QuadratureBudgetExceeded"


class OscillationTooSlow(HypcError, ValueError):
    kind = "OscillationTooSlow"


class NotL2(HypcError, ValueError):
    kind = "NotL2"


class NonUnimodular(HypcError, ValueError):
    kind = "NonUnimodular"


class DegenerateMatrix(HypcError, ValueError):
    kind = "DegenerateMatrix"


class UnknownSuite(HypcError, KeyError):
    kind = "UnknownSuite"
