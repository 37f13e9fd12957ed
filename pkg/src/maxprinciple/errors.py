"""Exception types raised across the package."""


class MaxPrincipleError(Exception):
    """Base class for all package errors."""


class DegreeOverflowInSigma(MaxPrincipleError, ArithmeticError):
    """Product of two sigma-linear coefficients would be quadratic in sigma."""


class ZeroPolynomial(MaxPrincipleError, ValueError):
    """Operation is undefined for the identically zero polynomial."""


class DiagonalPoint(MaxPrincipleError, ValueError):
    """Numeric evaluation requested at lambda1 == lambda2."""


class CriticalDenominatorZero(MaxPrincipleError, ZeroDivisionError):
    """w_H + lambda1 * w_K vanishes, so the critical-point ratio is undefined."""


class NonpositiveCurvature(MaxPrincipleError, ValueError):
    """Principal curvatures must be strictly positive."""


class ConditionIPrerequisiteFailed(MaxPrincipleError):
    """Condition III needs q > 0 on the open half-line."""


class NonPositiveLeadingCoefficient(MaxPrincipleError, ValueError):
    """First nonzero coefficient of p or q is negative; no case applies."""


class InvalidCaseParams(MaxPrincipleError, ValueError):
    """Case parameters violate the index bounds or standing hypotheses."""


class CrossCheckMismatch(MaxPrincipleError):
    """Predicted and computed leading coefficients disagree."""

    def __init__(self, report):
        super().__init__(f"cross-check mismatch: {report.mismatches}")
        self.report = report


class InvariantBreach(MaxPrincipleError, AssertionError):
    """An internal consistency check failed; indicates a bug."""


class TheoremViolationFound(InvariantBreach):
    """A candidate passed every condition at sigma > 1."""

    def __init__(self, candidate, report):
        super().__init__(f"candidate passes all conditions: {candidate}")
        self.candidate = candidate
        self.report = report
