"""
Exception hierarchy. The CLI maps the three families onto exit codes:
validation 2, physics domain 3, numerical accuracy 4.
"""


class BirefringenceError(Exception):
    exit_code = 1


class ValidationError(BirefringenceError, ValueError):
    exit_code = 2

    def __init__(self, message: str, field: str = None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class DimensionError(ValidationError):
    pass


class ArgumentDomainError(ValidationError):
    pass


class PhysicsDomainError(BirefringenceError, ValueError):
    exit_code = 3


class PurityFloorError(PhysicsDomainError):
    pass


class ThetaEqualDomainError(PhysicsDomainError):
    def __init__(self, message: str, factor: str, value: float):
        self.factor = factor
        self.value = value
        super().__init__(f"{message} ({factor} = {value:.6g})")


class NoDiscernibleWindowError(PhysicsDomainError):
    def __init__(self, message: str, theta_lower_sq: float, theta_upper_sq: float):
        self.theta_lower_sq = theta_lower_sq
        self.theta_upper_sq = theta_upper_sq
        super().__init__(
            f"{message} (theta_i^2 = {theta_lower_sq:.6g}, theta_ii^2 = {theta_upper_sq:.6g})"
        )


class AccuracyError(BirefringenceError, ArithmeticError):
    exit_code = 4

    def __init__(self, message: str, estimate: float = float("nan"), error: float = float("nan")):
        self.estimate = estimate
        self.error = error
        super().__init__(f"{message} (best estimate {estimate:.6g}, error {error:.3g})")


class ExponentOverflowError(AccuracyError, OverflowError):
    def __init__(self, exponent: float):
        self.exponent = exponent
        super().__init__(f"exp(a)*erfc(z) overflows, exponent {exponent:.6g}")
