"""lnlslab Exceptions"""
from typing import Optional, Any


class SpecialFunctionDomainError(Exception):
    """Exception raised when a special function is evaluated outside its domain.

    Args:
        function: name of the special function.
        argument: the offending argument.
        message: custom/pre-defined error message to be returned.

    Returns:
        message.
    """

    def __init__(
        self, function: str, argument: Any, message: Optional[str] = None
    ) -> None:
        self.function = function
        self.argument = argument
        self.message = (
            f"'{function}' is not defined at {argument!r}. "
            "The argument lies on a pole or a logarithmic singularity."
        )

        if message:
            self.message = message

        super().__init__(self.message)

    def __str__(self) -> str:
        return f"{self.message}"


class BranchCutError(SpecialFunctionDomainError):
    """Exception raised when a Wiener-Hopf factor is evaluated exactly on its cut.

    Args:
        factor: "K+" or "K-" (or the regularised G factors).
        z: the complex argument.
        message: custom/pre-defined error message to be returned.

    Returns:
        message.
    """

    def __init__(self, factor: str, z: complex, message: Optional[str] = None) -> None:
        cut = (
            "negative imaginary axis"
            if factor.endswith("+")
            else "positive imaginary axis"
        )
        if not message:
            message = (
                f"{factor} evaluated at z = {z!r}, which lies on its branch cut "
                f"(the {cut}). Approach the point from the analytic side."
            )
        super().__init__(factor, z, message)


class QuadratureConvergenceError(Exception):
    """Exception raised when the Legendre root finder fails to converge.

    Args:
        n_points: number of requested nodes.
        iterations: Newton iterations performed.
        message: custom/pre-defined error message to be returned.

    Returns:
        message.
    """

    def __init__(
        self, n_points: int, iterations: int, message: Optional[str] = None
    ) -> None:
        self.n_points = n_points
        self.iterations = iterations
        self.message = (
            f"Newton iteration for the {n_points}-point Gauss-Legendre rule "
            f"did not converge after {iterations} iterations."
        )

        if message:
            self.message = message

        super().__init__(self.message)

    def __str__(self) -> str:
        return f"{self.message}"


class IllConditionedSystemError(Exception):
    """Exception raised when a discretised system is singular or badly conditioned.

    Args:
        condition_estimate: estimated 1-norm condition number.
        limit: the largest accepted condition number.
        message: custom/pre-defined error message to be returned.

    Returns:
        message.
    """

    def __init__(
        self, condition_estimate: float, limit: float, message: Optional[str] = None
    ) -> None:
        self.condition_estimate = condition_estimate
        self.limit = limit
        self.message = (
            f"The linear system has condition estimate {condition_estimate:.3e}, "
            f"above the accepted limit {limit:.1e}."
        )

        if message:
            self.message = message

        super().__init__(self.message)

    def __str__(self) -> str:
        return f"{self.message}"


class EigenSolverError(Exception):
    """Exception raised when the dense symmetric eigensolver fails.

    Args:
        q_half_width: half-width Q of the truncated kernel.
        reason: text returned by the underlying solver.
        message: custom/pre-defined error message to be returned.

    Returns:
        message.
    """

    def __init__(
        self, q_half_width: float, reason: str, message: Optional[str] = None
    ) -> None:
        self.q_half_width = q_half_width
        self.message = (
            f"The eigensolver failed for the kernel truncated to Q = {q_half_width}: "
            f"{reason}"
        )

        if message:
            self.message = message

        super().__init__(self.message)

    def __str__(self) -> str:
        return f"{self.message}"


class FitRefusedError(Exception):
    """Exception raised when a least-squares fit is refused.

    Args:
        reason: why the fit cannot be trusted.
        condition_estimate: condition number of the design, when relevant.
        message: custom/pre-defined error message to be returned.

    Returns:
        message.
    """

    def __init__(
        self,
        reason: str,
        condition_estimate: Optional[float] = None,
        message: Optional[str] = None,
    ) -> None:
        self.reason = reason
        self.condition_estimate = condition_estimate
        self.message = f"Fit refused: {reason}"
        if condition_estimate is not None:
            self.message += f" (condition estimate {condition_estimate:.3e})"

        if message:
            self.message = message

        super().__init__(self.message)

    def __str__(self) -> str:
        return f"{self.message}"
