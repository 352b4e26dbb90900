"""Exception hierarchy for WDW Isospectral.

Every error carries the exit code the CLI reports for it.
"""

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INTEGRATION = 2
EXIT_LAMBDA = 3
EXIT_VERIFICATION = 4


class WDWError(Exception):
    """Base exception; ``code`` doubles as the CLI exit status."""

    code: int = EXIT_CONFIG

    def __init__(self, message: str, code: int | None = None) -> None:
        if code is not None:
            self.code = code
        self.message = message
        super().__init__(message)


class ConfigurationError(WDWError):
    """Invalid run configuration, grid or stencil setup."""


class DomainError(WDWError):
    """Argument outside the domain of an evaluator."""


class TurningPointError(DomainError):
    """Closed-form substitution variable is not positive at some A."""


class PoleError(DomainError):
    """Hypergeometric lower parameter is a non-positive integer."""


class DegenerateBasisError(DomainError):
    """The two closed-form basis functions coincide."""


class ImaginaryOrderError(DomainError):
    """Bessel order is imaginary; no closed form is provided."""


class IntegrabilityError(DomainError):
    """I_gamma diverges at the origin (q <= -1)."""


class TooSingularError(DomainError):
    """The potential is too singular at A = 0 for a Frobenius analysis."""


class DegenerateIndicialError(DomainError):
    """Indicial roots coincide; the logarithmic solution is not implemented."""


class NumericRangeError(WDWError):
    """A computed value is not finite."""

    code = EXIT_INTEGRATION


class IntegrationError(WDWError):
    """The ODE solver failed; ``last_good`` is the last accepted A."""

    code = EXIT_INTEGRATION

    def __init__(self, message: str, last_good: float) -> None:
        self.last_good = last_good
        super().__init__(f"{message} (last good A = {last_good:.17g})")


class NodeInDomainError(WDWError):
    """The seed changes sign on the grid; ``brackets`` holds index pairs."""

    def __init__(self, brackets: list[tuple[int, int]]) -> None:
        self.brackets = brackets
        shown = ", ".join(f"[{i}, {j}]" for i, j in brackets[:5])
        more = f" (+{len(brackets) - 5} more)" if len(brackets) > 5 else ""
        super().__init__(f"Seed has {len(brackets)} node(s) between grid indices {shown}{more}")


class LambdaDomainError(WDWError):
    """Family parameter outside its admissible range."""

    code = EXIT_LAMBDA

    def __init__(self, message: str, offending: list[float]) -> None:
        self.offending = offending
        super().__init__(f"{message}: {', '.join(f'{lam:g}' for lam in offending)}")


class InternalConsistencyError(WDWError):
    """Two independent routes to the same quantity disagree."""

    code = EXIT_VERIFICATION


class VerificationError(WDWError):
    """One or more verification checks failed."""

    code = EXIT_VERIFICATION
