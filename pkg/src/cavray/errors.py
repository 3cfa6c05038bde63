"""Shared exception types."""


class ConvergenceError(RuntimeError):
    """A numerical integral failed to reach its accuracy target."""

    def __init__(self, integral: str, residual: float):
        self.integral = integral
        self.residual = residual
        super().__init__(
            f"quadrature for {integral} did not converge (residual {residual:.3e})"
        )


class ConfigError(ValueError):
    """A scenario/config file could not be parsed; carries the offending line."""

    def __init__(self, path, lineno: int | None, message: str):
        self.path = str(path)
        self.lineno = lineno
        location = f"{path}:{lineno}" if lineno is not None else str(path)
        super().__init__(f"{location}: {message}")
