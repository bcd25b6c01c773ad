"""Exception types raised by the teleportation toolkit."""


class InvalidParameter(ValueError):
    """A parameter lies outside the physically meaningful domain."""


class TruncationError(RuntimeError):
    """A truncated Fock space is too small for the requested accuracy."""

    def __init__(self, message, required_dim=None):
        super().__init__(message)
        self.required_dim = required_dim


class NonFiniteIntegrand(ArithmeticError):
    """An integrand returned NaN or Inf at a quadrature node."""

    def __init__(self, node):
        super().__init__(f"integrand is not finite at beta = {node!r}")
        self.node = node


class ConvergenceError(RuntimeError):
    """Quadrature order doubling changed the result by more than allowed."""

    def __init__(self, message, metadata=None):
        super().__init__(message)
        self.metadata = metadata or {}
