"""Exception types raised by :mod:`spinqsde`."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class SymmetryError(ValueError):
    """A matrix expected to be antisymmetric is not, within tolerance."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class ImaginaryResidueError(ArithmeticError):
    """A quantity that must be real carries an imaginary part above tolerance."""

    def __init__(self, name, residual):
        super().__init__(
            f"{name} has imaginary residue {residual:.3e}; expected a real matrix")
        self.name = name
        self.residual = residual


class StepSizeError(ValueError):
    """Invalid integration step or horizon."""
