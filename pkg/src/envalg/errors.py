"""Exception types shared across the package."""


class GeneratorMismatch(ValueError):
    """Operands live over different generator counts."""


class NotHomogeneousError(ValueError):
    pass


class NotRegularError(ValueError):
    pass


class ResourceLimitError(RuntimeError):
    """A configured size or digit budget would be exceeded.

    ``required`` carries the size that was asked for, ``limit`` the budget.
    """

    def __init__(self, message, required=None, limit=None):
        super().__init__(message)
        self.required = required
        self.limit = limit


class NotALieAlgebra(ValueError):
    """Raised when an operation needs the Jacobi identity and it fails."""

    def __init__(self, triple, residue):
        i, j, k = triple
        super().__init__(
            f"structure constants violate the Jacobi identity on ({i}, {j}, {k}): "
            f"residue {residue}"
        )
        self.triple = triple
        self.residue = residue


class SpecFormatError(ValueError):
    def __init__(self, message, lineno=None):
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)
        self.lineno = lineno


class ExpressionError(ValueError):
    """Syntax or name error in an expression; ``pos`` is a 0-based offset."""

    def __init__(self, message, pos=None):
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(message + where)
        self.pos = pos
