"""Exception hierarchy shared by every module."""


class NegspaceError(Exception):
    """Base class for all errors raised by negspace."""


class DimensionError(NegspaceError, ValueError):
    pass


class ContractError(NegspaceError, ValueError):
    """An input violated a documented precondition (e.g. non-Hermitian)."""


class NetError(NegspaceError):
    """No quantum net satisfying the consistency checks could be built."""


class EmptyResultError(NegspaceError):
    pass


class FormulaDomainError(NegspaceError, ValueError):
    """A channel kernel evaluated outside its physical range."""


class ChannelError(NegspaceError):
    pass


class ParameterError(NegspaceError, ValueError):
    pass


class SelectionError(NegspaceError):
    """Post-selection probability of the WM/QMR pipeline vanished."""


class PreconditionError(NegspaceError, ValueError):
    pass


class NumericalError(NegspaceError, ArithmeticError):
    pass


class OptimizerError(NegspaceError):
    pass
