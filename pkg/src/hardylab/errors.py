"""Exception types raised across hardylab."""


class HardyLabError(ValueError):
    """Base class for all domain errors."""


class ZeroConstantTerm(HardyLabError):
    pass


class ComplexData(HardyLabError):
    pass


class BadExponent(HardyLabError):
    pass


class BadOrders(HardyLabError):
    pass


class BadParams(HardyLabError):
    pass


class SymbolNotVanishing(HardyLabError):
    pass


class ZeroFunction(HardyLabError):
    pass


class SingularSystem(HardyLabError):
    pass
