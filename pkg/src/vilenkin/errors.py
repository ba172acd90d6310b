"""Exception types shared across the package."""


class VilenkinError(Exception):
    """Base class for library errors."""


class PreconditionError(VilenkinError):
    """An argument violates a documented precondition."""


class CertificationError(VilenkinError):
    """An exact certificate failed to verify."""


class ExactArithmeticError(VilenkinError):
    """An operation left the representable exact value domain."""
