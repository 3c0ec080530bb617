"""Exception types raised across the package."""


class DualityError(Exception):
    """Base class for every error raised by hypdual."""


class DivisionByZero(DualityError, ZeroDivisionError):
    pass


class PoleEncountered(DualityError, ZeroDivisionError):
    """A denominator factor of a Pochhammer-type product vanished."""


class DistinctnessViolation(DualityError, ValueError):
    pass


class ElementNotInSet(DualityError, ValueError):
    pass


class DomainViolation(DualityError, ValueError):
    pass


class PreconditionViolation(DualityError, ValueError):
    """Instance parameters break a hypothesis of the duality theorem."""


class CaseOutOfRange(DualityError, ValueError):
    """No closed form is known for this instance (M > r+1)."""


class GenerationExhausted(DualityError, RuntimeError):
    pass
