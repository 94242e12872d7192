"""Error types shared by the special-function layer."""


class SpecfunDomainError(ValueError):
    """Input outside the supported domain (nu < 0, x <= 0, non-finite, ...)."""


class BesselOverflowError(OverflowError):
    """A requested linear-scale value exceeds double range.

    The log-scaled entry points (``bessel_ik_log``, ``uniform_ik_log``)
    never raise this; use them for large nu*x.
    """
