"""Exception types shared across the package.

Plain ``ValueError`` is used for ordinary invalid arguments (composite
modulus, zero input, malformed data).  The classes below mark conditions a
caller may reasonably want to catch separately: evaluation at a pole,
a section vanishing at the evaluation point, resource guards, and
numerically divergent parameters.
"""


class SectionVanishesError(ValueError):
    """The chosen coordinate section is zero at this point.

    Distinct from an invalid argument: the point and index are legal, but
    the local factor ``|x_i|_v / max_j |x_j|_v`` is undefined when
    ``x_i = 0``.
    """


class InsufficientDataError(ValueError):
    """A series is too short (or spans too little range) to estimate from."""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds the configured desk-scale bounds."""


class BadPrimeError(ValueError):
    """The prime is in the bad-reduction set; the closed formula is refused."""

    def __init__(self, p, reason=""):
        self.p = p
        msg = f"prime {p} is in the bad-reduction set"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class MissingStrataError(ValueError):
    """No residue-field stratum counts are available for the given prime."""


class LocalZetaPoleError(ArithmeticError):
    """A local zeta factor was evaluated at one of its poles.

    Carries the offending boundary component label so callers can report
    which factor blew up.
    """

    def __init__(self, label, q, s):
        self.label = label
        self.q = q
        self.s = s
        super().__init__(
            f"local factor for component {label!r} has a pole at s={s} (q={q})"
        )


class PoleAtOne(ArithmeticError):
    """Raised or returned when the global product is requested exactly at s=1."""

    def __init__(self, order, leading):
        self.order = order
        self.leading = leading
        super().__init__(
            f"pole of order {order} at s=1; leading coefficient {leading}"
        )


class DivergentIntegralError(ValueError):
    """The integration parameter lies at or below the convergence threshold."""
