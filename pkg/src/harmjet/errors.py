"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the domain of an operation."""


class JetTooShortError(ValueError):
    """The jet does not carry enough Taylor coefficients for the request."""

    def __init__(self, required_order: int, order: int | None = None, what: str = ""):
        self.required_order = required_order
        self.order = order
        msg = f"jet too short: need order >= {required_order}"
        if order is not None:
            msg += f", have {order}"
        if what:
            msg += f" ({what})"
        super().__init__(msg)


class JetParseError(ValueError):
    """Malformed jet document."""
