"""Exception types.  All derive from ValueError so callers can catch broadly."""


class FrattiniLabError(ValueError):
    pass


class ParseError(FrattiniLabError):
    pass


class CapExceeded(FrattiniLabError):
    """A configured size cap (enumeration, lattice, index) would be exceeded."""


class MembershipError(FrattiniLabError):
    """An element or subgroup does not lie where the caller claimed."""


class NotNormalError(FrattiniLabError):
    pass


class HomomorphismError(FrattiniLabError):
    """Generator images do not extend to a homomorphism, or a hom lacks a required property."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(FrattiniLabError):
    pass
