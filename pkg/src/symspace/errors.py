class DomainError(ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class InvariantError(ValueError):
    """An input object violates a structural invariant (e.g. non-unitary)."""
