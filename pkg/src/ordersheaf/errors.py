"""Exception types shared across the package."""


class SheafError(Exception):
    """Base class for all errors raised by ordersheaf."""


class DomainError(SheafError, ValueError):
    """An alternative is used outside the domain of an order."""


class CapacityError(SheafError, ValueError):
    """An exhaustive computation was requested above its size cap."""


class ValidationError(SheafError, ValueError):
    """A sheaf, profile or quotient violates a structural invariant."""


class UnknownNameError(SheafError, KeyError):
    """Lookup of an edge, vertex or catalog entry that does not exist."""

    def __str__(self) -> str:
        # KeyError quotes its argument; keep messages readable.
        return str(self.args[0]) if self.args else ""


class CyclicConstraintError(SheafError, ValueError):
    """An operation that needs an acyclic constraint graph received a cyclic one."""
