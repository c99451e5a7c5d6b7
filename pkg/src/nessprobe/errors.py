"""Exception types shared across the library."""


class ModelError(ValueError):
    """Base class for physically invalid or degenerate configurations."""


class InvalidModelError(ModelError):
    """Parameters violate a basic model constraint (negative rate, bad occupation, ...)."""


class DegenerateParametersError(ModelError):
    """A closed form was requested at a parameter coincidence where it is singular."""


class NoSteadyStateError(ModelError):
    """The drift matrix is not Hurwitz, so no unique steady state exists."""
