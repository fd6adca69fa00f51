"""Exception hierarchy. Every domain failure is a subclass of EntlabError."""


class EntlabError(ValueError):
    """Base class for domain errors (CLI maps these to exit code 3)."""


class InvalidState(EntlabError):
    pass


class DegenerateState(InvalidState):
    """The superposition is (numerically) the zero vector."""


class LinearlyDependent(EntlabError):
    pass


class ZeroState(EntlabError):
    pass


class NuZero(EntlabError):
    pass


class ConstraintViolated(EntlabError):
    pass


class InvalidVariant(EntlabError):
    pass


class CutoffOverflow(EntlabError):
    pass
