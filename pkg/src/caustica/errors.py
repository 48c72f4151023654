"""Exception taxonomy shared by all caustica modules."""


class CausticaError(Exception):
    """Base class for all caustica errors."""


# --- catalog ---------------------------------------------------------------

class UnknownFamily(CausticaError):
    pass


class MissingParam(CausticaError):
    def __init__(self, name):
        super().__init__(f"missing parameter {name!r}")
        self.name = name


class ExtraParam(CausticaError):
    def __init__(self, name):
        super().__init__(f"unexpected parameter {name!r}")
        self.name = name


# --- poly ------------------------------------------------------------------

class ZeroPolynomial(CausticaError):
    pass


class BothConstantInVar(CausticaError):
    pass


class DidNotConverge(CausticaError):
    def __init__(self, message, iterations):
        super().__init__(f"{message} (after {iterations} iterations)")
        self.iterations = iterations


# --- solver ----------------------------------------------------------------

class CausticTarget(CausticaError):
    """Target too close to the caustic: some |det Jac| is below tolerance."""

    def __init__(self, message, min_abs_jac=None):
        super().__init__(message)
        self.min_abs_jac = min_abs_jac


class DegenerateSystem(CausticaError):
    """Root count deficit that retries could not repair (e.g. degree drop)."""


class OnCriticalCurve(CausticaError):
    pass


# --- wproj -----------------------------------------------------------------

class NonHomogeneousInput(CausticaError):
    pass


class RootsAtInfinityPresent(CausticaError):
    pass


class NonIntegerCount(CausticaError):
    pass


# --- residue ---------------------------------------------------------------

class NonSimpleRoot(CausticaError):
    pass


# --- caustic ---------------------------------------------------------------

class EmptyCriticalSet(CausticaError):
    pass
