class AlgebraError(ValueError):
    """Base class for invalid algebraic input."""


class RingAxiomError(AlgebraError):
    def __init__(self, axiom: str, witness=None, detail: str = ""):
        self.axiom = axiom
        self.witness = witness
        msg = f"{axiom} axiom violated"
        if witness is not None:
            msg += f" at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ModuleAxiomError(RingAxiomError):
    pass


class CapExceeded(AlgebraError):
    """An enumerative routine was asked to handle a structure above its size cap."""


class InvariantBreach(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
