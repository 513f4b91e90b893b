"""Exception hierarchy.

The CLI maps these onto exit statuses: InvalidInput -> 2, BudgetExceeded -> 3,
VerificationError -> 1.
"""


class NacohError(Exception):
    pass


class InvalidInput(NacohError, ValueError):
    pass


class BudgetExceeded(NacohError, RuntimeError):
    pass


class VerificationError(NacohError, AssertionError):
    """An invariant that should hold by construction (or by a theorem) failed."""


class NotNormal(InvalidInput):
    pass


class RelationViolated(InvalidInput):
    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class NotEquivariant(InvalidInput):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NotAComplement(InvalidInput):
    pass
