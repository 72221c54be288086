"""Exception hierarchy.

Every domain error derives from :class:`LiftlabError`; the CLI maps the
class name to stderr and picks the exit code from ``exit_code``.
"""


class LiftlabError(Exception):
    exit_code = 2


class NonPositive(LiftlabError, ValueError):
    pass


class GcdNotOne(LiftlabError, ValueError):
    pass


class NotMinimal(LiftlabError, ValueError):
    def __init__(self, index, generators=None):
        self.index = index
        msg = f"generator m_{index + 1} lies in the semigroup of the others"
        if generators is not None:
            msg += f" (generators {list(generators)})"
        super().__init__(msg)


class NotMember(LiftlabError, ValueError):
    pass


class KNotCoprime(LiftlabError, ValueError):
    pass


class NotCoprimeMonomials(LiftlabError, ValueError):
    pass


class M1NotMultiplicity(LiftlabError, ValueError):
    pass


class NoLiftableFactorization(LiftlabError, AssertionError):
    pass


class BoundTooSmall(LiftlabError, RuntimeError):
    exit_code = 3
