"""Exception hierarchy for quivalg.

Everything raised on purpose derives from QuivalgError so callers can catch
one type at the boundary (the CLI does exactly that).
"""


class QuivalgError(Exception):
    """Base class for all errors raised by this package."""


class QuiverSyntaxError(QuivalgError):
    """A quiver file could not be parsed.

    Carries the 1-based line and column of the first offending character.
    """

    def __init__(self, message, line=None, col=None):
        if line is not None:
            message = "line %s, col %s: %s" % (line, col, message)
        super().__init__(message)
        self.line = line
        self.col = col


class QuiverStructureError(QuivalgError):
    """The parsed data does not describe a valid quiver (bad endpoints,
    duplicate names, empty vertex set, and so on)."""


class InvalidRelationError(QuivalgError):
    """A relation mentions unknown arrows, has non-composable terms, or
    mixes terms with different endpoints."""


class NotAdmissibleError(QuivalgError):
    """A relation term has length 0 or 1, so the ideal cannot sit inside
    the square of the arrow ideal."""


class PossiblyInfiniteDimensionalError(QuivalgError):
    """Path enumeration hit the length cap without the algebra closing up.

    Either the algebra really is infinite dimensional or the cap was too
    small; the message says which cap was in force.
    """


class ExplosionGuardError(QuivalgError):
    """The number of paths exceeded the safety bound before the build
    finished."""


class FamilyParameterError(QuivalgError):
    """Family parameters outside the allowed range, or an operation that
    the family does not support (for example glueing family E)."""


class MonotonicityError(QuivalgError):
    """Internal sanity check failed while walking dimensions upward during
    enumeration."""


class GlueingError(QuivalgError):
    """Glueing or separation was requested at vertices that do not satisfy
    the required source/sink/node conditions."""


class NonMonomialError(QuivalgError):
    """A computation that needs zero relations (string shadows, tree
    covers) was asked for on a presentation that is not monomial and not
    reducible to one."""


class NotBiserialError(QuivalgError):
    """String or band enumeration was asked for on a presentation that
    fails one of the structural conditions; the message names the
    offending vertex, arrow, or relation."""
