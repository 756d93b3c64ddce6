"""Exception hierarchy shared by every module."""


class LoopCrystalError(Exception):
    pass


class InputError(LoopCrystalError, ValueError):
    """Bad user input: unknown vertex, non-dominant weight, malformed file."""


class QuiverParseError(InputError):
    pass


class LabelError(LoopCrystalError, ValueError):
    """A composition/partition surgery whose precondition does not hold."""


class LatticeError(LoopCrystalError):
    """A vector asserted to lie in an A-lattice does not."""


class TheoryViolation(LoopCrystalError):
    """A statement that must hold by theory failed on the computed data.

    Raised for relations that are not in the radical, singular systems that
    should be invertible, crystal-basis failures and the like.  These signal
    bad form parameters or an implementation defect, never user error.
    """
