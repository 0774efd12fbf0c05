"""Exception hierarchy.

Every error carries a stable ``code`` used in JSON reports and an ``exit_code``
used by the command line (2 for bad input, 1 for a failed invariant).
"""

from __future__ import annotations


class GermError(Exception):
    code = "GermError"
    exit_code = 1

    def to_dict(self) -> dict:
        return {"code": self.code, "message": str(self)}


class ParseError(GermError):
    code = "ParseError"
    exit_code = 2

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariable(ParseError):
    code = "UnknownVariable"

    def __init__(self, name: str, position: int):
        super().__init__(f"unknown variable {name!r}", position)
        self.name = name


class InvalidGerm(GermError):
    code = "InvalidGerm"
    exit_code = 2


class ZeroGerm(InvalidGerm):
    code = "ZeroGerm"


class NotZeroDimensional(GermError):
    code = "NotZeroDimensional"
    exit_code = 2


class NotIsolatedAtOrigin(GermError):
    code = "NotIsolatedAtOrigin"
    exit_code = 2


class NotQuasiHomogeneous(GermError):
    code = "NotQuasiHomogeneous"
    exit_code = 2


class Singular(GermError):
    code = "Singular"


class NotNilpotent(GermError):
    code = "NotNilpotent"


class NotSymmetric(GermError):
    code = "NotSymmetric"


class NotHermitian(GermError):
    code = "NotHermitian"


class SingularBezoutian(GermError):
    code = "SingularBezoutian"


class NormalizationFailure(GermError):
    code = "NormalizationFailure"


class NotMorse(GermError):
    code = "NotMorse"


class NoConvergence(GermError):
    code = "NoConvergence"


class AsymmetricSpectrum(GermError):
    code = "AsymmetricSpectrum"


class DegenerateLevelForm(GermError):
    code = "DegenerateLevelForm"


class CalibrationFailure(GermError):
    code = "CalibrationFailure"
