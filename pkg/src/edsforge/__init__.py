"""Integer sequences with Somos-4 Hankel transforms, derived from cubic curves."""

from edsforge.curve import CubicCurve, CurvePoint, INFINITY
from edsforge.hankel import HankelData, JacobiFraction, SomosParams
from edsforge.pipeline import forward, verify_conjectures
from edsforge.series import IntegerSequence, PowerSeries

__all__ = ["CubicCurve", "CurvePoint", "INFINITY", "HankelData", "IntegerSequence",
           "JacobiFraction", "PowerSeries", "SomosParams", "forward", "verify_conjectures"]
__version__ = "0.1.0"
