"""Instance generation, serialization, experiment drivers and the command line."""

from .generate import KINDS, generate
from .growth import GrowthReport, run_growth
from .instance import InstanceDocument

__all__ = ["GrowthReport", "InstanceDocument", "KINDS", "generate", "run_growth"]
