"""Exact computations with corings, grouplike elements, Amitsur complexes and connections."""

from .exactla import GF, QQ
from .algebra import Algebra, AlgebraMap, Bimodule
from .coring import Comodule, Coring, Grouplike, sweedler_coring, trivial_coring
from .amitsur import AmitsurContext, cohomology
from .connections import Connection
from .io import load_bundled, load_instance

__all__ = ["GF", "QQ", "Algebra", "AlgebraMap", "Bimodule", "Comodule", "Coring",
           "Grouplike", "sweedler_coring", "trivial_coring", "AmitsurContext",
           "cohomology", "Connection", "load_bundled", "load_instance"]
__version__ = "0.1.0"
