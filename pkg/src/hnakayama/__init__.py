"""Higher torsion classes, tau_d-rigid pairs and silting complexes for the
d-representation-finite higher Nakayama algebras A_l^d."""

from .algebra import Algebra, KupischError, enumerate_os, leads_to
from .torsion import DTorsionClass, TorsionLattice, check_axioms, closure, enumerate_classes
from .tau_tilting import TauRigidPair, coresolve, is_maximal_pair, pair_of
from .complexes import ProjComplex, assemble, hom_K, is_silting, min_presentation

__all__ = [
    "Algebra",
    "DTorsionClass",
    "KupischError",
    "ProjComplex",
    "TauRigidPair",
    "TorsionLattice",
    "assemble",
    "check_axioms",
    "closure",
    "coresolve",
    "enumerate_classes",
    "enumerate_os",
    "hom_K",
    "is_maximal_pair",
    "is_silting",
    "leads_to",
    "min_presentation",
    "pair_of",
]

__version__ = "0.1.0"
