"""Exact-arithmetic workbench for Koszulity of quadratic symbol algebras.

Quadratic (super)commutative algebras over F_l are checked for Koszulity
by three routes — inverse-lex filtrations with PBW bases, graph criteria
for exterior quotients, and bar-complex homology — together with synthetic
generators for local and global Milnor-ring models.
"""

from .gf import PrimeField
from .monomials import GeneratorOrder, Monomial
from .algebra import (DegreewiseAlgebra, ModuleTruncation, QuadraticPresentation,
                      SymmetryMode, augmentation_module, degreewise_expand,
                      free_algebra, ideal_module)
from .graded import (MonomialTruncation, associated_graded, monomial_algebra,
                     pbw_verdict, surviving_monomials)
from .graphs import QuadGraph, algebra_verdict, graph_from_truncation, module_verdict
from .homology import TorTable, koszul_scan, tor_algebra, tor_module
from .models import (GlobalSymbolDatum, LocalCase, build_annihilator,
                     build_global_general, build_global_symplectic, build_local,
                     build_noroot, datum_to_algebra, predict_survivors,
                     validate_reciprocity)

__version__ = "0.1.0"
