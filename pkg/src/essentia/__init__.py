"""Proper essential submodules of finitely generated modules over PIDs.

Decides and constructs proper essential submodules, computes socles,
semisimplicity, primary decompositions and the saturation (closure)
operator on torsion-free modules, and ships an exhaustive brute-force
oracle that re-derives every structure theorem on small finite modules
straight from the definitions.
"""

from .closure import IntLattice, closure_image, rank_sequence, saturate, saturated_sum, socle_closure_check
from .errors import CapacityError, DomainError, EssentiaError
from .essential import (EssentialVerdict, essential_witness, has_proper_essential,
                        is_proper_essential, is_socle_essential, primary_criterion)
from .fgmod import (FGModule, ModuleElement, Submodule, annihilator, cyclic,
                    is_semisimple, primary_part, socle, span, torsion_part)
from .kernel import backend_name
from .oracle import (SubmoduleLattice, enumerate_submodules, proper_essentials,
                     verify_semisimplicity_equivalences, verify_socle_intersection, verify_quotient_transfer, verify_socle_essentiality)
from .pid import (Factorization, PIDElement, Ring, ZZ, ext_gcd, factor,
                  is_squarefree, polynomial_ring)
from .smith import Matrix, SmithDecomposition, presentation_to_module, smith_normal_form

__version__ = "0.1.0"
