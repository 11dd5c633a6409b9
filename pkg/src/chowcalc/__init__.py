"""chowcalc: exact Chow-group computations for moduli of pointed genus-one curves.

The package stores the integral presentations of the Chow rings of the
compactified one-to-four-pointed genus-one spaces, the boundary-module
presentations and unit-class boundary images feeding them, and the
polynomial witnesses behind the four-pointed family; every stored fact has
a named check in `chowcalc.catalog.run_all`.
"""

from .config import Config, load_config
from .grading import (
    A_RING,
    LAMBDA_RING,
    BaseRing,
    GradedElement,
    GradedModule,
    GradedRing,
    PermutationAction,
    assemble_extension,
    compare_presentations,
)
from .linalg import (
    FPAbelianGroup,
    GroupMap,
    IntMatrix,
    SmithDecomposition,
    cokernel,
    element_order,
    isomorphism_type,
    kernel,
    pushout,
    smith_normal_form,
)
from .poly import MultiPoly, exact_divide, gcd_poly, resultant, squarefree_part
from .series import BranchSolution, PowerSeries, branch_expand, valuation_along_branch

__version__ = "0.1.0"
