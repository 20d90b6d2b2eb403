# polytransform/__init__.py

from .chebyshev import ChebKind, MonomialPoly, cheb_eval, cheb_zeros, poly_eval
from .config import DEFAULT_CONFIG, NumericConfig
from .factorization import Factorization
from .induction import (
    InductionSpec, TransversalReport, decomposition_factorize, induction_factorize, lagrange_transversal,
    subalgebra_spectrum, transversal_check,
)
from .operators import CostReport, LinOp, op_apply, op_cost, op_to_dense, op_transpose
from .transforms import PolyBasis, SamplePoints, ScaleVector, TransformName, named_transform, polynomial_transform
