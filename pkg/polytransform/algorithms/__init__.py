# polytransform/algorithms/__init__.py

from .britanak_rao import (
    britanak_rao, britanak_rao_b, britanak_rao_diagonal, britanak_rao_factors, britanak_rao_middle, britanak_rao_x,
)
from .cooley_tukey import cooley_tukey, cooley_tukey_factors
from .plans import Algorithm, PlanNode, RadixPlan, build_plan, plan_apply, plan_cost, plan_operator
from .wang import SkewParams, skew_params, wang_dct4, wang_factors, wang_y, x_c4, x_s4

FACTORIZERS = {
    Algorithm.COOLEY_TUKEY: cooley_tukey,
    Algorithm.BRITANAK_RAO: britanak_rao,
    Algorithm.WANG_DCT4: wang_dct4,
}
