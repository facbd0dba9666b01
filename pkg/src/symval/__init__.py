"""symval: symmetric-power L-functions of holomorphic newforms.

Exact q-expansions and Euler-factor algebra, closed-form critical sets and
period-exponent predictions, CM forms by automorphic induction with exact
isobaric-decomposition checks, arbitrary-precision values by the smoothed
approximate functional equation, and numeric verification harnesses for the
special-value structure (period-cancelling ratio tests, twisted-value tests).
"""

from .analytic import (
    LFunctionSpec,
    LValue,
    dirichlet_l_spec,
    evaluate,
    fe_selfcheck,
    regular_integers,
    resolve_root_number,
    spec_for_symn,
    zeta_spec,
)
from .characters import (
    DirichletCharacter,
    GaussSumValue,
    delta_exponents,
    gauss_sum,
    make_character,
    trivial_character,
)
from .cohomology import clozel_weight, cuspidal_range, jwl_admissible, rankin_cohomological
from .critical import (
    CriticalSet,
    DelignePrediction,
    critical_set,
    deligne_prediction,
    ratio_exponent,
    zeta_critical,
)
from .dihedral import (
    CMForm,
    HeckeCharacter,
    ImagQuadField,
    cm_newform,
    isobaric_factors,
    period_relation_exponents,
    verify_decomposition,
)
from .errors import SymvalError
from .qseries import (
    Newform,
    PowerSeries,
    delta_newform,
    eta_power,
    hecke_validate,
    level_one_form,
    load_newform,
    serialize_newform,
)
from .satake import EulerFactor, SatakeParams, dirichlet_coeffs, satake_at, sym_euler_factor
from .verify import (
    RecognitionResult,
    VerificationReport,
    deligne_ratio_test,
    dihedral_value_test,
    recognize_rational,
    twist_test,
)

__version__ = "0.1.0"
