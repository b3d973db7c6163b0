"""Confluent Heun function near the origin, the reductions of its derivative
to other confluent Heun functions, closed-form solutions on the special
loci, and the Kummer/Goursat series expansion."""

from .closed_forms import (
    ClosedFormFamily,
    case1_family,
    case2_family,
    case3_family,
    mirrored_family,
    symmetry_map,
)
from .errors import HeunError, InputError, NumericalError
from .frobenius import (
    PowerSeries,
    frobenius_coefficients,
    hc_eval,
    heun_function,
    second_solution,
    second_solution_eval,
)
from .goursat import (
    GoursatExpansion,
    TerminationCase,
    compute_coefficients,
    determine_C0,
    eval_u,
    eval_w,
    find_termination_p,
    init_expansion,
    rqp,
    termination_case,
    termination_polynomial,
)
from .hyper import SeriesControl, cpow, hyp1f1, hyp2f2, laguerre, upper_gamma
from .jets import C2Fn, Jet
from .params import (
    CheParams,
    OdeCoeffs,
    coeff_f,
    coeff_g,
    derivative_ode_coeffs,
    validate,
)
from .relations import (
    Case,
    DerivRelation,
    all_relations,
    classify,
    relation_alpha_zero,
    relation_sigma_4palpha,
    relation_sigma_zero,
    verify_relation_coeffs,
    verify_relation_solutions,
)
from .verify import ResidualReport, che_residual, generic_residual, taylor_oracle

__version__ = "0.1.0"
