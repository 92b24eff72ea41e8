"""hesslab: exact construction and certification of Hessian curves.

The package builds three families of graph surfaces whose Hessian curves have
prescribed topology (outer ovals, even and odd stacks of concentric circles),
and certifies the expected oval counts, godron counts and affine invariance
with exact rational arithmetic, corroborated by exact-sign curve tracing.
"""

from .certify import (
    Claim,
    GoodPositionError,
    TheoremReport,
    verify_affine_invariance,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
from .diffgeo import (
    INFINITE_CONTACT,
    AsymptoticDirections,
    PointClass,
    QuadExt,
    SecondForm,
    SpecialPointCertificate,
    asymptotic_directions,
    certify_special_parabolic,
    classify_point,
    contact_order,
    hessian_poly,
    hessian_rational,
    second_form_at,
    taylor_jet,
)
from .families import (
    AlphaBeta,
    EvenCircleParams,
    FactorizationError,
    FamilySpec,
    GoodPositionResult,
    OddCircleParams,
    OuterOvalParams,
    ParameterError,
    RadialPair,
    build_even_circles,
    build_odd_circles,
    build_outer_oval,
    check_good_position,
    radial_even,
    radial_odd,
    shifted_alpha_beta,
)
from .polynomial import (
    AffineMap2,
    BivariatePolynomial,
    UnivariatePolynomial,
    format_polynomial,
    format_rational,
    is_perfect_square,
    jet_square_root,
    parse_polynomial,
    parse_rational,
    poly_divide,
    poly_gcd,
    rational_sqrt,
    squarefree_part,
)
from .rational import PlaneRationalFunction, rational_reduce
from .realroots import (
    IsolatingInterval,
    cauchy_bound,
    isolate_roots,
    rational_roots,
    refine_root,
    sign_at_root,
    sturm_count,
)
from .topology import (
    NestingForest,
    RegionClassification,
    TracedComponent,
    auto_bbox,
    classify_regions,
    count_components,
    nesting_forest,
    trace_curve,
)

__version__ = "0.1.0"
