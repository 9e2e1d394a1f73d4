"""qglue: a symbolic and numeric workbench for glued quantum-disc algebras.

The package has three layers. The symbolic layer (coefficients, ncpoly,
presentations, presets, idempotents, textformat) rewrites elements of
finitely presented *-algebras to exact normal forms over the Laurent ring
in q, p and the family parameter s. The numeric layer (opnum, circle)
evaluates them on truncated half-line operators and windowed shift
pictures, tracking which matrix block can be trusted. The gluing layer
(glue, kpair) assembles fibre pairs over the common boundary circle,
builds line-bundle idempotents and pairs them with the two Fredholm
modules; suites, report and cli package the whole battery of checks.
"""

from .circle import (
    BiLaurent,
    LaurentPoly,
    eval_point,
    hopf_antipode,
    hopf_coproduct,
    hopf_counit,
    phi_map,
    pointwise_product,
    w_inverse,
    w_map,
)
from .coefficients import ONE, P, Q, S, ZERO, CoefPoly
from .errors import (
    DimensionMismatch,
    GradingError,
    ModeMismatch,
    PresentationError,
    QGlueError,
    RewriteLimitExceeded,
    SizeCapExceeded,
    SymbolMismatch,
    WindowOverflow,
)
from .glue import (
    ORIENTATION,
    CSfpElement,
    FibrePair,
    PodlesPair,
    chi,
    disc_symbol,
    en_numeric,
    evaluate_raw,
    extract_degree,
    fp_matmul,
    iota,
    iota_kron_assignment,
    kron_interior,
    podles_generators,
    polar_part,
    psi_inverse,
    psi_iso,
    s2_leg_assignment,
    s2_leg_symbol,
    s3_leg_assignment,
    s3_leg_symbol,
    symbol_map,
    unit_pair,
    zero_pair,
)
from .idempotents import build_en, gaussian_binomial
from .kpair import (
    CHI_RESIDUAL_TOL,
    EN_RESIDUAL_TOL,
    ORIENTATION_SIGN,
    FredholmModule,
    IndexRow,
    PairingResult,
    expected_pairing,
    index_table,
    pair,
    winding_interpretation,
)
from .ncpoly import NCPoly, SymMatrix
from .opnum import (
    ParamSet,
    TraceResult,
    TruncOp,
    diag_op,
    disc_assignment,
    disc_rep,
    evaluate,
    identity,
    inv_sqrt_psd,
    pi_rep,
    shift,
    trace_finite_rank,
    trusted_diff_norm,
)
from .presentations import (
    Presentation,
    degree,
    homogeneous_component,
    normal_form,
    verify_identity,
)
from .presets import (
    all_presentations,
    circle_presentation,
    disc_presentation,
    podles_zeta_eta,
    sphere2_presentation,
    sphere3_presentation,
    su2_presentation,
)
from .report import CSV_COLUMNS, CheckRecord, Report, timestamp_now
from .suites import SUITES, confluence_sample, run_suites
from .textformat import dump_presentation, load_presentation

__version__ = "0.1.0"

__all__ = [
    "BiLaurent",
    "CHI_RESIDUAL_TOL",
    "CSV_COLUMNS",
    "CSfpElement",
    "CheckRecord",
    "CoefPoly",
    "DimensionMismatch",
    "EN_RESIDUAL_TOL",
    "FibrePair",
    "FredholmModule",
    "GradingError",
    "IndexRow",
    "LaurentPoly",
    "ModeMismatch",
    "NCPoly",
    "ONE",
    "ORIENTATION",
    "ORIENTATION_SIGN",
    "P",
    "PairingResult",
    "ParamSet",
    "PodlesPair",
    "Presentation",
    "PresentationError",
    "Q",
    "QGlueError",
    "Report",
    "RewriteLimitExceeded",
    "S",
    "SUITES",
    "SizeCapExceeded",
    "SymMatrix",
    "SymbolMismatch",
    "TraceResult",
    "TruncOp",
    "WindowOverflow",
    "ZERO",
    "all_presentations",
    "build_en",
    "chi",
    "circle_presentation",
    "confluence_sample",
    "degree",
    "diag_op",
    "disc_assignment",
    "disc_presentation",
    "disc_rep",
    "disc_symbol",
    "dump_presentation",
    "en_numeric",
    "evaluate_raw",
    "eval_point",
    "evaluate",
    "expected_pairing",
    "extract_degree",
    "fp_matmul",
    "gaussian_binomial",
    "homogeneous_component",
    "hopf_antipode",
    "hopf_coproduct",
    "hopf_counit",
    "identity",
    "index_table",
    "inv_sqrt_psd",
    "iota",
    "iota_kron_assignment",
    "kron_interior",
    "load_presentation",
    "normal_form",
    "pair",
    "phi_map",
    "pi_rep",
    "podles_generators",
    "podles_zeta_eta",
    "pointwise_product",
    "polar_part",
    "psi_inverse",
    "psi_iso",
    "run_suites",
    "s2_leg_assignment",
    "s2_leg_symbol",
    "s3_leg_assignment",
    "s3_leg_symbol",
    "shift",
    "sphere2_presentation",
    "sphere3_presentation",
    "su2_presentation",
    "symbol_map",
    "timestamp_now",
    "trace_finite_rank",
    "trusted_diff_norm",
    "unit_pair",
    "verify_identity",
    "w_inverse",
    "w_map",
    "winding_interpretation",
    "zero_pair",
]
