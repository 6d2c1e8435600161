"""Exact noncommutative rewriting over Laurent coefficient rings,
specialized to rank-one double affine Hecke algebras.

The package verifies algebraic identities mechanically: every claimed
equality reduces to a zero residual through a truncated-completion
rewrite system, and every reduction emits a replayable certificate.
"""

from .algebras import (
    PRESET_NAMES,
    AlgebraPresentation,
    AWForm,
    AWRelation,
    SemilinearMap,
    XYZ,
    aw_form_extract,
    aw_rhs,
    braid_b_map,
    braid_c_map,
    build_xyz,
    compose_maps,
    conjugation_map,
    four_cycle,
    from_presentation,
    identity_map,
    load_algebra_file,
    map_power,
    preset,
    resolve_algebra,
    semilinear_apply,
    specialize_ncpoly,
    specialize_presentation,
    surjection_assignment,
    verify_map,
)
from .braid import (
    B3Report,
    BraidAction,
    BraidWord,
    b3_act,
    b3_normal_form,
    b3_to_map,
    verify_b3_relations,
)
from .certificates import (
    certificate_from_json,
    certificate_to_json,
    read_certificate,
    replay,
    write_certificate,
)
from .coeffring import (
    RATIONALS,
    BaseRing,
    LaurentPoly,
    ParamRing,
    divide_exact,
    monomial_inverse,
    ring_union,
    specialize,
)
from .errors import (
    AlphabetMismatchError,
    CertificateError,
    DahaError,
    ExactDivisionError,
    ExtractionError,
    IncompatibleRingError,
    InsufficientCompletionError,
    NotAUnitError,
    OrientationError,
    ParseError,
    PresentationError,
    UnitViolationError,
    UnsupportedPresetError,
    ZeroPolynomialError,
)
from .exprs import (
    Inv,
    Num,
    Pow,
    PresentationSpec,
    Prod,
    Sum,
    Sym,
    ast_to_ncpoly,
    load_presentation,
    parse_ast,
    parse_expr,
    render_ast,
    tokenize,
)
from .ncpoly import Alphabet, NCPoly, TermOrder, canonical_hash, fnv1a64, word_compare
from .rewrite import (
    CompletionReport,
    EqualityVerdict,
    ReductionCertificate,
    ReductionStep,
    RewriteRule,
    RewriteSystem,
    apply_step,
    make_rule,
)
from .suites import SUITE_NAMES, CheckResult, SuiteResult, Workspace, run_suite

__version__ = "0.1.0"
