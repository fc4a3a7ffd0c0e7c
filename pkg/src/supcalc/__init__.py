"""A proof-term calculus for multiplicative-additive linear logic with a
probabilistic pair destructor, its rewriting theory, and a matrix semantics
over pluggable semirings."""

from .semiring import (
    BOOL,
    F64,
    Q,
    QNN,
    SEMIRINGS,
    LiteralError,
    Semiring,
    SemiringError,
    WeightError,
    WeightPair,
    embed,
    format_scalar,
    get_semiring,
    make_weight_pair,
)
from .syntax import (
    App,
    Case,
    Fst,
    Hole,
    Inl,
    Inr,
    Lam,
    Lollipop,
    One,
    Pair,
    ParseError,
    Plus,
    Prop,
    Scal,
    Snd,
    Star,
    Sum,
    Sup,
    SupElim,
    SupFst,
    SupPair,
    SupSnd,
    Tens,
    TensElim,
    Tensor,
    Term,
    Top,
    Unit,
    UnitElim,
    Var,
    With,
    Zero,
    ZeroElim,
    alpha_eq,
    canonical,
    compose_contexts,
    fill,
    free_vars,
    hole_count,
    parse_context,
    parse_prop,
    parse_term,
    print_prop,
    print_term,
    subst_parallel,
    substitute,
    sup_elim,
)
from .checker import (
    AmbiguousType,
    Context,
    Derivation,
    LinearViolation,
    SplitPlan,
    TypeMismatch,
    TypingError,
    UnboundVariable,
    check_subject_reduction,
    typecheck,
    validate,
)
from .rewrite import (
    ALL_RULES,
    BETA_RULES,
    COMMUTATION_RULES,
    BudgetExceeded,
    Distribution,
    EmptyDistribution,
    Path,
    ReductionError,
    Step,
    SupBranchEncountered,
    UnsupportedType,
    distribution,
    enumerate_elim_contexts,
    is_normal,
    mixed_equiv,
    normalize,
    normalize_random,
    paths,
    step_all,
    sum_of_distribution,
)
from .matmodel import (
    LawReport,
    LawResult,
    Mat,
    ShapeMismatch,
    add,
    biproduct_mat,
    biproduct_obj,
    check_laws,
    codiag,
    coherence,
    compose,
    copair_mat,
    curry,
    diag,
    distribute,
    eval_map,
    hom_mat,
    hom_obj,
    identity,
    inj1,
    inj2,
    pair_mat,
    perm_mat,
    proj1,
    proj2,
    scalar_map,
    swap_plus,
    tensor_mat,
    tensor_obj,
    uncurry,
    unit_map,
    weighted_codiag,
    zero_mat,
)
from .denote import (
    AdequacyVerdict,
    Interp,
    adequacy_compare,
    check_global_soundness,
    check_step_soundness,
    check_substitution,
    denote,
    denote_closed,
    denote_ctx,
    denote_prop,
)
from .veccodec import (
    LengthMismatch,
    NotInV,
    SVector,
    dim_v,
    encode_matrix,
    extract_linear_map,
    from_vector,
    is_vprop,
    matvec,
    to_vector,
)
from .corpus import CorpusEntry, corpus, corpus_sources
from .gen import TermGenerator

__version__ = "0.1.0"
