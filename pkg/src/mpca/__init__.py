"""Linear cellular-automaton models of LFSR-based keystream generators."""

from .automata import (
    CaState,
    CycleSummary,
    RuleVector,
    SolutionCoeffs,
    StateClass,
    build_mpca,
    ca_char_poly,
    ca_step,
    cell_sequence,
    classify_state,
    concat_double,
    embed_sequence,
    enumerate_cycles,
    predict_counts,
    predict_lc,
    predict_period,
    rule_hex_codec,
    solution_eval,
    synthesize_ca,
)
from .field import FieldCtx, FieldElem
from .linalg import BitMatrix, InconsistentSystemError, solve_linear
from .modeler import (
    ModelReport,
    coset_char_poly,
    cyclotomic_coset,
    model_ccsg,
    model_shrinking_generator,
    sg_predicted_props,
    verify_model,
)
from .poly import (
    Poly,
    parse_poly,
    poly_gcd,
    poly_is_irreducible,
    poly_is_primitive,
    poly_mod,
    poly_mul,
)
from .registers import CcsgConfig, Lfsr, ShrinkConfig, ccsg_generate, lfsr_bits, pn_trace_eval, shrink
from .sequences import berlekamp_massey, binom_mod2, binom_period, min_period, satisfies_recurrence

__version__ = "0.1.0"
