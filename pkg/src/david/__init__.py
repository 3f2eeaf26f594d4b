"""Witness-feedback checking for introductory computing theory models."""

from .errors import (
    AlphabetMismatch,
    AuthError,
    DavidError,
    EnumerationCapExceeded,
    GrammarBlowupError,
    MalformedLogLine,
    ParseError,
    SchemaError,
    SearchCapExceeded,
    SelfCheckError,
    StateBlowupError,
    StorageError,
    UnknownProblem,
    ValidationError,
)
from .grammar import (
    BoundedVerdict,
    CnfGrammar,
    bounded_diff,
    bounded_jaccard,
    cyk_member,
    derivation_oracle,
    to_cnf,
)
from .jflap import import_jff
from .models import Alphabet, Cfg, FiniteAutomaton, Model, Pda, Rule
from .parsing import (
    model_from_json,
    parse_cfg,
    parse_fa,
    parse_payload,
    parse_pda,
    parse_regex,
    serialize_model,
)
from .pda import normalize_pda, pda_bounded_diff, pda_to_cfg, simulate_member
from .regular import (
    EquivalenceResult,
    check_regular,
    compile_regex,
    determinize,
    epsilon_closure,
    hk_equivalent,
    minimize,
    product_witness,
)

__all__ = [name for name in dir() if not name.startswith("_")]
