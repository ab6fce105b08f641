"""Aspect- and animacy-sensitive inferential signatures of clause-embedding
verbs, and event factuality derived from them."""

from .algebra import (
    FINE_MAPPING,
    PAPER_MAPPING,
    Comparison,
    DegreeMapping,
    classify,
    compare_strength,
    generate_grid,
    is_factive,
    is_implicative,
    lookup_factuality,
    strength_level,
)
from .core import (
    Animacy,
    Aspect,
    CertaintyDegree,
    ContextKey,
    FactualityValue,
    InferenceValue,
    InferentialClass,
    Polarity,
    Signature,
    SlotMarker,
    format_signature,
    parse_signature,
)
from .lexicon import Lexicon, Reading, load_path, load_seed, load_tsv, select_slot, validate
from .projection import parse_clause, project, project_text

__version__ = "0.1.0"
