"""Minimal automata, growth, and enumeration for words avoiding reversed factors."""

from .automata import (
    Dfa,
    Mode,
    accepts,
    canonicalize,
    complement,
    equivalent,
    minimize,
    pattern_dfa,
    product,
    trim,
    word,
    word_str,
)
from .avoidance import (
    AvoidanceSpec,
    avoid_check,
    brute_count,
    build_by_intersection,
    build_direct,
)
from .counting import (
    IntegerSequence,
    LinearRecurrence,
    count_sequence,
    find_recurrence,
    growth_constant,
    largest_real_root,
)
from .formats import read_grail, write_dot, write_grail, write_report
from .growth import GrowthClass, GrowthReport, birecurrent_witness, classify, longest_word
from .words import (
    EventualPeriodicWord,
    Morphism,
    aperiodic_witness,
    apply_morphism,
    min_period,
    periodic_witness,
    thue_morse,
)

__version__ = "0.1.0"
