"""resimp: a regular expression simplifier.

Expressions are interned in a global background store; language-equal
expressions are merged into classes whose representative is a shortest
known member.  Simplification combines derivative equation systems,
automaton minimization, equation solving, inclusion-driven rewriting and
factorization.
"""

from .background import ArenaFull, Background, DEFAULT_CAPACITY
from .derivatives import complete_equations, includes
from .minimize import equivalent, minimize_expression, separate_all
from .oracle import oracle_equal, oracle_member, oracle_min_states
from .pipeline import (
    CapacityError,
    Pipeline,
    PipelineConfig,
    UnknownAlgorithmLetter,
    check,
    simplify,
)
from .randgen import count, generate, generate_many
from .rewriter import factorize, simplify_rules
from .solver import solve
from .syntax import AlphabetMap, ParseError, parse, size, to_text

__version__ = "0.1.0"

__all__ = [
    "AlphabetMap", "ArenaFull", "Background", "CapacityError",
    "DEFAULT_CAPACITY", "ParseError", "Pipeline", "PipelineConfig",
    "UnknownAlgorithmLetter", "check", "complete_equations", "count",
    "equivalent", "factorize", "generate", "generate_many", "includes",
    "minimize_expression", "oracle_equal", "oracle_member",
    "oracle_min_states", "parse", "separate_all", "simplify",
    "simplify_rules", "size", "solve", "to_text",
]
