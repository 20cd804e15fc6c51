"""Continued fraction contraction/extension calculus.

Sources are JSON-style dicts ({"b0": ..., "terms": [...]}, a named family, or
a transform descriptor); scalars cross the boundary as text ("3/4", "0.25",
"1+2i"). See the README for the descriptor grammar.
"""

from contfrac._core import (
    Error,
    ModeError,
    ParseError,
    approximants,
    bernoulli,
    euler,
    evaluate,
    even_part,
    extend,
    identities,
    lange,
    lange_params,
    odd_part,
    run_job,
    terms,
    verify,
    wall_empirical,
    worpitzky,
)

__all__ = [
    "Error",
    "ModeError",
    "ParseError",
    "approximants",
    "bernoulli",
    "euler",
    "evaluate",
    "even_part",
    "extend",
    "identities",
    "lange",
    "lange_params",
    "odd_part",
    "run_job",
    "terms",
    "verify",
    "wall_empirical",
    "worpitzky",
]

__version__ = "1.0.0"
