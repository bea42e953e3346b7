"""Exact partition and bilabelled-graph computations for D4+.

Scalars come back as fractions.Fraction; anything str() renders as "p/q" is accepted as input.
"""
from ._d4plus import *  # noqa: F401,F403
from ._d4plus import graphs, parts  # noqa: F401
