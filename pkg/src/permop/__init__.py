"""Combinatorial and geometric models of the little 2-cubes operad.

Milgram's permutahedral model F(n) and the normalized cactus complex C(n),
with the cellular map between them, exact homology, exact polytope geometry
and chain-level cactus composition.
"""

from .seqcomb import NrSequence, Unshuffle, FinitePoset, poset_leq, build_J_sigma, build_J_n
from .trees import BWTree, scc, caterpillar, collapses, enumerate_trees, T_sigma, compatible
from .homlin import ChainComplex, homology, smith_normal_form
from .cellcx import CellComplex, build_milgram, build_cact, order_complex, chain_map_I
from .geometry import vertex, realize_face, realize_cact_cell, subdivision_volume_check
from .operadcalc import CactSequence, FormalSum, compose, tree_to_sequence, sequence_to_tree

__version__ = "0.1.0"
