"""Exact combinatorics of tournaments and their backedge graphs.

The package rebuilds, at desk scale and with explicit witnesses, the finite
combinatorial facts behind linear pure pairs in tournaments: backedge-graph
censuses, optimal-numbering structure, pattern certificates for the sparse
rainbow pure-pair property, blockade machinery, and the randomized
counterexample construction with full deterministic verification.
"""

__version__ = "0.1.0"
