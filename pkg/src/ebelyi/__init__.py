"""Exact Belyi maps for finite-index subgroups of the Euclidean
triangle groups.

The package turns a transitive permutation triple of Euclidean type
into an explicit rational map between curves together with a
certificate that its branching matches the triple.
"""

__version__ = "0.1.0"
