"""Quadratic laws for finite-type invariants of Brunnian links, computed from pure braids."""

__version__ = "0.1.0"

from .braid import BraidWord, StringLinkPresentation, closure_pd, is_brunnian, parse_braid
from .generators import family_generators, milnor_string_link, scheme_family, stack
from .milnor import milnor_vector, mu, mu_sigma
from .polyinv import ConwayPoly, coeff_invariant, conway
from .quadratic import bracket_value, fit_coefficients, vanishing_check, verify_eq8
from .treealg import TreeVector, parse_tree, reduce_to_basis
