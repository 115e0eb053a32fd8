"""Matched pairs of a Boolean algebra and a monoid, and their models."""

from .bmset import (BMSet, FreeBMSet, b_as_bmset, bm_product, bmset_certificate, copower_of_terminal,
                    enumerate_bm_homs, fixed_points, free_bmset, is_bm_hom, m_as_bmset, terminal_bmset,
                    validate_bmset)
from .exponential import BMExponential, bm_exponential
from .pair import (MatchedPair, boolean_pair, extract_from_endos, matched_pair_certificate, pair_hom_certificate,
                   pair_isomorphisms, trivial_pair, validate_matched_pair)
