"""Finite clone fragments: the dual-operation clone of a finite set and the
bicrossed product of a matched pair of theories."""

from .bicross import BicrossClone, BicrossOp, bicross_build
from .core import (Classification, Decomposer, binary_reduct, boolean_from_clone, canonical_realiser,
                   classify_op, commutation, dc, decompose, is_affine, is_hyperaffine, omega_map,
                   substitution_closure, theory_axioms)
from .dual import DualClone, DualOp, dual_op_from_map
from .theory import LAWS, MatchedTheoryData, extract_matched_theory, verify_matched_theory


def dual_clone_of(n, max_arity=3):
    return DualClone(n, max_arity)


def clone_substitute(C, t, us):
    return C.substitute(t, list(us))
