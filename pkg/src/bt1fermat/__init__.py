"""Kraft words, BT1 modules, and the p-torsion of Fermat curves and their quotients."""
from .duality import dual_multiset, is_self_dual, polarized_factorization
from .fermat import CurveSpec, decompose, genus_of
from .kraft import a_number, p_rank
from .realize import realize, realize_polarized, verify_plan
from .words import BT1Multiset, CyclicWord, Word, canonicalize, complement, parse_word, primitive_root

__version__ = "0.1.0"

__all__ = [
    "BT1Multiset",
    "CurveSpec",
    "CyclicWord",
    "Word",
    "a_number",
    "canonicalize",
    "complement",
    "decompose",
    "dual_multiset",
    "genus_of",
    "is_self_dual",
    "p_rank",
    "parse_word",
    "polarized_factorization",
    "primitive_root",
    "realize",
    "realize_polarized",
    "verify_plan",
]
