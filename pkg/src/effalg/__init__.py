"""Finite effect algebras as dense numpy sum tables.

Axiom validation, sharp and meager structure, blocks, the triple
representation with reconstruction, isomorphism, and small-model enumeration.
"""
from types import ModuleType as _ModuleType

from .catalog import (GeneratorSpec, enumerate_all, enumerate_size, generate,
                      naive_class_counts, standard_catalog)
from .core import (UNDEF, AlgebraError, EffectAlgebra, GeneralizedEffectAlgebra,
                   InvariantError, ParseError, classify, derive, is_lattice,
                   is_orthoalgebra, join, meet, validate_ea, validate_gea)
from .io import parse_ea, parse_triple, read_ea, serialize_ea, serialize_triple
from .iso import canonical_form, find_isomorphism, is_isomorphism
from .structure import (NonHomogeneousWarning, blocks, center, decompose, has_rdp,
                        is_homogeneous, is_sharply_dominating, meager_gea,
                        meager_set, property_report, sharp_covers, sharp_set)
from .trt import (Triple, TripleView, extract_triple, oplus_via_triple,
                  reconstruct_tea, s_map, trt_check, verify_triple_theorem)

__all__ = sorted(name for name, obj in globals().items()
                 if not name.startswith("_") and not isinstance(obj, _ModuleType))
