"""Steiner and Mendelsohn triple systems, their quasigroups, and affine enumeration."""

from .algebra import (AbelianGroup, FieldSpec, GroupAutomorphism, check_automorphism,
                      make_abelian_group, make_field, roots_of_f)
from .constructions import (affine_mendelsohn, affine_plane_sts, anti_double, char2_mendelsohn,
                            field_mendelsohn, netto_sts, projective_sts, spectrum_construct,
                            spectrum_member, steiner_affine)
from .designs import (OrientedTripleSystem, UnorderedTripleSystem, find_mitre, is_proper,
                      mts_to_quasigroup, quasigroup_to_mts, validate_mts, validate_sts)
from .enumeration import (EnumerationReport, conjugacy_classes, count_affine, is_self_converse,
                          kepka_nemec_iso, solutions_of_f)
from .kernels import BACKEND
from .moufang import LoopTable, affine_over_loop, is_commutative_moufang, nucleus
from .quasigroup import (CayleyTable, PropertyReport, antidistributivity_witness, converse,
                         is_antidistributive, is_isomorphic, predicate_suite)

__version__ = "0.1.0"
