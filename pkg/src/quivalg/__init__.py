"""Exact computations with quivers and finite dimensional path algebra
quotients: building, distributivity analysis, the standard families, and
the classification tooling around them."""

from .errors import (QuivalgError, QuiverSyntaxError, QuiverStructureError,
                     InvalidRelationError, NotAdmissibleError,
                     PossiblyInfiniteDimensionalError, ExplosionGuardError,
                     FamilyParameterError, MonotonicityError, GlueingError,
                     NonMonomialError, NotBiserialError)
from .fields import Rationals, PrimeField, field_by_name
from .quiver import (Arrow, Path, Quiver, parse_quiver_file, emit_quiver_file,
                     format_relation, to_dot, quiver_isomorphisms,
                     iter_quiver_isomorphisms, relabel_quiver, relabel_path,
                     relabel_relations, separated_quiver, GraphShape,
                     graph_shape)
from .algebra import (Algebra, Element, build_algebra, multiply,
                      radical_power_dims, slot_radical_dims, socle,
                      validate_relations)
from .lattice import (BimoduleProfile, CriticalPair, TrichotomyReport,
                      profiles, is_distributive, critical_pairs,
                      thick_points, is_node, long_paths, trichotomy,
                      slot_lattice_distributive, brute_force_distributive)
from .glueing import (glue, separate, PointPartition, quotient_algebra,
                      presentations_isomorphic, GlueingCensus,
                      census_glueings)
from .families import (FamilyInstance, gen_family, dimension,
                       enumerate_dimension)
from .recognize import FamilyMatch, Refusal, recognize
from .strings import (Word, BiserialCheck, RepTypeReport,
                      is_special_biserial, string_shadow, enumerate_strings,
                      enumerate_bands, rep_type_special_biserial)
from .covers import (TreeSlice, Line, ConvexPatch, expand_cover,
                     relation_free_lines, find_critical_line,
                     find_euclidean_convex)

__version__ = "0.1.0"
