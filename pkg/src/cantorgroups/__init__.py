"""Exact computation in Thompson's group V, labelled Thompson groups V(G),
twisted Brin-Thompson groups SV_G and their groupoid models."""

from .cantor import (CantorPoint, PartitionSet, common_refinement, enumerate_points, expand,
                     lex_cmp, prepend, shift, strip_prefix, validate_partition)
from .errors import *  # noqa: F401,F403
from .groups import (FiniteGroup, FreeGroup, GroupOracle, SAction, ZnGroup, action_regular,
                     action_translation_Z, action_trivial_finite, cyclic_group, free_group,
                     is_central, load_cayley_table, symmetric_group_3, trivial_group, zn_group)
from .vtables import (GTable, act, center_test, conj, g_expand_at, gtable_new, inv, iota0,
                      iota_empty, mul, order, pi_forget, torsion_generator)
from .twisted import (Brick, CubePoint, TwistTable, embed_v_coordinate, tau, tt_act, tt_inv,
                      tt_mul, tt_new)
from .groupoid import (Bisection, ClopenSet, I_map, I_map_twisted, J_map, J_map_twisted,
                       compose, invert, is_full, isotropy_points, min_witness)
from .parsing import Session, evaluate, parse_bisection, parse_gtable, parse_twisttable

__version__ = "0.1.0"
