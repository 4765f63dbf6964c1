"""Caratheodory-distance geometry and horofunction compactification of
matrix unit balls carrying a Jordan triple structure.

Spaces are l-infinity direct sums of complex matrix blocks with the triple
product {a,b,c} = (a b* c + c b* a)/2.  The package computes the triple
calculus (box, quadratic and Bergman operators, Peirce and joint Peirce
projections), spectral frames, the Caratheodory distance on the open unit
ball, closed-form horofunctions of both the ball and the normed space with
their sequence-limit oracles, detour costs and parts, the dual-ball model
of the compactification, and the boundary extension of the exponential map.
"""

from ._kernels import BACKEND
from .space import TripleSpace, Element, LinOp
from .errors import (ShapeError, NotTripotentError, OutsideDomainError,
                     InvalidDatumError, NonConvergenceError)
from .triple import (triple_product, box_operator, quadratic_apply,
                     quadratic_pair_operator, triple_norm, trace_inner,
                     normalized_inner, hermitian_eigenvalues, spectral_op_norm)
from .spectral import (Frame, GroupedFrame, spectral_decompose, unique_spectral,
                       frame_sum, is_tripotent, is_minimal_tripotent,
                       is_orthogonal, tripotent_leq)
from .peirce import (peirce_projection, JointPeirceSystem, joint_peirce,
                     bergman, bergman_half_powers, frame_bergman_half, mobius,
                     induced_op_norm)
from .metric_d import (caratheodory_distance, metric_functional_d,
                       BoundaryDatumD, approach_sequence_d,
                       approach_sequence_d_threshold, horofunction_d_eval,
                       geodesic_gamma, geodesic_functional_d,
                       almost_geodesic_defect, same_part_d, datum_d_equal,
                       detour_cost_d, detour_distance_d)
from .horo_v import (BoundaryDatumV, peirce2_basis, lambda_restricted,
                     horofunction_v_eval, approach_sequence_v,
                     approach_functional_v, limit_datum_sequence, same_part_v,
                     datum_v_equal, detour_cost_v, detour_distance_v,
                     variation_seminorm)
from .compactify import (dual_norm, DualBallPoint, dual_ball_point,
                         phi_interior, phi_boundary, face_membership,
                         face_membership_checks, relative_interior_face)
from .exp_bridge import exp_map, exp_extend, exp_extend_inverse, bridge_consistency
from .results import DetourCost, OpNormEstimate, BridgeReport

__version__ = "0.1.0"
