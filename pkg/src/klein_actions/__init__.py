"""Actions of BS(1,-1) and the groups G1 and G2 on the line, circle and plane."""
from .circle import (
    CircleMap,
    LineMap,
    compactify,
    figure3_circle,
    figure3_generators,
    fixed_points,
    g1_action_checks,
    g1_circle_generators,
    lemma32_check,
    rigid_rotation,
    rotation_number,
    sine_flow,
    translation,
)
from .derived import (
    AffineIso3,
    G2Element,
    G2Order,
    affine_compose,
    g1_ball,
    g1_element_order,
    g1_eval,
    g1_generator,
    g1_relations,
    g2_compare,
    g2_multiply,
    g2_omega,
    g2_rewrite,
)
from .klein import BsElement, bs_inverse, bs_multiply, bs_reduce, bs_subgroup_membership
from .plane import (
    A_MAP,
    B_MAP,
    Conjugate,
    Disk,
    IndexComputationError,
    ModelMap,
    PeriodicConjugator,
    PlanePoint,
    index,
    index_details,
    limit_set_estimate,
    model_apply,
    nonwandering_witness,
    random_conjugator,
    verify_relation,
    wandering_check,
)
from .verify import verify_all
from .words import ReducedWord, f2_compare, magnus_expand, phi_power, sigma

__version__ = "0.1.0"
