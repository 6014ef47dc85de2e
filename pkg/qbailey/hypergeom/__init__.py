from qbailey.hypergeom.series import (
    HypergeometricError, MaxTermsError, NonTerminatingError, PhiSpec, WSpec, phi_eval, w_eval
)
from qbailey.hypergeom.transformations import (
    EXAMPLE_ASSIGNMENTS, TRANSFORMATIONS, AssignmentError, TransformationResult, parse_assignment,
    transformation_sides, verify_transformation, vwp_order
)

__all__ = (
    "AssignmentError", "EXAMPLE_ASSIGNMENTS", "HypergeometricError", "MaxTermsError",
    "NonTerminatingError", "PhiSpec", "TRANSFORMATIONS", "TransformationResult", "WSpec",
    "parse_assignment", "phi_eval", "transformation_sides", "verify_transformation", "vwp_order",
    "w_eval"
)
