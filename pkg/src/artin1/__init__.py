"""Point-count certificates for F_p-models of a supersingular K3 surface.

For each prime p >= 5 the package builds an elliptic K3 pencil from a
trace-zero curve E, counts its points over F_p and F_{p^2}, and reads off
how many Frobenius eigenvalues equal +p.  A certificate with 21 of them
exhibits an F_p-model of Picard number 21."""

from .certify import Certificate, certify_model, inert_check, lemma_crosscheck, prove_theorem1, sweep, verify_kummer_ranks
from .counting import kummer_count, naive_fiber_count, selftest_rational_surface, surface_count
from .elliptic_curve import Curve, curve_make, find_supersingular, point_count, quadratic_twist, trace
from .finite_field import FieldElement, FiniteField, cube_root, field_make, quadratic_character
from .kodaira import classify_fibers, euler_audit, fiber_point_count
from .pencil import Pencil, candidate_models, inose_pencil, kummer_model, pencil_twist

__version__ = "0.1.0"

__all__ = [
    "Certificate", "Curve", "FieldElement", "FiniteField", "Pencil",
    "candidate_models", "certify_model", "classify_fibers", "cube_root", "curve_make",
    "euler_audit", "fiber_point_count", "field_make", "find_supersingular", "inert_check",
    "inose_pencil", "kummer_count", "kummer_model", "lemma_crosscheck", "naive_fiber_count",
    "pencil_twist", "point_count", "prove_theorem1", "quadratic_character", "quadratic_twist",
    "selftest_rational_surface", "surface_count", "sweep", "trace", "verify_kummer_ranks",
]
