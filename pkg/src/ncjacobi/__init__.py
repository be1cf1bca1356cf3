"""Exact verification of noncommutative triple-product and bilinear identities."""

from .hirota import BilinearTerm, bilinear_term_value, grade, rho, verify_bilinear, verify_pair_cancel
from .jacobi import MatrixView, split_rhs, verify_jacobi, verify_split, x_lambda
from .ncalg import NCMonomial, NCPoly, Y, Yt, canonicalize, mono_mul, sigma, ys
from .partitions import (ChargedPartition, HalfIntSetPair, Partition, Profile, SnakePoint, charged_to_sets,
                         enumerate_partitions, profile, sets_to_charged, snake_of, verify_bijection, verify_psi,
                         verify_snake_membership)
from .report import VerificationReport
from .scalar import Scalar, ScalarRing, exp_nilpotent
from .special import (CouplingData, EpsilonParams, HigherTimes, qchar_view, t_formal, t_of_b, toeplitz_view,
                      verify_bosfert, verify_classical_jtp, verify_fay, verify_qchar_jacobi, verify_red34, xi_solve)

__version__ = "0.1.0"
