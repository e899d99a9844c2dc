"""Exact computations with plane polynomial derivations: local nilpotence,
rectification, Darboux eigenvectors, and commuting-automorphism searches."""

from .poly import (NEG_INF, Poly, exact_divide, gcd2, monic_grlex, poly_to_str,
                   univariate_membership)
from .linalg import (PolyMatrix, QMatrix, det_bareiss, nullspace, rank,
                     rational_roots, resultant, solve_affine)
from .parsing import ParseError, parse_poly
from .automorphism import (AffineFactor, CoordinateResult, DegreeValue,
                           ElementaryFactor, PlaneAuto, PolyMap, TameDecomposition,
                           complete_coordinate, compose, degree, invert,
                           is_coordinate, jacobian_det, tame_decompose, validate)
from .derivation import (Derivation, Inconclusive, Lnd, LndVerdict, NilpotentWithin,
                         NotLnd, NotNilpotentWithin, default_cap, exp_auto,
                         lnd_decide2, lnd_semidecide)
from .eigen import (DarbouxPair, EigenCensus, FiniteList, InfiniteFamily,
                    NoEigenvectorUpTo, census, darboux_verify, extactic,
                    kernel_bounded, linear_darboux_search)
from .isotropy import (CommutationReport, JuGroupData, SweepResult,
                       TheoremCheckReport, TriangularIsotropyProblem,
                       TriangularSolution, conjugate, dim3_counterexample,
                       is_in_isotropy, jonquieres_sweep, ju_group,
                       predicted_degree, theorem_check, triangular_isotropy_solve,
                       witness_unbounded_family)
from .errors import (ArityError, BudgetError, DomainError, NotAnAutomorphismError)

__all__ = [name for name in dir() if not name.startswith("_")]
