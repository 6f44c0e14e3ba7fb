"""Exact computer algebra for loop algebras over elliptic curves.

Subpackages:

* scalars / ratfunc / cyclotomic: exact coefficient arithmetic in the
  formal two-parameter field and in the curve-specialized cyclotomic tower
* lattice: rank-2 integer lattice geometry and convex paths
* dvr_hall: the classical Hall algebra of torsion modules with brute-force
  Hall numbers and the symmetric-function bridge
* curve: elliptic curves over finite fields, Picard groups, characters
* elliptic_hall: the twist-n loop algebra with its straightening engine
* autoforms: cusp-eigenform eigenvalue formulas, theta series, L-functions
* verification / cli: the desk-scale check suite and its command line
"""

from .curve import (Character, CharacterOrbit, ClosedPoint, CurveData,
                    PicardGroup, all_characters, character_orbits,
                    primitive_orbits)
from .cyclotomic import CurveRing, CurveScalar, get_curve_ring
from .dvr_hall import (DvrHallAlgebra, DvrHallElement, SymmetricFunction,
                       aut_count, hall_number, partitions)
from .elliptic_hall import AlgebraElement, EllipticHallAlgebra, StraighteningError
from .lattice import (angle_compare, canonical_path, delta,
                      enumerate_convex_paths, epsilon, interior_points,
                      sl2_apply)
from .ratfunc import FORMAL, FormalRing, FormalScalar
from .scalars import (TruncatedSeries, alpha_coefficient, c_coefficient,
                      nu_integer, series_exp, series_log)

__version__ = "0.1.0"
