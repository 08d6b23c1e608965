"""orbiforge: exact computational group theory for plane crystallographic
groups and the Euclidean cusp types of knot-complement quotients.

The package is organised by machinery:

- `exactgeom`: the field Q(sqrt3), exact plane isometries, classification of
  isometries into translations / rotations / reflections / glides.
- `fpgroup`: words, finitely presented groups, Smith normal form,
  abelianization, sign homomorphisms onto Z/2.
- `cosetenum`: Todd-Coxeter coset enumeration, coset-table queries, Schreier
  generators, Reidemeister-Schreier subgroup presentations.
- `lattice`: Gauss-Lagrange reduction, lattice symmetry orders, the
  rotationally-rhombic predicate, norm-form sublattice indices.
- `wallpaper`: the seventeen plane-group models with faithful exact
  representations, the classification decision tree, orientation double
  covers, orbifold Euler characteristics.
- `knotcusp`: peripheral amalgams, the order-2 collapse certificates, the
  peripheral-order predicate, and the realizable/excluded verdict table.
- `presfile` / `cli` / `verify`: the presentation file format, the command
  line, and the claim-by-claim verification runner.
"""

from .exactgeom import (Isometry, Mat2, QuadNum, Vec2, classify_isometry,
                        compose, fixed_point, reconstruct)
from .fpgroup import (AbelianGroup, IntMatrix, Presentation, SignHom, Word,
                      abelianization, free_reduce, quotient, sign_homs,
                      smith_normal_form)
from .cosetenum import CosetTable, reidemeister_schreier, todd_coxeter
from .lattice import (Lattice2, QuadInt, Ring, gauss_reduce,
                      is_rotationally_rhombic, rigid_abelian_index,
                      sublattice_index, symmetry_order)
from .wallpaper import (MODEL_NAMES, OrbifoldSignature, SIGNATURES, classify,
                        euler_characteristic, model, orientation_double_cover,
                        sign_kernel, signature_by_name, subgroup, whole_group)
from .knotcusp import (AmalgamSpec, CuspVerdict, GluingDatum, build_amalgam,
                       collapse_236, double_cover_cusp_244, h_map_244,
                       peripheral_order_profile, verdict, verdict_table)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "AmalgamSpec", "CosetTable", "CuspVerdict", "GluingDatum",
    "IntMatrix", "Isometry", "Lattice2", "Mat2", "MODEL_NAMES",
    "OrbifoldSignature", "Presentation", "QuadInt", "QuadNum", "Ring",
    "SIGNATURES", "SignHom", "Vec2", "Word", "abelianization",
    "build_amalgam", "classify", "classify_isometry", "collapse_236",
    "compose", "double_cover_cusp_244", "euler_characteristic",
    "fixed_point", "free_reduce", "gauss_reduce", "h_map_244",
    "is_rotationally_rhombic", "model", "orientation_double_cover",
    "peripheral_order_profile", "quotient", "reconstruct",
    "reidemeister_schreier", "rigid_abelian_index", "sign_homs",
    "sign_kernel", "signature_by_name", "smith_normal_form", "subgroup",
    "sublattice_index", "symmetry_order", "todd_coxeter", "verdict",
    "verdict_table", "whole_group",
]
