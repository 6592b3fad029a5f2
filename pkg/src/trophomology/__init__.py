"""Exact tropical (p,q)-homology of projective tropical varieties."""

from .exact import QMatrix, Rational, kernel_basis, lattice_index, rank, rat, rat_str
from .matroid import (
    FlatLattice,
    Matroid,
    bergman_complex,
    bergman_fan,
    flats,
    is_loopless,
    os_betti,
)
from .tropgeo import (
    Cone,
    Face,
    Fan,
    TropicalComplex,
    chart_transition,
    family_poset,
    fan_linear_space,
    is_balanced,
    is_smooth_at,
    make_face,
    projective_space,
    relative_fan,
    star_fan,
    support_equal,
)
from .cosheaf import CoefficientSpace, coefficient_space, iota, relative_coefficient_space
from .homology import (
    ChainComplex,
    HodgeTable,
    chain_complex,
    chi,
    chi_y,
    e_polynomial,
    euler_check,
    hodge_table,
    homology_dims,
    homology_report,
)
from .hypersurface import (
    HeightFunction,
    Subdivision,
    build_hypersurface,
    degree,
    dual_subdivision,
    is_smooth,
    simplex_points,
    smooth_heights,
    uniform_heights,
)

__version__ = "0.1.0"
