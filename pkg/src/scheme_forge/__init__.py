"""Fission schemes of the triangular scheme on PG(1,q).

Exact construction and verification of the association schemes induced
by the fractional-linear, square-determinant, twisted sharply
3-transitive and full semilinear groups acting on 2-element subsets of
the projective line, together with their isomorphic models on secant
lines and square-type points of a conic in PG(2,q).
"""

from .gf import (
    CONWAY_POLYNOMIALS,
    GF,
    FieldElement,
    FieldMismatchError,
    NoInvolutionError,
    field,
)
from .geometry import (
    INFINITY,
    DegeneratePairError,
    Domain,
    IndeterminateCrossRatioError,
    PG1,
    Plane,
    domain,
    elliptic_lines_domain,
    hyperbolic_lines_domain,
    hyperbolic_points_domain,
    pairs_domain,
    tangent_lines_domain,
)
from .moebius import (
    GROUPS,
    InvalidGroupError,
    Moebius,
    Semilinear3,
    base_pair_stabilizer,
    conic_param,
    domain_perm,
    enumerate_group,
    generators,
    group_order,
    membership,
    point_perm,
    transporter_to_base,
)
from .schemes import (
    DomainSizeError,
    NotASchemeError,
    NotTransitiveError,
    Scheme,
    UnsupportedDomainError,
    fuse,
    fusion_map,
    group_orbital_scheme,
    is_fusion,
    orbital_scheme,
    orbital_scheme_via_stabilizer,
    p_polynomial_orderings,
    partition_bijection,
    triangular_scheme,
)
from .fission import (
    RelationLabel,
    TheoremReport,
    TheoremViolationError,
    build_ft,
    count_pgammal_classes,
    default_q_list,
    ft_equals_orbital,
    m_orbit_label,
    m_scheme,
    pgammal_orbit_label,
    pgammal_scheme,
    pgl_scheme,
    psl_class_count_formula,
    psl_orbit_label,
    psl_scheme,
    triangular_partition,
    verify_paper,
)

__version__ = "0.1.0"
