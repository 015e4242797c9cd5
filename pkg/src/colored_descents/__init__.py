"""Exact combinatorics of colored permutation groups.

The library provides the r-colored permutation groups with their descent
statistics, colored posets with colored linear extensions, exact counting
of colored P-partitions, and the exact-rational group algebra machinery
for descent class sums, structure constants, and orthogonal idempotents.
"""

__version__ = "0.1.0"

from .group import (
    ColoredComposition,
    ColoredLetter,
    ColoredPermutation,
    DescentProfile,
    SizeCapExceeded,
    compose,
    descent_profile,
    descent_set_variant,
    enumerate_group,
    group_elements,
    group_order,
    identity,
    inverse,
    mr_key,
    parse_one_line,
)
from .posets import (
    AnchoredWord,
    ColoredPoset,
    chain_poset,
    colored_linear_extensions,
    decompose_anchored,
    disjoint_union,
    linear_extensions,
    make_poset,
    zigzag_poset,
)
from .ppartitions import (
    OrderPolyValue,
    TruncatedSeries,
    VerificationError,
    barred_chain_total,
    barred_zigzag_count,
    binom,
    count_ppartitions_bruteforce,
    eulerian_polynomial,
    omega_Ppi,
    omega_pi,
    omega_via_extensions,
    verify_steingrimsson,
)
from .algebra import (
    ClassPartition,
    GroupAlgebraElement,
    Rational,
    RationalPolynomial,
    algebra_add,
    algebra_multiply,
    algebra_scale,
    class_sums_des,
    class_sums_mr,
    eulerian_idempotents,
    is_in_span,
    structure_constants,
    structure_poly_eval,
    verify_closure,
    verify_phi_identity,
)
