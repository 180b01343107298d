"""Exact twisted-conjugacy toolkit.

Root systems and Chevalley generators in the adjoint representation, twisted
conjugacy and isogredience counting in finite groups, Reidemeister spectra
of lattice, Heisenberg, lamplighter and metabelian families, and the
eigencharacter obstruction certificate for diagonal witness sequences.
All arithmetic is exact: rationals, rational functions, and integers.
"""

__version__ = "0.1.0"

from .errors import ConsistencyError, DomainError, ResourceLimitError
from .fields import (
    Polynomial,
    RationalFunction,
    ScalingAutomorphism,
    apply_scaling,
    character_lattice_member,
    disjoint_eigenfamily_count,
    eigencharacter,
    parse_polynomial,
    prime_support,
    serialize_polynomial,
    supports_pairwise_disjoint,
)
from .roots import (
    DiagramSymmetry,
    RootSystem,
    RootSystemType,
    build_root_system,
    cartan_integer,
    diagram_symmetries,
    extend_symmetry_to_roots,
    structure_constants,
)
from .chevalley import (
    ChevalleyAutomorphism,
    adjoint_dimension,
    apply_automorphism,
    commutator_factors,
    commutator_relation_check,
    graph_automorphism_matrix,
    h_alpha,
    n_alpha,
    reduce_mod_p,
    x_alpha,
)
from .twisted import (
    FiniteGroup,
    GroupAutomorphism,
    IsogredienceClassCount,
    TwistedClassPartition,
    all_automorphisms,
    automorphism_from_descriptor,
    center,
    closure,
    element_order,
    group_descriptor,
    group_from_descriptor,
    induced_automorphism,
    inner_twist_invariance,
    isogredience_count,
    reidemeister_number,
    subgroup,
    telescoping_product_check,
    twisted_classes,
)
from .spectrum import (
    INFINITY,
    ExtendedCount,
    SmithNormalForm,
    SpectrumDescriptor,
    abelian_oracle_count,
    cokernel_order_mod,
    heisenberg_automorphism,
    heisenberg_cokernel_product,
    heisenberg_group,
    heisenberg_oracle,
    heisenberg_reidemeister,
    int_det,
    lamplighter_r_infinity,
    metabelian_spectrum,
    reidemeister_zn,
    smith_normal_form,
    zn_fullness_witness,
)
from .witness import (
    Constraint,
    FirstFactorReduction,
    ObstructionCertificate,
    ProductAutomorphism,
    WitnessSequence,
    ZeroEntryWitness,
    entrywise_constraint_system,
    generate_witnesses,
    obstruction_check,
    pattern_determinant,
    product_aut_power_action,
    project_product_to_first_factor,
    reduced_obstruction_check,
    twisted_power_product,
)
