"""semibox: a finite semigroup workbench.

Green's relations with fast paths for transformation and partial-bijection
semigroups, amalgamation-base classification, transversal-pattern witnesses,
semilattice extension witnesses, and exact iterated-Cayley towers.
"""

__version__ = "0.1.0"

from .amalgam import (
    Amalgam,
    ClassVerdict,
    Completion,
    classify_semigroup_base,
    complete_amalgam,
    is_inverse_amalgamation_base,
    joint_embedding_inverse,
)
from .chains import (
    ChainStage,
    NonconjugacyCertificate,
    TrackedElement,
    cayley_chain,
    chain_ideal_report,
    conjugacy_classes,
    fixed_point_sequence,
    group_h_class_elements,
    group_inverses,
    order2_nonconjugacy_certificate,
    regular_image,
    track_fixed_points,
    tower_sizes,
    verify_tracked,
)
from .embeddings import (
    DilationContext,
    add_fixed_point_embedding,
    build_dilation,
    h_sets_disjoint,
    pad_embedding,
    right_regular_embedding,
    vagner_preston_embedding,
)
from .errors import CapExceededError, FlowerHypothesisError
from .flower import (
    BipartiteGraph,
    FlowerInstance,
    Partition,
    WitnessBundle,
    flower_partition,
    graham_houghton,
    group_pattern_witness,
    is_transversal,
    random_flower_instance,
    transversal_subset_search,
)
from .green import (
    GreenStructure,
    PrincipalFactor,
    eggbox_data,
    green_classes,
    green_equivalent,
    green_full_transformations,
    green_partial_bijections,
    is_ideal_chain,
    j_chain_length,
    maximal_subgroup,
    opposite_green_structure,
    principal_factor,
)
from .isomorphism import find_embedding, find_isomorphism, iter_embeddings
from .semigroups import (
    FiniteSemigroup,
    Morphism,
    closure,
    full_transformation_semigroup,
    opposite,
    symmetric_inverse_semigroup,
)
from .semilattice import (
    ExtensionWitness,
    IdealSet,
    Poset,
    extension_axiom_report,
    extension_witness,
    idempotent_below,
    idempotent_chain,
    idempotent_semilattice,
    image_ideal,
    image_ideal_size,
    lower_rank_chain,
    lower_rank_idempotent,
)
from .transformations import (
    PartialBijection,
    Transformation,
    all_partial_bijections,
    all_transformations,
    canonical_image_rep,
    partial_bijection_count,
    rank_r_idempotent,
    transformation_count,
)
