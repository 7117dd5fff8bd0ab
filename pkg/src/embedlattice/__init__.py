"""Embedded-subset lattices, partition lattices and games in partition function form."""

from .games import (
    CheckResult,
    Game,
    GameError,
    MoebiusVector,
    PropertyReport,
    ValuationSpace,
    analyze,
    check_belief,
    check_infty_monotone,
    check_invertible_belief,
    check_k_monotone,
    check_minitive,
    check_modularity_class,
    check_monotone,
    example1_game,
    generate_minitive,
    make_game,
    make_moebius,
    moebius_transform,
    random_game,
    twoparam_belief,
    unanimity_game,
    valuation_space,
    zeta_transform,
)
from .lattice import (
    EmbeddedLattice,
    EmbeddedSubset,
    LatticeError,
    bottom,
    build_lattice,
    complements_of,
    count_chains_embedded,
    count_chains_oracle,
    covers_of,
    element_count,
    emb_join,
    emb_meet,
    embedded,
    irreducibles,
    lattice_properties,
    leq,
    moebius_embedded,
    moebius_oracle,
    parse_element,
    top,
    total_chain_count,
)
from .partitions import (
    Partition,
    PartitionError,
    canonicalize,
    count_chains_partition,
    enumerate_partitions,
    interval_type,
    moebius_partition,
    partition_covers,
    partition_join,
    partition_meet,
    refines,
    stirling2,
)

__version__ = "0.1.0"
