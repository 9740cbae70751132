#pragma once

#include "spectra/verdict.hpp"

namespace spectra {

/// Disjoint blocks covering all states of the analyzed model (the disjoint
/// union of the two compared models).
struct Partition {
    std::vector<std::vector<StateId>> blocks;
    std::vector<std::uint32_t> block_of;

    std::size_t num_blocks() const { return blocks.size(); }
    bool same_block(StateId x, StateId y) const { return block_of[x] == block_of[y]; }
};

enum class BisimVariant { Dis, Group, SupInf };

const char* bisim_variant_name(BisimVariant v);

struct BisimOptions {
    /// Replace the per-block reduction of the dis transfer condition by
    /// literal quantification over all groups (test oracle; same verdicts by
    /// additivity).
    bool dis_exhaustive_groups = false;
    /// Restrict group enumeration to blocks meeting some relevant support
    /// (fast path; groups differing only by mass-0 blocks are redundant).
    bool prune_groups = false;
};

/// Mass of a distribution on the union of a group of blocks.
Rational group_mass(const Distribution& d, std::span<const char> member);

/// The transfer condition of the chosen bisimulation variant for one pair of
/// states, relative to the current partition.
bool transfer_holds(const Nplts& m, StateId x, StateId y, const Partition& p, BisimVariant v,
                    Budget& budget, const BisimOptions& opt = {});

/// Checks every intra-block pair; true iff the partition is a bisimulation
/// of the chosen kind.
bool partition_is_bisimulation(const Nplts& m, const Partition& p, BisimVariant v, Budget& budget,
                               const BisimOptions& opt = {});

struct BisimResult {
    Verdict verdict;
    Partition partition;  // final partition on the disjoint union
    Nplts union_model;    // the disjoint union the partition lives on
    StateId u1 = 0, u2 = 0; // the compared states inside union_model
    unsigned rounds = 0;
};

/// Greatest fixed point by partition refinement from the single-block
/// partition on the disjoint union of the two models.
BisimResult decide_bisimilarity(const Nplts& m1, StateId s1, const Nplts& m2, StateId s2,
                                BisimVariant v, Budget& budget, const BisimOptions& opt = {});

} // namespace spectra
