#pragma once

#include <functional>
#include <span>
#include <vector>

#include "spectra/budget.hpp"
#include "spectra/tree.hpp"

namespace spectra {

/// How scheduler choices are keyed. Tree mode (the default) picks per tree
/// node, so different occurrences of the same model state may be resolved
/// differently; Memoryless keys the choice by model state. On tree-shaped
/// models the two coincide.
enum class SchedulerMode { Tree, Memoryless };

constexpr int kStop = -1;

/// A resolution of nondeterminism: the sub-tree of the unfolding selected by
/// a deterministic scheduler. choice[n] is the index of the transition taken
/// at tree node n, or kStop. Only nodes reachable under the choices are
/// meaningful. corr is inherited from the unfolding.
struct Resolution {
    const TreeModel* tree = nullptr;
    std::vector<int> choice;
    bool maximal = false;

    const TreeTransition* chosen(NodeId n) const {
        int c = choice[n];
        if (c == kStop) return nullptr;
        return &tree->node(n).transitions[static_cast<std::size_t>(c)];
    }

    /// Reachable nodes in deterministic preorder.
    std::vector<NodeId> reachable() const;

    /// Reachable nodes with no chosen transition (stopped or deadlocked);
    /// their root paths are the maximal computations of the resolution.
    std::vector<NodeId> leaves() const;

    void visit(const std::function<void(NodeId)>& f) const;
};

/// A computation inside a resolution: the contiguous path from the root to
/// `last`. Its probability is the product of the step probabilities.
struct Computation {
    const Resolution* resolution = nullptr;
    NodeId last = kNoNode;

    Rational probability() const { return resolution->tree->path_prob(last); }
    std::vector<ActionId> trace() const { return resolution->tree->path_trace(last); }
};

/// All resolutions of the unfolded root, one per distinct scheduler,
/// including the immediate-Stop resolution. The result is closed under
/// pruning. Deterministic order. Throws ResolutionSpaceTooLarge past the
/// budget.
std::vector<Resolution> enumerate_resolutions(const TreeModel& tree, Budget& budget,
                                              SchedulerMode mode = SchedulerMode::Tree);

std::vector<Resolution> enumerate_max_resolutions(const TreeModel& tree, Budget& budget,
                                                  SchedulerMode mode = SchedulerMode::Tree);

/// Membership in Res_alpha: the resolution realizes alpha, i.e. at least one
/// of its computations reads all of alpha, so the alpha-compatible
/// computations have positive probability. This is the single place
/// implementing that reading of the side condition.
bool in_res_alpha(const Resolution& z, std::span<const ActionId> alpha);

std::vector<Resolution> restrict_res_alpha(const TreeModel& tree, std::span<const ActionId> alpha,
                                           Budget& budget,
                                           SchedulerMode mode = SchedulerMode::Tree);

/// prob(C) for a prefix-free set of computations. Throws NotPrefixFree.
Rational computation_set_probability(const Resolution& z, std::span<const Computation> cs);

/// Independent re-check of the two defining conditions of a resolution
/// against the source model (used by tests and the corpus verifier).
bool validate_resolution(const Resolution& z);

} // namespace spectra
