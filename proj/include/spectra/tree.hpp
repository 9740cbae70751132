#pragma once

#include <limits>
#include <vector>

#include "spectra/model.hpp"

namespace spectra {

using NodeId = std::uint32_t;
constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct TreeTransition {
    ActionId label;
    std::vector<std::pair<NodeId, Rational>> support;
};

struct TreeNode {
    StateId corr;
    std::vector<TreeTransition> transitions;
    NodeId parent = kNoNode;
    ActionId in_label = 0;   // label of the step into this node
    Rational in_prob = Rational(1);
    unsigned depth = 0;
};

/// Tree unfolding of an acyclic model from a root state: every computation of
/// the model from the root corresponds to exactly one root-to-node path.
/// Each node carries its model state (corr) plus the label and probability of
/// the step that reached it. Nondeterminism is kept; resolution happens later.
class TreeModel {
public:
    TreeModel(const Nplts& model, StateId root);

    const Nplts& model() const { return *model_; }
    NodeId root() const { return 0; }
    std::size_t num_nodes() const { return nodes_.size(); }
    const TreeNode& node(NodeId n) const { return nodes_[n]; }
    StateId corr(NodeId n) const { return nodes_[n].corr; }

    /// Product of step probabilities from the root.
    Rational path_prob(NodeId n) const;
    /// Action labels along the root-to-node path.
    std::vector<ActionId> path_trace(NodeId n) const;

private:
    NodeId unfold(StateId s, NodeId parent, ActionId in_label, const Rational& in_prob, unsigned depth);

    const Nplts* model_;
    std::vector<TreeNode> nodes_;
};

} // namespace spectra
