#include "spectra/tree.hpp"

#include <algorithm>

namespace spectra {

TreeModel::TreeModel(const Nplts& model, StateId root) : model_(&model) {
    unfold(root, kNoNode, 0, Rational(1), 0);
}

NodeId TreeModel::unfold(StateId s, NodeId parent, ActionId in_label, const Rational& in_prob,
                         unsigned depth) {
    NodeId id = static_cast<NodeId>(nodes_.size());
    TreeNode n;
    n.corr = s;
    n.parent = parent;
    n.in_label = in_label;
    n.in_prob = in_prob;
    n.depth = depth;
    nodes_.push_back(std::move(n));
    std::vector<TreeTransition> trans;
    for (const auto& t : model_->outgoing(s)) {
        TreeTransition tt;
        tt.label = t.label;
        for (const auto& [target, p] : t.target.entries)
            tt.support.emplace_back(unfold(target, id, t.label, p, depth + 1), p);
        trans.push_back(std::move(tt));
    }
    nodes_[id].transitions = std::move(trans);
    return id;
}

Rational TreeModel::path_prob(NodeId n) const {
    Rational p(1);
    while (n != kNoNode) {
        p *= nodes_[n].in_prob;
        n = nodes_[n].parent;
    }
    return p;
}

std::vector<ActionId> TreeModel::path_trace(NodeId n) const {
    std::vector<ActionId> trace;
    while (nodes_[n].parent != kNoNode) {
        trace.push_back(nodes_[n].in_label);
        n = nodes_[n].parent;
    }
    std::reverse(trace.begin(), trace.end());
    return trace;
}

} // namespace spectra
