#include "spectra/resolution.hpp"

#include <algorithm>

namespace spectra {

void Resolution::visit(const std::function<void(NodeId)>& f) const {
    std::vector<NodeId> stack{tree->root()};
    while (!stack.empty()) {
        NodeId n = stack.back();
        stack.pop_back();
        f(n);
        if (const TreeTransition* t = chosen(n))
            for (auto it = t->support.rbegin(); it != t->support.rend(); ++it)
                stack.push_back(it->first);
    }
}

std::vector<NodeId> Resolution::reachable() const {
    std::vector<NodeId> out;
    visit([&](NodeId n) { out.push_back(n); });
    return out;
}

std::vector<NodeId> Resolution::leaves() const {
    std::vector<NodeId> out;
    visit([&](NodeId n) {
        if (choice[n] == kStop) out.push_back(n);
    });
    return out;
}

namespace {

bool compute_maximal(const Resolution& z) {
    bool maximal = true;
    z.visit([&](NodeId n) {
        if (z.choice[n] == kStop && !z.tree->node(n).transitions.empty()) maximal = false;
    });
    return maximal;
}

/// Depth-first product enumeration over undecided nodes. The Stop option
/// comes first so the trivial resolution is always emitted first.
void enumerate_tree(const TreeModel& tree, std::vector<NodeId>& frontier, std::vector<int>& choice,
                    Budget& budget, std::vector<Resolution>& out) {
    if (frontier.empty()) {
        budget.charge(1);
        Resolution z;
        z.tree = &tree;
        z.choice = choice;
        z.maximal = compute_maximal(z);
        out.push_back(std::move(z));
        return;
    }
    NodeId n = frontier.back();
    frontier.pop_back();

    choice[n] = kStop;
    enumerate_tree(tree, frontier, choice, budget, out);

    const auto& trans = tree.node(n).transitions;
    for (std::size_t ti = 0; ti < trans.size(); ++ti) {
        choice[n] = static_cast<int>(ti);
        std::size_t pushed = trans[ti].support.size();
        for (const auto& [child, p] : trans[ti].support) frontier.push_back(child);
        enumerate_tree(tree, frontier, choice, budget, out);
        frontier.resize(frontier.size() - pushed);
    }
    choice[n] = kStop;
    frontier.push_back(n);
}

/// Memoryless enumeration: one choice per reachable model state, then
/// materialized on the tree.
void enumerate_memoryless(const TreeModel& tree, std::vector<StateId>& frontier,
                          std::vector<int>& state_choice, std::vector<char>& decided,
                          Budget& budget, std::vector<Resolution>& out) {
    // Skip states already decided through another DAG path; restore them on
    // the way out so the caller's frontier is untouched.
    std::vector<StateId> skipped;
    while (!frontier.empty() && decided[frontier.back()]) {
        skipped.push_back(frontier.back());
        frontier.pop_back();
    }
    if (frontier.empty()) {
        budget.charge(1);
        Resolution z;
        z.tree = &tree;
        z.choice.assign(tree.num_nodes(), kStop);
        for (NodeId n = 0; n < tree.num_nodes(); ++n) z.choice[n] = state_choice[tree.corr(n)];
        z.maximal = compute_maximal(z);
        out.push_back(std::move(z));
    } else {
        StateId s = frontier.back();
        frontier.pop_back();
        decided[s] = 1;

        const auto& outgoing = tree.model().outgoing(s);
        for (int opt = kStop; opt < static_cast<int>(outgoing.size()); ++opt) {
            state_choice[s] = opt;
            std::size_t pushed = 0;
            if (opt != kStop)
                for (const auto& [target, p] :
                     outgoing[static_cast<std::size_t>(opt)].target.entries) {
                    frontier.push_back(target);
                    pushed++;
                }
            enumerate_memoryless(tree, frontier, state_choice, decided, budget, out);
            frontier.resize(frontier.size() - pushed);
        }
        state_choice[s] = kStop;
        decided[s] = 0;
        frontier.push_back(s);
    }
    for (auto it = skipped.rbegin(); it != skipped.rend(); ++it) frontier.push_back(*it);
}

} // namespace

std::vector<Resolution> enumerate_resolutions(const TreeModel& tree, Budget& budget,
                                              SchedulerMode mode) {
    std::vector<Resolution> out;
    if (mode == SchedulerMode::Tree) {
        std::vector<NodeId> frontier{tree.root()};
        std::vector<int> choice(tree.num_nodes(), kStop);
        enumerate_tree(tree, frontier, choice, budget, out);
    } else {
        std::vector<StateId> frontier{tree.corr(tree.root())};
        std::vector<int> state_choice(tree.model().num_states(), kStop);
        std::vector<char> decided(tree.model().num_states(), 0);
        enumerate_memoryless(tree, frontier, state_choice, decided, budget, out);
    }
    return out;
}

std::vector<Resolution> enumerate_max_resolutions(const TreeModel& tree, Budget& budget,
                                                  SchedulerMode mode) {
    std::vector<Resolution> all = enumerate_resolutions(tree, budget, mode);
    std::erase_if(all, [](const Resolution& z) { return !z.maximal; });
    return all;
}

namespace {

bool realizes(const Resolution& z, NodeId n, std::span<const ActionId> alpha, std::size_t pos) {
    if (pos == alpha.size()) return true;
    const TreeTransition* t = z.chosen(n);
    if (!t || t->label != alpha[pos]) return false;
    for (const auto& [child, p] : t->support)
        if (realizes(z, child, alpha, pos + 1)) return true;
    return false;
}

} // namespace

bool in_res_alpha(const Resolution& z, std::span<const ActionId> alpha) {
    // Res_alpha keeps the resolutions that realize alpha: at least one
    // computation reads all of alpha, so alpha-compatible computations have
    // positive probability. Resolutions that stop, diverge, or die before
    // ever completing alpha are excluded.
    return realizes(z, z.tree->root(), alpha, 0);
}

std::vector<Resolution> restrict_res_alpha(const TreeModel& tree, std::span<const ActionId> alpha,
                                           Budget& budget, SchedulerMode mode) {
    std::vector<Resolution> all = enumerate_resolutions(tree, budget, mode);
    std::erase_if(all, [&](const Resolution& z) { return !in_res_alpha(z, alpha); });
    return all;
}

Rational computation_set_probability(const Resolution& z, std::span<const Computation> cs) {
    // Prefix test: computations are root paths in one tree, so c is a prefix
    // of c' iff c.last is an ancestor of c'.last.
    for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j) {
            if (i == j) continue;
            NodeId n = cs[j].last;
            while (n != kNoNode) {
                n = z.tree->node(n).parent;
                if (n == cs[i].last)
                    throw Error(ErrorCode::NotPrefixFree,
                                "computation set contains a proper prefix of a member");
            }
        }
    Rational sum(0);
    for (const auto& c : cs) sum += c.probability();
    return sum;
}

bool validate_resolution(const Resolution& z) {
    const TreeModel& tree = *z.tree;
    const Nplts& model = tree.model();
    bool ok = true;
    z.visit([&](NodeId n) {
        const TreeTransition* t = z.chosen(n);
        if (t == nullptr) return; // at most one transition per node holds by construction
        // Bullet 1: corr(n) must have a transition with the same label whose
        // distribution matches through corr.
        const auto& outgoing = model.outgoing(tree.corr(n));
        bool matched = false;
        for (const auto& mt : outgoing) {
            if (mt.label != t->label) continue;
            if (mt.target.entries.size() != t->support.size()) continue;
            bool all = true;
            for (const auto& [child, p] : t->support)
                if (mt.target.at(tree.corr(child)) != p) { all = false; break; }
            if (all) { matched = true; break; }
        }
        if (!matched) ok = false;
    });
    return ok;
}

} // namespace spectra
