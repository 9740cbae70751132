#include "spectra/model.hpp"

#include <algorithm>
#include <set>

namespace spectra {

bool Nplts::can_read(StateId s, std::span<const ActionId> trace) const {
    if (trace.empty()) return true;
    for (const auto& t : outgoing_[s]) {
        if (t.label != trace.front()) continue;
        for (const auto& [target, p] : t.target.entries)
            if (can_read(target, trace.subspan(1))) return true;
    }
    return false;
}

unsigned Nplts::depth_from(StateId s) const {
    unsigned best = 0;
    for (const auto& t : outgoing_[s])
        for (const auto& [target, p] : t.target.entries)
            best = std::max(best, 1 + depth_from(target));
    return best;
}

ModelClass Nplts::classify() const {
    ModelClass c;
    c.fully_nondeterministic = true;
    c.fully_probabilistic = true;
    std::vector<unsigned> depth(num_states(), 0);
    // States never form a cycle (validated), so a reverse pass over a
    // topological order gives longest path lengths. Recompute the order here
    // instead of storing it; models are small.
    for (StateId s = 0; s < num_states(); ++s) {
        if (outgoing_[s].size() > 1) c.fully_probabilistic = false;
        for (const auto& t : outgoing_[s])
            if (!t.target.is_dirac()) c.fully_nondeterministic = false;
    }
    unsigned best = 0;
    for (StateId s = 0; s < num_states(); ++s) best = std::max(best, depth_from(s));
    c.depth = best;
    return c;
}

void NpltsBuilder::declare_action(const std::string& name) {
    if (model_.action_index_.count(name)) return;
    if (model_.action_names_.size() >= kMaxAlphabet)
        throw Error(ErrorCode::UniverseTooLarge, "alphabet larger than " + std::to_string(kMaxAlphabet));
    ActionId id = static_cast<ActionId>(model_.action_names_.size());
    model_.action_names_.push_back(name);
    model_.action_index_.emplace(name, id);
}

StateId NpltsBuilder::declare_state(const std::string& name) {
    auto it = model_.state_index_.find(name);
    if (it != model_.state_index_.end()) return it->second;
    StateId id = static_cast<StateId>(model_.state_names_.size());
    model_.state_names_.push_back(name);
    model_.state_index_.emplace(name, id);
    return id;
}

void NpltsBuilder::add_transition(const std::string& source, const std::string& label,
                                  const std::vector<std::pair<std::string, Rational>>& dist) {
    auto ait = model_.action_index_.find(label);
    if (ait == model_.action_index_.end())
        throw Error(ErrorCode::UnknownAction, "action '" + label + "' not in declared alphabet");
    RawTransition raw;
    raw.source = declare_state(source);
    raw.label = ait->second;
    for (const auto& [name, p] : dist) raw.dist.emplace_back(declare_state(name), p);
    raw_.push_back(std::move(raw));
}

Nplts NpltsBuilder::build() && {
    if (model_.state_names_.empty())
        throw Error(ErrorCode::EmptyModel, "model '" + model_.name_ + "' has no states");

    model_.outgoing_.resize(model_.state_names_.size());
    for (auto& raw : raw_) {
        Distribution d;
        // Merge duplicate support entries, drop explicit zeros, keep canonical order.
        std::sort(raw.dist.begin(), raw.dist.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Rational sum(0);
        for (const auto& [target, p] : raw.dist) {
            sum += p;
            if (p < Rational(0))
                throw Error(ErrorCode::DistributionNotNormalized,
                            "negative probability in distribution from state '" +
                                model_.state_names_[raw.source] + "'");
            if (p.is_zero()) continue;
            if (!d.entries.empty() && d.entries.back().first == target)
                d.entries.back().second += p;
            else
                d.entries.emplace_back(target, p);
        }
        if (!sum.is_one())
            throw Error(ErrorCode::DistributionNotNormalized,
                        "distribution from state '" + model_.state_names_[raw.source] +
                            "' sums to " + sum.str() + ", expected 1");
        model_.outgoing_[raw.source].push_back(Transition{raw.source, raw.label, std::move(d)});
    }

    // Acyclicity via Kahn's algorithm on the support graph.
    // Distributions are canonical, so targets are unique within a transition
    // and every support edge can be counted directly.
    std::vector<int> indeg(model_.state_names_.size(), 0);
    for (const auto& out : model_.outgoing_)
        for (const auto& t : out)
            for (const auto& [target, p] : t.target.entries) indeg[target]++;
    std::vector<StateId> queue;
    for (StateId s = 0; s < indeg.size(); ++s)
        if (indeg[s] == 0) queue.push_back(s);
    std::size_t removed = 0;
    while (!queue.empty()) {
        StateId s = queue.back();
        queue.pop_back();
        removed++;
        for (const auto& t : model_.outgoing_[s])
            for (const auto& [target, p] : t.target.entries)
                if (--indeg[target] == 0) queue.push_back(target);
    }
    if (removed != model_.state_names_.size()) {
        std::string cyc;
        for (StateId s = 0; s < indeg.size(); ++s)
            if (indeg[s] > 0) cyc += (cyc.empty() ? "" : ", ") + model_.state_names_[s];
        throw Error(ErrorCode::CyclicModel, "model is cyclic through: " + cyc);
    }
    return std::move(model_);
}

Composition parallel_compose(const Nplts& m1, StateId root1, const Nplts& m2, StateId root2) {
    if (m1.action_names() != m2.action_names())
        throw Error(ErrorCode::UnknownAction, "parallel_compose requires aligned alphabets");

    Composition out;
    NpltsBuilder b(m1.name() + "|" + m2.name());
    for (const auto& a : m1.action_names()) b.declare_action(a);

    auto compose_name = [&](StateId s1, StateId s2) {
        return "(" + m1.state_name(s1) + "," + m2.state_name(s2) + ")";
    };

    std::vector<std::pair<StateId, StateId>> order;
    std::set<std::pair<StateId, StateId>> seen;
    std::vector<std::pair<StateId, StateId>> stack{{root1, root2}};
    seen.insert({root1, root2});
    while (!stack.empty()) {
        auto [s1, s2] = stack.back();
        stack.pop_back();
        order.emplace_back(s1, s2);
        for (const auto& t1 : m1.outgoing(s1))
            for (const auto& t2 : m2.outgoing(s2)) {
                if (t1.label != t2.label) continue;
                for (const auto& [u1, p1] : t1.target.entries)
                    for (const auto& [u2, p2] : t2.target.entries)
                        if (seen.insert({u1, u2}).second) stack.push_back({u1, u2});
            }
    }
    std::sort(order.begin(), order.end());

    b.declare_state(compose_name(root1, root2));
    for (const auto& [s1, s2] : order) b.declare_state(compose_name(s1, s2));
    for (const auto& [s1, s2] : order) {
        for (const auto& t1 : m1.outgoing(s1))
            for (const auto& t2 : m2.outgoing(s2)) {
                if (t1.label != t2.label) continue;
                std::vector<std::pair<std::string, Rational>> dist;
                for (const auto& [u1, p1] : t1.target.entries)
                    for (const auto& [u2, p2] : t2.target.entries)
                        dist.emplace_back(compose_name(u1, u2), p1 * p2);
                b.add_transition(compose_name(s1, s2), m1.action_name(t1.label), dist);
            }
    }

    out.model = std::move(b).build();
    out.root = *out.model.find_state(compose_name(root1, root2));
    out.parts.resize(out.model.num_states());
    for (const auto& [s1, s2] : order)
        out.parts[*out.model.find_state(compose_name(s1, s2))] = {s1, s2};
    return out;
}

namespace {

Nplts rebuild_over(const Nplts& m, const std::vector<std::string>& actions) {
    NpltsBuilder b(m.name());
    for (const auto& a : actions) b.declare_action(a);
    for (const auto& name : m.state_names()) b.declare_state(name);
    for (StateId s = 0; s < m.num_states(); ++s)
        for (const auto& t : m.outgoing(s)) {
            std::vector<std::pair<std::string, Rational>> dist;
            for (const auto& [target, p] : t.target.entries)
                dist.emplace_back(m.state_name(target), p);
            b.add_transition(m.state_name(s), m.action_name(t.label), dist);
        }
    return std::move(b).build();
}

} // namespace

std::pair<Nplts, Nplts> align_alphabets(const Nplts& m1, const Nplts& m2) {
    std::set<std::string> names(m1.action_names().begin(), m1.action_names().end());
    names.insert(m2.action_names().begin(), m2.action_names().end());
    std::vector<std::string> actions(names.begin(), names.end());
    return {rebuild_over(m1, actions), rebuild_over(m2, actions)};
}

Nplts disjoint_union(const Nplts& m1, const Nplts& m2) {
    if (m1.action_names() != m2.action_names())
        throw Error(ErrorCode::UnknownAction, "disjoint_union requires aligned alphabets");
    NpltsBuilder b(m1.name() + "+" + m2.name());
    for (const auto& a : m1.action_names()) b.declare_action(a);
    for (const auto& name : m1.state_names()) b.declare_state("l." + name);
    for (const auto& name : m2.state_names()) b.declare_state("r." + name);
    auto emit = [&](const Nplts& m, const std::string& prefix) {
        for (StateId s = 0; s < m.num_states(); ++s)
            for (const auto& t : m.outgoing(s)) {
                std::vector<std::pair<std::string, Rational>> dist;
                for (const auto& [target, p] : t.target.entries)
                    dist.emplace_back(prefix + m.state_name(target), p);
                b.add_transition(prefix + m.state_name(s), m.action_name(t.label), dist);
            }
    };
    emit(m1, "l.");
    emit(m2, "r.");
    return std::move(b).build();
}

} // namespace spectra
