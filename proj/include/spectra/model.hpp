#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "spectra/rational.hpp"

namespace spectra {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

/// Bitmask over the model's action table. Alphabets are capped at 31
/// actions so that action sets fit in one word.
using ActionSet = std::uint32_t;

constexpr std::uint32_t kMaxAlphabet = 31;

/// Probability distribution over states in canonical form: entries sorted by
/// state, every stored probability strictly positive (the entry list IS the
/// support), probabilities summing to exactly 1.
struct Distribution {
    std::vector<std::pair<StateId, Rational>> entries;

    Rational at(StateId s) const {
        for (const auto& [t, p] : entries)
            if (t == s) return p;
        return Rational(0);
    }

    Rational mass(std::span<const char> member) const {
        Rational sum(0);
        for (const auto& [t, p] : entries)
            if (member[t]) sum += p;
        return sum;
    }

    bool is_dirac() const { return entries.size() == 1; }

    friend bool operator==(const Distribution&, const Distribution&) = default;
};

struct Transition {
    StateId source;
    ActionId label;
    Distribution target;
};

struct ModelClass {
    bool fully_nondeterministic = false;
    bool fully_probabilistic = false;
    unsigned depth = 0;
};

/// A validated finite acyclic NPLTS: states, a declared alphabet (which may
/// exceed the set of used labels; failure sets depend on which actions
/// exist), and per-state outgoing transitions. Immutable after validation.
class Nplts {
public:
    const std::string& name() const { return name_; }
    std::size_t num_states() const { return state_names_.size(); }
    std::size_t num_actions() const { return action_names_.size(); }

    const std::string& state_name(StateId s) const { return state_names_[s]; }
    const std::string& action_name(ActionId a) const { return action_names_[a]; }
    const std::vector<std::string>& state_names() const { return state_names_; }
    const std::vector<std::string>& action_names() const { return action_names_; }

    std::optional<StateId> find_state(const std::string& name) const {
        auto it = state_index_.find(name);
        if (it == state_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<ActionId> find_action(const std::string& name) const {
        auto it = action_index_.find(name);
        if (it == action_index_.end()) return std::nullopt;
        return it->second;
    }

    const std::vector<Transition>& outgoing(StateId s) const { return outgoing_[s]; }

    ActionSet enabled_actions(StateId s) const {
        ActionSet m = 0;
        for (const auto& t : outgoing_[s]) m |= ActionSet(1) << t.label;
        return m;
    }

    bool deadlocked(StateId s) const { return outgoing_[s].empty(); }

    /// Union of enabled_actions over all states; the decoration lattice for
    /// failure/ready events is drawn from this set.
    ActionSet enabled_somewhere() const {
        ActionSet m = 0;
        for (StateId s = 0; s < num_states(); ++s) m |= enabled_actions(s);
        return m;
    }

    /// True iff some computation from s reads exactly the given trace.
    bool can_read(StateId s, std::span<const ActionId> trace) const;

    ModelClass classify() const;
    unsigned depth_from(StateId s) const;

private:
    friend class NpltsBuilder;
    friend struct Composition;

    std::string name_;
    std::vector<std::string> state_names_;
    std::vector<std::string> action_names_;
    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, ActionId> action_index_;
    std::vector<std::vector<Transition>> outgoing_;
};

/// Accumulates raw model data and runs validation: exact distribution sums,
/// acyclicity by topological sort, state/action resolution. States are
/// implicitly declared by use.
class NpltsBuilder {
public:
    explicit NpltsBuilder(std::string name = "m") { model_.name_ = std::move(name); }

    void declare_action(const std::string& name);
    StateId declare_state(const std::string& name);
    void add_transition(const std::string& source, const std::string& label,
                        const std::vector<std::pair<std::string, Rational>>& dist);

    /// Validates and returns the finished model. Throws Error with codes
    /// DistributionNotNormalized, CyclicModel, EmptyModel, UnknownAction.
    Nplts build() &&;

private:
    Nplts model_;
    struct RawTransition {
        StateId source;
        ActionId label;
        std::vector<std::pair<StateId, Rational>> dist;
    };
    std::vector<RawTransition> raw_;
};

struct Composition {
    Nplts model;
    StateId root;
    std::vector<std::pair<StateId, StateId>> parts; // composed state -> factor states
};

/// Synchronous parallel product restricted to states reachable from the given
/// root pair. Both models must have identical action tables (see
/// align_alphabets).
Composition parallel_compose(const Nplts& m1, StateId root1, const Nplts& m2, StateId root2);

/// Rebuilds both models over the union alphabet (sorted by action name) so
/// that ActionIds and ActionSets are directly comparable across them.
std::pair<Nplts, Nplts> align_alphabets(const Nplts& m1, const Nplts& m2);

/// Disjoint union of two aligned models; states of m2 are offset by
/// m1.num_states(). State names are prefixed "l." / "r." to stay unique.
Nplts disjoint_union(const Nplts& m1, const Nplts& m2);

} // namespace spectra
