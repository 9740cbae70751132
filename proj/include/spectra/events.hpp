#pragma once

#include <map>
#include <string>
#include <vector>

#include "spectra/resolution.hpp"

namespace spectra {

enum class EventKind {
    Trace,
    CompletedTrace,
    FailurePair,
    FailureTrace,
    ReadyPair,
    ReadyTrace,
    SuccessAlong, // testing only: trace plus success at the final configuration
};

/// A decorated-trace observable. `sets` holds the decoration: one final set
/// for FailurePair/ReadyPair, one set per step for FailureTrace/ReadyTrace,
/// empty otherwise.
struct Event {
    EventKind kind = EventKind::Trace;
    std::vector<ActionId> trace;
    std::vector<ActionSet> sets;

    friend auto operator<=>(const Event&, const Event&) = default;
};

std::string event_to_string(const Event& e, const Nplts& m);

/// Per-state data event compatibility is checked against. Everything is read
/// from the ORIGINAL model through corr, never from the (possibly stopped)
/// resolution structure.
struct StateFacts {
    std::vector<ActionSet> enabled;
    std::vector<char> success;

    static StateFacts of(const Nplts& m);
    /// Facts for an interaction system: success holds at states whose test
    /// component is the given success marker (set by testing.cpp).
    bool is_success(StateId s) const { return success[s] != 0; }
};

enum class CondKind { None, Refuses, ReadyExactly, Deadlocked, Success };

struct StepCond {
    CondKind kind = CondKind::None;
    ActionSet set = 0;

    bool holds(ActionSet enabled, bool success) const {
        switch (kind) {
            case CondKind::None: return true;
            case CondKind::Refuses: return (enabled & set) == 0;
            case CondKind::ReadyExactly: return enabled == set;
            case CondKind::Deadlocked: return enabled == 0;
            case CondKind::Success: return success;
        }
        return false;
    }
};

/// Event reduced to its operational content: an action sequence plus a
/// condition on the model state reached after each step (conds[i] applies
/// after step i+1). root_cond is only non-trivial for empty-trace events,
/// where the "last state" of the empty computation is the root itself.
struct NormalizedEvent {
    std::vector<ActionId> trace;
    std::vector<StepCond> conds;
    StepCond root_cond;
};

NormalizedEvent normalize(const Event& e);

/// Exact probability of the e-compatible computation set from the resolution
/// root. Compatible computations all have length |trace|, so the set is
/// prefix-free by construction.
Rational compatible_probability(const Resolution& z, const Event& e, const StateFacts& facts);
Rational compatible_probability(const Resolution& z, const NormalizedEvent& e, const StateFacts& facts);

/// Finite event universe for comparing two states: traces readable from
/// either state, failure decorations from the subset lattice of actions
/// enabled somewhere in either model, ready decorations from the enabled
/// sets occurring in either model (plus the empty set).
class EventUniverse {
public:
    EventKind kind() const { return kind_; }
    const std::vector<Event>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    const Event& at(std::size_t i) const { return events_[i]; }
    const NormalizedEvent& normalized(std::size_t i) const { return normalized_[i]; }

    /// Indices of universe events whose trace equals the given one.
    const std::vector<std::size_t>* by_trace(const std::vector<ActionId>& trace) const {
        auto it = by_trace_.find(trace);
        if (it == by_trace_.end()) return nullptr;
        return &it->second;
    }

private:
    friend EventUniverse event_universe(const Nplts&, StateId, const Nplts&, StateId, EventKind,
                                        Budget&);
    EventKind kind_;
    std::vector<Event> events_;
    std::vector<NormalizedEvent> normalized_;
    std::map<std::vector<ActionId>, std::vector<std::size_t>> by_trace_;
};

EventUniverse event_universe(const Nplts& m1, StateId s1, const Nplts& m2, StateId s2,
                             EventKind kind, Budget& budget);

/// Probabilities of every universe event in one resolution, aligned with
/// universe.events().
std::vector<Rational> event_profile(const Resolution& z, const EventUniverse& universe,
                                    const StateFacts& facts);

/// (sup, inf) of the event probability over the resolutions of the unfolded
/// root giving the event positive probability: the maximum achievable value
/// paired with the minimum positive one, (0, 0) when none exists. Bottom-up
/// dynamic programming over the tree; valid for per-node (tree) schedulers.
std::pair<Rational, Rational> supinf_value_dp(const TreeModel& tree, const NormalizedEvent& e,
                                              const StateFacts& facts);

/// Reference oracle for the same quantity by exhaustive enumeration.
/// Convention: (0, 0) when the restricted set is empty.
std::pair<Rational, Rational> supinf_value_exhaustive(const TreeModel& tree,
                                                      const NormalizedEvent& e,
                                                      const StateFacts& facts, Budget& budget,
                                                      SchedulerMode mode = SchedulerMode::Tree);

} // namespace spectra
