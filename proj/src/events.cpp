#include "spectra/events.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace spectra {

namespace {

std::string action_set_to_string(ActionSet set, const Nplts& m) {
    std::string out = "{";
    bool first = true;
    for (ActionId a = 0; a < m.num_actions(); ++a)
        if (set & (ActionSet(1) << a)) {
            if (!first) out += ",";
            out += m.action_name(a);
            first = false;
        }
    return out + "}";
}

} // namespace

std::string event_to_string(const Event& e, const Nplts& m) {
    std::string trace;
    for (std::size_t i = 0; i < e.trace.size(); ++i)
        trace += (i ? " " : "") + m.action_name(e.trace[i]);
    if (e.trace.empty()) trace = "eps";
    switch (e.kind) {
        case EventKind::Trace: return "trace(" + trace + ")";
        case EventKind::CompletedTrace: return "completed-trace(" + trace + ")";
        case EventKind::SuccessAlong: return "success-along(" + trace + ")";
        case EventKind::FailurePair:
            return "failure-pair(" + trace + "; " + action_set_to_string(e.sets[0], m) + ")";
        case EventKind::ReadyPair:
            return "ready-pair(" + trace + "; " + action_set_to_string(e.sets[0], m) + ")";
        case EventKind::FailureTrace:
        case EventKind::ReadyTrace: {
            std::string out = e.kind == EventKind::FailureTrace ? "failure-trace(" : "ready-trace(";
            for (std::size_t i = 0; i < e.trace.size(); ++i) {
                if (i) out += " ";
                out += m.action_name(e.trace[i]) + action_set_to_string(e.sets[i], m);
            }
            return out + ")";
        }
    }
    return "?";
}

StateFacts StateFacts::of(const Nplts& m) {
    StateFacts f;
    f.enabled.resize(m.num_states());
    f.success.assign(m.num_states(), 0);
    for (StateId s = 0; s < m.num_states(); ++s) f.enabled[s] = m.enabled_actions(s);
    return f;
}

NormalizedEvent normalize(const Event& e) {
    NormalizedEvent n;
    n.trace = e.trace;
    n.conds.assign(e.trace.size(), StepCond{});
    StepCond final_cond;
    switch (e.kind) {
        case EventKind::Trace:
            break;
        case EventKind::CompletedTrace:
            final_cond = {CondKind::Deadlocked, 0};
            break;
        case EventKind::SuccessAlong:
            final_cond = {CondKind::Success, 0};
            break;
        case EventKind::FailurePair:
            final_cond = {CondKind::Refuses, e.sets[0]};
            break;
        case EventKind::ReadyPair:
            final_cond = {CondKind::ReadyExactly, e.sets[0]};
            break;
        case EventKind::FailureTrace:
            for (std::size_t i = 0; i < e.sets.size(); ++i) n.conds[i] = {CondKind::Refuses, e.sets[i]};
            return n;
        case EventKind::ReadyTrace:
            for (std::size_t i = 0; i < e.sets.size(); ++i)
                n.conds[i] = {CondKind::ReadyExactly, e.sets[i]};
            return n;
    }
    // The final-state condition lands on the last step, or on the root for
    // the empty computation.
    if (n.conds.empty())
        n.root_cond = final_cond;
    else
        n.conds.back() = final_cond;
    return n;
}

namespace {

void accumulate(const Resolution& z, const NormalizedEvent& e, const StateFacts& facts, NodeId n,
                std::size_t pos, const Rational& prob, Rational& total) {
    if (pos == e.trace.size()) {
        total += prob;
        return;
    }
    const TreeTransition* t = z.chosen(n);
    if (t == nullptr || t->label != e.trace[pos]) return;
    for (const auto& [child, p] : t->support) {
        StateId s = z.tree->corr(child);
        if (!e.conds[pos].holds(facts.enabled[s], facts.is_success(s))) continue;
        accumulate(z, e, facts, child, pos + 1, prob * p, total);
    }
}

} // namespace

Rational compatible_probability(const Resolution& z, const NormalizedEvent& e,
                                const StateFacts& facts) {
    StateId root = z.tree->corr(z.tree->root());
    if (!e.root_cond.holds(facts.enabled[root], facts.is_success(root))) return Rational(0);
    Rational total(0);
    accumulate(z, e, facts, z.tree->root(), 0, Rational(1), total);
    return total;
}

Rational compatible_probability(const Resolution& z, const Event& e, const StateFacts& facts) {
    return compatible_probability(z, normalize(e), facts);
}

namespace {

void collect_traces(const Nplts& m, StateId s, std::vector<ActionId>& prefix,
                    std::set<std::vector<ActionId>>& out) {
    out.insert(prefix);
    for (const auto& t : m.outgoing(s))
        for (const auto& [target, p] : t.target.entries) {
            prefix.push_back(t.label);
            collect_traces(m, target, prefix, out);
            prefix.pop_back();
        }
}

std::vector<ActionSet> subsets_of(ActionSet lattice) {
    std::vector<ActionSet> out;
    ActionSet sub = 0;
    while (true) {
        out.push_back(sub);
        if (sub == lattice) break;
        sub = (sub - lattice) & lattice; // next subset in increasing order
    }
    std::sort(out.begin(), out.end());
    return out;
}

void enumerate_decorations(const std::vector<ActionSet>& pool, std::size_t length,
                           std::vector<ActionSet>& current, const std::vector<ActionId>& trace,
                           EventKind kind, std::vector<Event>& out) {
    if (current.size() == length) {
        out.push_back(Event{kind, trace, current});
        return;
    }
    for (ActionSet s : pool) {
        current.push_back(s);
        enumerate_decorations(pool, length, current, trace, kind, out);
        current.pop_back();
    }
}

} // namespace

EventUniverse event_universe(const Nplts& m1, StateId s1, const Nplts& m2, StateId s2,
                             EventKind kind, Budget& budget) {
    std::set<std::vector<ActionId>> traces;
    std::vector<ActionId> prefix;
    collect_traces(m1, s1, prefix, traces);
    collect_traces(m2, s2, prefix, traces);

    ActionSet lattice = m1.enabled_somewhere() | m2.enabled_somewhere();
    std::vector<ActionSet> failure_pool = subsets_of(lattice);

    std::set<ActionSet> ready;
    ready.insert(0);
    for (StateId s = 0; s < m1.num_states(); ++s) ready.insert(m1.enabled_actions(s));
    for (StateId s = 0; s < m2.num_states(); ++s) ready.insert(m2.enabled_actions(s));
    std::vector<ActionSet> ready_pool(ready.begin(), ready.end());

    EventUniverse u;
    u.kind_ = kind;
    for (const auto& trace : traces) {
        switch (kind) {
            case EventKind::Trace:
            case EventKind::CompletedTrace:
            case EventKind::SuccessAlong:
                budget.charge(1, ErrorCode::UniverseTooLarge);
                u.events_.push_back(Event{kind, trace, {}});
                break;
            case EventKind::FailurePair:
                budget.charge(static_cast<std::int64_t>(failure_pool.size()),
                              ErrorCode::UniverseTooLarge);
                for (ActionSet f : failure_pool) u.events_.push_back(Event{kind, trace, {f}});
                break;
            case EventKind::ReadyPair:
                budget.charge(static_cast<std::int64_t>(ready_pool.size()),
                              ErrorCode::UniverseTooLarge);
                for (ActionSet r : ready_pool) u.events_.push_back(Event{kind, trace, {r}});
                break;
            case EventKind::FailureTrace:
            case EventKind::ReadyTrace: {
                const auto& pool = kind == EventKind::FailureTrace ? failure_pool : ready_pool;
                std::int64_t count = 1;
                for (std::size_t i = 0; i < trace.size(); ++i)
                    count *= static_cast<std::int64_t>(pool.size());
                budget.charge(count, ErrorCode::UniverseTooLarge);
                std::vector<ActionSet> current;
                enumerate_decorations(pool, trace.size(), current, trace, kind, u.events_);
                break;
            }
        }
    }
    std::sort(u.events_.begin(), u.events_.end());
    u.normalized_.reserve(u.events_.size());
    for (std::size_t i = 0; i < u.events_.size(); ++i) {
        u.by_trace_[u.events_[i].trace].push_back(i);
        u.normalized_.push_back(normalize(u.events_[i]));
    }
    return u;
}

namespace {

void profile_walk(const Resolution& z, const EventUniverse& universe, const StateFacts& facts,
                  NodeId n, std::vector<ActionId>& trace, std::vector<StateId>& states,
                  const Rational& prob, std::vector<Rational>& out) {
    states.push_back(z.tree->corr(n));
    if (const auto* indices = universe.by_trace(trace)) {
        for (std::size_t idx : *indices) {
            const NormalizedEvent& ne = universe.normalized(idx);
            StateId root = states[0];
            bool ok = ne.root_cond.holds(facts.enabled[root], facts.is_success(root));
            for (std::size_t i = 0; i < ne.conds.size() && ok; ++i) {
                StateId s = states[i + 1];
                ok = ne.conds[i].holds(facts.enabled[s], facts.is_success(s));
            }
            if (ok) out[idx] += prob;
        }
    }
    if (const TreeTransition* t = z.chosen(n)) {
        for (const auto& [child, p] : t->support) {
            trace.push_back(t->label);
            profile_walk(z, universe, facts, child, trace, states, prob * p, out);
            trace.pop_back();
        }
    }
    states.pop_back();
}

} // namespace

std::vector<Rational> event_profile(const Resolution& z, const EventUniverse& universe,
                                    const StateFacts& facts) {
    std::vector<Rational> out(universe.size(), Rational(0));
    std::vector<ActionId> trace;
    std::vector<StateId> states;
    profile_walk(z, universe, facts, z.tree->root(), trace, states, Rational(1), out);
    return out;
}

namespace {

struct SupInfDp {
    const TreeModel& tree;
    const NormalizedEvent& e;
    const StateFacts& facts;

    /// Largest event value any schedule of the subtree at n can produce; n
    /// sits on the alpha path at depth pos. Stopping or leaving alpha gives
    /// 0, so the maximum is always defined, and whenever it is positive it
    /// is attained by a schedule that realizes the event.
    Rational max_value(NodeId n, std::size_t pos) const {
        if (pos == e.trace.size()) return Rational(1);
        Rational best(0);
        for (const auto& t : tree.node(n).transitions) {
            if (t.label != e.trace[pos]) continue;
            Rational sum(0);
            for (const auto& [child, p] : t.support) {
                StateId s = tree.corr(child);
                if (!e.conds[pos].holds(facts.enabled[s], facts.is_success(s))) continue;
                sum += p * max_value(child, pos + 1);
            }
            if (sum > best) best = sum;
        }
        return best;
    }

    /// Smallest event value over schedules of the subtree at n that keep at
    /// least one condition-passing alpha-computation alive, i.e. that give
    /// the event positive probability. nullopt when no schedule can.
    std::optional<Rational> min_positive(NodeId n, std::size_t pos) const {
        const std::size_t len = e.trace.size();
        if (pos == len) return Rational(1);
        std::optional<Rational> best;
        for (const auto& t : tree.node(n).transitions) {
            if (t.label != e.trace[pos]) continue;
            // Every condition-passing child carries an unavoidable floor: 1
            // per unit of mass when the trace ends right at the child, 0
            // otherwise since the child may stop. On top of the floors,
            // exactly one child has to realize the rest of the trace, as
            // cheaply as possible. Condition-failing children contribute no
            // mass and cannot make the event positive, so they are ignored.
            Rational base(0);
            std::optional<Rational> extra;
            for (const auto& [child, p] : t.support) {
                StateId s = tree.corr(child);
                if (!e.conds[pos].holds(facts.enabled[s], facts.is_success(s))) continue;
                Rational floor = pos + 1 == len ? Rational(1) : Rational(0);
                base += p * floor;
                if (auto sub = min_positive(child, pos + 1)) {
                    Rational d = p * (*sub - floor);
                    if (!extra || d < *extra) extra = d;
                }
            }
            if (!extra) continue;
            Rational cand = base + *extra;
            if (!best || cand < *best) best = cand;
        }
        return best;
    }
};

} // namespace

std::pair<Rational, Rational> supinf_value_dp(const TreeModel& tree, const NormalizedEvent& e,
                                              const StateFacts& facts) {
    // Extrema over the resolutions that give the event positive probability:
    // sup is the unconstrained maximum (a positive maximum realizes the
    // event; a zero maximum means the restricted set is empty or all-zero,
    // and both read as 0), inf is the smallest positive achievable value.
    // When no resolution realizes the event, both default to 0.
    StateId root = tree.corr(tree.root());
    if (!e.root_cond.holds(facts.enabled[root], facts.is_success(root)))
        return {Rational(0), Rational(0)};
    SupInfDp dp{tree, e, facts};
    auto inf = dp.min_positive(tree.root(), 0);
    if (!inf) return {Rational(0), Rational(0)};
    return {dp.max_value(tree.root(), 0), *inf};
}

std::pair<Rational, Rational> supinf_value_exhaustive(const TreeModel& tree,
                                                      const NormalizedEvent& e,
                                                      const StateFacts& facts, Budget& budget,
                                                      SchedulerMode mode) {
    // The restricted domain is event-level: resolutions with at least one
    // compatible computation, equivalently a positive event value.
    bool have = false;
    Rational sup(0), inf(0);
    for (const auto& z : enumerate_resolutions(tree, budget, mode)) {
        Rational v = compatible_probability(z, e, facts);
        if (v == Rational(0)) continue;
        if (!have) {
            sup = inf = v;
            have = true;
        } else {
            if (v > sup) sup = v;
            if (v < inf) inf = v;
        }
    }
    if (!have) return {Rational(0), Rational(0)};
    return {sup, inf};
}

} // namespace spectra
