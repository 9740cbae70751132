#pragma once

#include <map>

#include "spectra/verdict.hpp"

namespace spectra {

enum class Semantics { Tr, CTr, F, FTr, R, RTr };
enum class Approach { Dis, Single, SupInf };

const char* semantics_name(Semantics s);
const char* approach_name(Approach a);

/// Event kinds a semantics quantifies over; CTr pairs plain traces with
/// completed traces, each over its own universe.
std::vector<EventKind> semantics_kinds(Semantics s);

enum class ResDomain { Res, ResAlpha };

/// { prob of the e-compatible computations in z : z in the domain }, sorted.
std::vector<Rational> achievable_value_set(const Nplts& m, StateId s, const Event& e,
                                           ResDomain domain, Budget& budget,
                                           SchedulerMode mode = SchedulerMode::Tree);

/// (sup, inf) of the e-compatible probability over the resolutions of s in
/// which e has positive probability; (0, 0) when that set is empty.
std::pair<Rational, Rational> supinf_value(const Nplts& m, StateId s, const Event& e,
                                           Budget& budget,
                                           SchedulerMode mode = SchedulerMode::Tree);

/// Shared workspace for one compared pair of states: aligned models, their
/// unfoldings, and caches of event universes, resolution sets, and per-
/// resolution event profiles. Lets the eighteen deciders (and the spectrum
/// driver) reuse the expensive pieces.
class PairContext {
public:
    PairContext(const Nplts& m1, StateId s1, const Nplts& m2, StateId s2, Budget& budget,
                SchedulerMode mode = SchedulerMode::Tree);

    struct Side {
        StateId root;
        TreeModel tree;
        StateFacts facts;
        bool enumerated = false;
        std::vector<Resolution> resolutions;
    };

    const Nplts& model(int side) const { return side ? m2_ : m1_; }
    Side& side(int i) { return i ? b_ : a_; }
    Budget& budget() { return *budget_; }
    SchedulerMode mode() const { return mode_; }

    const EventUniverse& universe(EventKind k);
    /// Profiles of all resolutions of one side against universe(k), in
    /// resolution enumeration order.
    const std::vector<std::vector<Rational>>& profiles(int side, EventKind k);

private:
    PairContext(std::pair<Nplts, Nplts> aligned, StateId s1, StateId s2, Budget& budget,
                SchedulerMode mode);

    Nplts m1_, m2_;
    Side a_, b_;
    Budget* budget_;
    SchedulerMode mode_;
    std::map<EventKind, EventUniverse> universes_;
    std::map<std::pair<int, EventKind>, std::vector<std::vector<Rational>>> profiles_;
};

Verdict decide_trace_equivalence(PairContext& ctx, Semantics sem, Approach app);

Verdict decide_trace_equivalence(const Nplts& m1, StateId s1, const Nplts& m2, StateId s2,
                                 Semantics sem, Approach app, Budget& budget,
                                 SchedulerMode mode = SchedulerMode::Tree);

} // namespace spectra
