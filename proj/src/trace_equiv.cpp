#include "spectra/trace_equiv.hpp"

#include <algorithm>
#include <set>

namespace spectra {

const char* semantics_name(Semantics s) {
    switch (s) {
        case Semantics::Tr: return "tr";
        case Semantics::CTr: return "ctr";
        case Semantics::F: return "f";
        case Semantics::FTr: return "ftr";
        case Semantics::R: return "r";
        case Semantics::RTr: return "rtr";
    }
    return "?";
}

const char* approach_name(Approach a) {
    switch (a) {
        case Approach::Dis: return "dis";
        case Approach::Single: return "single";
        case Approach::SupInf: return "supinf";
    }
    return "?";
}

std::vector<EventKind> semantics_kinds(Semantics s) {
    switch (s) {
        case Semantics::Tr: return {EventKind::Trace};
        case Semantics::CTr: return {EventKind::Trace, EventKind::CompletedTrace};
        case Semantics::F: return {EventKind::FailurePair};
        case Semantics::FTr: return {EventKind::FailureTrace};
        case Semantics::R: return {EventKind::ReadyPair};
        case Semantics::RTr: return {EventKind::ReadyTrace};
    }
    return {};
}

namespace {

std::vector<Rational> sorted_unique(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::string set_to_string(const std::vector<Rational>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].str();
    }
    return out + "}";
}

} // namespace

std::vector<Rational> achievable_value_set(const Nplts& m, StateId s, const Event& e,
                                           ResDomain domain, Budget& budget, SchedulerMode mode) {
    TreeModel tree(m, s);
    StateFacts facts = StateFacts::of(m);
    NormalizedEvent ne = normalize(e);
    std::vector<Resolution> rs = domain == ResDomain::Res
                                     ? enumerate_resolutions(tree, budget, mode)
                                     : restrict_res_alpha(tree, e.trace, budget, mode);
    std::vector<Rational> out;
    for (const Resolution& z : rs) out.push_back(compatible_probability(z, ne, facts));
    return sorted_unique(out);
}

std::pair<Rational, Rational> supinf_value(const Nplts& m, StateId s, const Event& e,
                                           Budget& budget, SchedulerMode mode) {
    TreeModel tree(m, s);
    StateFacts facts = StateFacts::of(m);
    NormalizedEvent ne = normalize(e);
    if (mode == SchedulerMode::Tree) return supinf_value_dp(tree, ne, facts);
    return supinf_value_exhaustive(tree, ne, facts, budget, mode);
}

PairContext::PairContext(const Nplts& m1, StateId s1, const Nplts& m2, StateId s2, Budget& budget,
                         SchedulerMode mode)
    : PairContext(align_alphabets(m1, m2), s1, s2, budget, mode) {}

PairContext::PairContext(std::pair<Nplts, Nplts> aligned, StateId s1, StateId s2, Budget& budget,
                         SchedulerMode mode)
    : m1_(std::move(aligned.first)), m2_(std::move(aligned.second)),
      a_{s1, TreeModel(m1_, s1), StateFacts::of(m1_), false, {}},
      b_{s2, TreeModel(m2_, s2), StateFacts::of(m2_), false, {}}, budget_(&budget), mode_(mode) {}

const EventUniverse& PairContext::universe(EventKind k) {
    auto it = universes_.find(k);
    if (it == universes_.end())
        it = universes_.emplace(k, event_universe(m1_, a_.root, m2_, b_.root, k, *budget_)).first;
    return it->second;
}

const std::vector<std::vector<Rational>>& PairContext::profiles(int i, EventKind k) {
    auto key = std::make_pair(i, k);
    auto it = profiles_.find(key);
    if (it == profiles_.end()) {
        Side& sd = side(i);
        if (!sd.enumerated) {
            sd.resolutions = enumerate_resolutions(sd.tree, *budget_, mode_);
            sd.enumerated = true;
        }
        const EventUniverse& u = universe(k);
        std::vector<std::vector<Rational>> ps;
        ps.reserve(sd.resolutions.size());
        for (const Resolution& z : sd.resolutions) {
            budget_->charge(1);
            ps.push_back(event_profile(z, u, sd.facts));
        }
        it = profiles_.emplace(key, std::move(ps)).first;
    }
    return it->second;
}

namespace {

Verdict decide_dis(PairContext& ctx, EventKind kind) {
    const auto& pa = ctx.profiles(0, kind);
    const auto& pb = ctx.profiles(1, kind);
    std::set<std::vector<Rational>> sa(pa.begin(), pa.end()), sb(pb.begin(), pb.end());
    if (sa == sb) return Verdict::equal();
    const EventUniverse& u = ctx.universe(kind);
    // Deterministic witness: the lexicographically least unmatched profile.
    for (int dir = 0; dir < 2; ++dir) {
        const auto& mine = dir ? sb : sa;
        const auto& other = dir ? sa : sb;
        for (const auto& prof : mine) {
            if (other.count(prof)) continue;
            Witness w;
            w.kind = "profile";
            w.left = prof;
            w.lines = {std::string("side ") + (dir ? "right" : "left"),
                       "unmatched resolution profile over " + std::to_string(u.size()) +
                           " events"};
            for (std::size_t i = 0; i < prof.size(); ++i)
                if (!(prof[i] == Rational(0)))
                    w.lines.push_back(event_to_string(u.at(i), ctx.model(0)) + " = " +
                                      prof[i].str());
            return Verdict::distinguished(std::move(w));
        }
    }
    return Verdict::equal(); // unreachable
}

Verdict decide_single(PairContext& ctx, EventKind kind) {
    const EventUniverse& u = ctx.universe(kind);
    const auto& pa = ctx.profiles(0, kind);
    const auto& pb = ctx.profiles(1, kind);
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::vector<Rational> va, vb;
        va.reserve(pa.size());
        vb.reserve(pb.size());
        for (const auto& prof : pa) va.push_back(prof[i]);
        for (const auto& prof : pb) vb.push_back(prof[i]);
        auto ua = sorted_unique(std::move(va)), ub = sorted_unique(std::move(vb));
        if (ua != ub) {
            Witness w;
            w.kind = "value-set";
            w.event = u.at(i);
            w.left = ua;
            w.right = ub;
            w.lines = {"event " + event_to_string(u.at(i), ctx.model(0)),
                       "left " + set_to_string(ua), "right " + set_to_string(ub)};
            return Verdict::distinguished(std::move(w));
        }
    }
    return Verdict::equal();
}

Verdict decide_supinf(PairContext& ctx, EventKind kind) {
    const EventUniverse& u = ctx.universe(kind);
    for (std::size_t i = 0; i < u.size(); ++i) {
        ctx.budget().charge(1);
        const NormalizedEvent& ne = u.normalized(i);
        std::pair<Rational, Rational> va, vb;
        if (ctx.mode() == SchedulerMode::Tree) {
            va = supinf_value_dp(ctx.side(0).tree, ne, ctx.side(0).facts);
            vb = supinf_value_dp(ctx.side(1).tree, ne, ctx.side(1).facts);
        } else {
            va = supinf_value_exhaustive(ctx.side(0).tree, ne, ctx.side(0).facts, ctx.budget(),
                                         ctx.mode());
            vb = supinf_value_exhaustive(ctx.side(1).tree, ne, ctx.side(1).facts, ctx.budget(),
                                         ctx.mode());
        }
        if (va != vb) {
            Witness w;
            w.kind = "supinf";
            w.event = u.at(i);
            w.left = {va.first, va.second};
            w.right = {vb.first, vb.second};
            w.lines = {"event " + event_to_string(u.at(i), ctx.model(0)),
                       "left sup " + va.first.str() + " inf " + va.second.str(),
                       "right sup " + vb.first.str() + " inf " + vb.second.str()};
            return Verdict::distinguished(std::move(w));
        }
    }
    return Verdict::equal();
}

} // namespace

Verdict decide_trace_equivalence(PairContext& ctx, Semantics sem, Approach app) {
    for (EventKind kind : semantics_kinds(sem)) {
        Verdict v;
        switch (app) {
            case Approach::Dis: v = decide_dis(ctx, kind); break;
            case Approach::Single: v = decide_single(ctx, kind); break;
            case Approach::SupInf: v = decide_supinf(ctx, kind); break;
        }
        if (!v.equivalent) return v;
    }
    return Verdict::equal();
}

Verdict decide_trace_equivalence(const Nplts& m1, StateId s1, const Nplts& m2, StateId s2,
                                 Semantics sem, Approach app, Budget& budget, SchedulerMode mode) {
    PairContext ctx(m1, s1, m2, s2, budget, mode);
    return decide_trace_equivalence(ctx, sem, app);
}

} // namespace spectra
