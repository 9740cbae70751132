#include "spectra/testing.hpp"

#include <algorithm>
#include <set>

namespace spectra {

const char* testing_variant_name(TestingVariant v) {
    switch (v) {
        case TestingVariant::SupInf: return "pte-supinf";
        case TestingVariant::ForallExists: return "pte-ae";
        case TestingVariant::TbtDis: return "pte-tbt-dis";
        case TestingVariant::Tbt: return "pte-tbt";
        case TestingVariant::TbtSupInf: return "pte-tbt-supinf";
    }
    return "?";
}

InteractionSystem interaction(const Nplts& m, StateId s, const Npt& t) {
    auto [am, at] = align_alphabets(m, t.model);
    InteractionSystem sys;
    sys.comp = parallel_compose(am, s, at, t.root);
    sys.facts.enabled.resize(sys.comp.model.num_states());
    sys.facts.success.assign(sys.comp.model.num_states(), 0);
    for (StateId c = 0; c < sys.comp.model.num_states(); ++c) {
        sys.facts.enabled[c] = sys.comp.model.enabled_actions(c);
        if (sys.comp.parts[c].second == t.omega) sys.facts.success[c] = 1;
    }
    return sys;
}

namespace {

/// prob(SC) in one resolution. Success configurations carry no transitions,
/// so the successful computations are exactly the root paths ending at a
/// success node and the set is prefix-free.
Rational success_probability(const Resolution& z, const StateFacts& facts) {
    Rational sum(0);
    z.visit([&](NodeId n) {
        if (facts.is_success(z.tree->corr(n))) sum += z.tree->path_prob(n);
    });
    return sum;
}

/// Everything the five variants need about one side's interaction with one
/// test: per maximal resolution, the total success probability plus, per
/// universe trace, whether CC(alpha) is nonempty and prob(SCC(alpha)).
struct SideData {
    std::vector<Rational> success;              // [resolution]
    std::vector<std::vector<char>> cc_nonempty; // [resolution][trace]
    std::vector<std::vector<Rational>> scc;     // [resolution][trace]
};

SideData side_data(const InteractionSystem& sys, const std::vector<std::vector<ActionId>>& traces,
                   Budget& budget, const std::vector<Resolution>& maxres) {
    std::vector<NormalizedEvent> completed, along;
    completed.reserve(traces.size());
    along.reserve(traces.size());
    for (const auto& alpha : traces) {
        completed.push_back(normalize(Event{EventKind::CompletedTrace, alpha, {}}));
        along.push_back(normalize(Event{EventKind::SuccessAlong, alpha, {}}));
    }
    SideData d;
    for (const Resolution& z : maxres) {
        d.success.push_back(success_probability(z, sys.facts));
        std::vector<char> cc(traces.size());
        std::vector<Rational> sc(traces.size());
        for (std::size_t i = 0; i < traces.size(); ++i) {
            budget.charge(1);
            // All computations have positive probability, so CC(alpha) is
            // nonempty iff the completed alpha-compatible mass is positive.
            cc[i] = compatible_probability(z, completed[i], sys.facts) > Rational(0);
            sc[i] = compatible_probability(z, along[i], sys.facts);
        }
        d.cc_nonempty.push_back(std::move(cc));
        d.scc.push_back(std::move(sc));
    }
    return d;
}

std::vector<Rational> sorted_unique(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::string trace_to_string(const std::vector<ActionId>& alpha, const Nplts& m) {
    if (alpha.empty()) return "eps";
    std::string out;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (i) out += ' ';
        out += m.action_name(alpha[i]);
    }
    return out;
}

std::string set_to_string(const std::vector<Rational>& v) {
    std::string out = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].str();
    }
    return out + "}";
}

Witness test_witness(TestingVariant variant, std::size_t test_index, const std::string& detail,
                     std::vector<Rational> left, std::vector<Rational> right) {
    Witness w;
    w.kind = testing_variant_name(variant);
    w.left = std::move(left);
    w.right = std::move(right);
    w.lines = {"test " + std::to_string(test_index), detail,
               "left " + set_to_string(w.left), "right " + set_to_string(w.right)};
    return w;
}

/// The one-sided trace-by-trace matching clause: every maximal resolution on
/// side a is matched by one on side b that has a completed alpha-compatible
/// computation whenever a does, with equal success mass, for every trace.
bool tbt_dis_side(const SideData& a, const SideData& b, std::size_t num_traces, Budget& budget,
                  std::size_t* failing_res) {
    for (std::size_t i = 0; i < a.success.size(); ++i) {
        bool matched = false;
        for (std::size_t j = 0; j < b.success.size() && !matched; ++j) {
            budget.charge(1);
            bool ok = true;
            for (std::size_t k = 0; k < num_traces && ok; ++k) {
                if (a.cc_nonempty[i][k] && !b.cc_nonempty[j][k]) ok = false;
                else if (a.scc[i][k] != b.scc[j][k]) ok = false;
            }
            matched = ok;
        }
        if (!matched) {
            if (failing_res) *failing_res = i;
            return false;
        }
    }
    return true;
}

} // namespace

std::pair<Rational, Rational> success_extrema(const Nplts& m, StateId s, const Npt& t,
                                              Budget& budget, SchedulerMode mode) {
    InteractionSystem sys = interaction(m, s, t);
    TreeModel tree(sys.comp.model, sys.comp.root);
    auto maxres = enumerate_max_resolutions(tree, budget, mode);
    Rational sup(0), inf(1);
    bool first = true;
    for (const Resolution& z : maxres) {
        Rational p = success_probability(z, sys.facts);
        if (first || p > sup) sup = p;
        if (first || p < inf) inf = p;
        first = false;
    }
    if (first) return {Rational(0), Rational(0)};
    return {sup, inf};
}

Verdict decide_testing_equivalence(const Nplts& m1, StateId s1, const Nplts& m2, StateId s2,
                                   TestingVariant variant, const TestFamily& family,
                                   Budget& budget, SchedulerMode mode) {
    // An empty family distinguishes nothing: the verdict is vacuously
    // "equivalent" (family-relative, like every testing verdict).
    for (std::size_t ti = 0; ti < family.tests.size(); ++ti) {
        const Npt& t = family.tests[ti];
        InteractionSystem a = interaction(m1, s1, t);
        InteractionSystem b = interaction(m2, s2, t);
        TreeModel ta(a.comp.model, a.comp.root);
        TreeModel tb(b.comp.model, b.comp.root);
        auto maxa = enumerate_max_resolutions(ta, budget, mode);
        auto maxb = enumerate_max_resolutions(tb, budget, mode);

        if (variant == TestingVariant::SupInf || variant == TestingVariant::ForallExists) {
            std::vector<Rational> pa, pb;
            for (const Resolution& z : maxa) pa.push_back(success_probability(z, a.facts));
            for (const Resolution& z : maxb) pb.push_back(success_probability(z, b.facts));
            if (variant == TestingVariant::SupInf) {
                Rational supa = *std::max_element(pa.begin(), pa.end());
                Rational infa = *std::min_element(pa.begin(), pa.end());
                Rational supb = *std::max_element(pb.begin(), pb.end());
                Rational infb = *std::min_element(pb.begin(), pb.end());
                if (supa != supb || infa != infb)
                    return Verdict::distinguished(test_witness(variant, ti, "success extrema differ",
                                                               {supa, infa}, {supb, infb}));
            } else {
                auto ua = sorted_unique(pa), ub = sorted_unique(pb);
                if (ua != ub)
                    return Verdict::distinguished(test_witness(
                        variant, ti, "achievable success probabilities differ", ua, ub));
            }
            continue;
        }

        // Trace-by-trace variants need per-trace data over the union of the
        // traces readable in either interaction system; traces outside carry
        // no completed computations and success mass 0 on both sides.
        EventUniverse traces_u = event_universe(a.comp.model, a.comp.root, b.comp.model,
                                                b.comp.root, EventKind::Trace, budget);
        std::vector<std::vector<ActionId>> traces;
        for (const Event& e : traces_u.events()) traces.push_back(e.trace);
        SideData da = side_data(a, traces, budget, maxa);
        SideData db = side_data(b, traces, budget, maxb);

        if (variant == TestingVariant::TbtDis) {
            std::size_t bad = 0;
            if (!tbt_dis_side(da, db, traces.size(), budget, &bad))
                return Verdict::distinguished(test_witness(
                    variant, ti, "left resolution " + std::to_string(bad) + " unmatched",
                    da.success, db.success));
            if (!tbt_dis_side(db, da, traces.size(), budget, &bad))
                return Verdict::distinguished(test_witness(
                    variant, ti, "right resolution " + std::to_string(bad) + " unmatched",
                    da.success, db.success));
            continue;
        }

        for (std::size_t k = 0; k < traces.size(); ++k) {
            // Domain: maximal resolutions whose completed alpha-compatible
            // computation set is nonempty.
            std::vector<Rational> va, vb;
            for (std::size_t i = 0; i < da.success.size(); ++i)
                if (da.cc_nonempty[i][k]) va.push_back(da.scc[i][k]);
            for (std::size_t j = 0; j < db.success.size(); ++j)
                if (db.cc_nonempty[j][k]) vb.push_back(db.scc[j][k]);
            std::string where = "trace " + trace_to_string(traces[k], a.comp.model);
            if (variant == TestingVariant::Tbt) {
                auto ua = sorted_unique(va), ub = sorted_unique(vb);
                if (ua != ub)
                    return Verdict::distinguished(test_witness(
                        variant, ti, where + ": success-along-trace value sets differ", ua, ub));
            } else { // TbtSupInf
                if (va.empty() != vb.empty())
                    return Verdict::distinguished(test_witness(
                        variant, ti, where + ": completed-compatible resolutions on one side only",
                        sorted_unique(va), sorted_unique(vb)));
                if (va.empty()) continue;
                Rational supa = *std::max_element(va.begin(), va.end());
                Rational infa = *std::min_element(va.begin(), va.end());
                Rational supb = *std::max_element(vb.begin(), vb.end());
                Rational infb = *std::min_element(vb.begin(), vb.end());
                if (supa != supb || infa != infb)
                    return Verdict::distinguished(test_witness(
                        variant, ti, where + ": success-along-trace extrema differ", {supa, infa},
                        {supb, infb}));
            }
        }
    }
    return Verdict::equal();
}

namespace {

struct TreeDesc {
    bool omega = false;
    unsigned depth = 0;
    // (action, distribution over registry indices), canonically sorted.
    std::vector<std::pair<ActionId, std::vector<std::pair<std::size_t, Rational>>>> trans;
};

void emit_states(const std::vector<TreeDesc>& reg, std::size_t k, NpltsBuilder& b,
                 const TestGenConfig& cfg, std::vector<char>& seen) {
    if (seen[k]) return;
    seen[k] = 1;
    std::string name = reg[k].omega ? "omega" : "t" + std::to_string(k);
    b.declare_state(name);
    for (const auto& [a, dist] : reg[k].trans) {
        std::vector<std::pair<std::string, Rational>> d;
        for (const auto& [child, p] : dist) {
            emit_states(reg, child, b, cfg, seen);
            d.emplace_back(reg[child].omega ? "omega" : "t" + std::to_string(child), p);
        }
        b.add_transition(name, cfg.alphabet[a], d);
    }
}

Npt to_npt(const std::vector<TreeDesc>& reg, std::size_t k, const TestGenConfig& cfg) {
    NpltsBuilder b("test" + std::to_string(k));
    for (const auto& a : cfg.alphabet) b.declare_action(a);
    b.declare_state("omega");
    std::vector<char> seen(reg.size(), 0);
    emit_states(reg, k, b, cfg, seen);
    Npt t;
    t.model = std::move(b).build();
    t.omega = *t.model.find_state("omega");
    t.root = reg[k].omega ? t.omega : *t.model.find_state("t" + std::to_string(k));
    return t;
}

} // namespace

TestFamily generate_tests(const TestGenConfig& cfg, Budget& budget) {
    if (cfg.alphabet.empty() || cfg.alphabet.size() > kMaxAlphabet)
        throw Error(ErrorCode::ParseError, "test alphabet must have between 1 and 31 actions");
    std::vector<TreeDesc> reg;
    reg.push_back(TreeDesc{true, 0, {}});  // the trivial test: omega itself
    reg.push_back(TreeDesc{false, 0, {}}); // deadlocked leaf

    std::vector<Rational> pair_probs;
    for (const Rational& p : cfg.grid)
        if (p > Rational(0) && p < Rational(1)) pair_probs.push_back(p);
    std::sort(pair_probs.begin(), pair_probs.end());
    pair_probs.erase(std::unique(pair_probs.begin(), pair_probs.end()), pair_probs.end());

    for (unsigned d = 1; d <= cfg.max_depth; ++d) {
        std::size_t num_children = reg.size();
        // Candidate (action, distribution) pairs over all shallower trees.
        std::vector<std::pair<ActionId, std::vector<std::pair<std::size_t, Rational>>>> cand;
        for (ActionId a = 0; a < cfg.alphabet.size(); ++a) {
            for (std::size_t i = 0; i < num_children; ++i)
                cand.push_back({a, {{i, Rational(1)}}});
            for (std::size_t i = 0; i < num_children; ++i)
                for (std::size_t j = i + 1; j < num_children; ++j)
                    for (const Rational& p : pair_probs)
                        cand.push_back({a, {{i, p}, {j, Rational(1) - p}}});
        }
        auto max_child_depth = [&](const std::vector<std::size_t>& picked) {
            unsigned m = 0;
            for (std::size_t c : picked)
                for (const auto& [child, p] : cand[c].second) m = std::max(m, reg[child].depth);
            return m;
        };
        std::vector<std::size_t> picked;
        auto rec = [&](auto&& self, std::size_t from) -> void {
            if (!picked.empty() && max_child_depth(picked) == d - 1) {
                budget.charge(1, ErrorCode::FamilyTooLarge);
                TreeDesc t;
                t.depth = d;
                for (std::size_t c : picked) t.trans.push_back(cand[c]);
                reg.push_back(std::move(t));
            }
            if (picked.size() == cfg.max_branching) return;
            for (std::size_t c = from; c < cand.size(); ++c) {
                picked.push_back(c);
                self(self, c + 1);
                picked.pop_back();
            }
        };
        rec(rec, 0);
    }

    TestFamily fam;
    for (std::size_t k = 0; k < reg.size(); ++k) fam.tests.push_back(to_npt(reg, k, cfg));
    fam.provenance = "generated: depth<=" + std::to_string(cfg.max_depth) + ", branching<=" +
                     std::to_string(cfg.max_branching) + ", support<=2, " +
                     std::to_string(fam.tests.size()) + " tests";
    return fam;
}

} // namespace spectra
