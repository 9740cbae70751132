#include "spectra/spectrum.hpp"

#include <algorithm>
#include <random>

namespace spectra {

namespace {

constexpr const char* kEquivNames[kNumEquivalences] = {
    "ptr-dis",  "ptr",  "ptr-supinf",  "pctr-dis", "pctr", "pctr-supinf",
    "pf-dis",   "pf",   "pf-supinf",   "pftr-dis", "pftr", "pftr-supinf",
    "pr-dis",   "pr",   "pr-supinf",   "prtr-dis", "prtr", "prtr-supinf",
    "pte-supinf", "pte-ae", "pte-tbt-dis", "pte-tbt", "pte-tbt-supinf",
    "pb-dis",   "pb",   "pb-supinf",
};

} // namespace

const char* equiv_name(EquivalenceId id) { return kEquivNames[static_cast<int>(id)]; }

std::optional<EquivalenceId> equiv_from_name(const std::string& name) {
    for (int i = 0; i < kNumEquivalences; ++i)
        if (name == kEquivNames[i]) return static_cast<EquivalenceId>(i);
    return std::nullopt;
}

bool is_testing(EquivalenceId id) {
    int i = static_cast<int>(id);
    return i >= static_cast<int>(EquivalenceId::PteSupInf) &&
           i <= static_cast<int>(EquivalenceId::PteTbtSupInf);
}

bool is_bisim(EquivalenceId id) {
    return static_cast<int>(id) >= static_cast<int>(EquivalenceId::PbDis);
}

bool is_trace(EquivalenceId id) {
    return static_cast<int>(id) < static_cast<int>(EquivalenceId::PteSupInf);
}

std::pair<Semantics, Approach> trace_parts(EquivalenceId id) {
    int i = static_cast<int>(id);
    static constexpr Semantics sems[6] = {Semantics::Tr, Semantics::CTr, Semantics::F,
                                          Semantics::FTr, Semantics::R, Semantics::RTr};
    static constexpr Approach apps[3] = {Approach::Dis, Approach::Single, Approach::SupInf};
    return {sems[i / 3], apps[i % 3]};
}

namespace {

TestingVariant testing_variant(EquivalenceId id) {
    switch (id) {
        case EquivalenceId::PteSupInf: return TestingVariant::SupInf;
        case EquivalenceId::PteAe: return TestingVariant::ForallExists;
        case EquivalenceId::PteTbtDis: return TestingVariant::TbtDis;
        case EquivalenceId::PteTbt: return TestingVariant::Tbt;
        default: return TestingVariant::TbtSupInf;
    }
}

BisimVariant bisim_variant(EquivalenceId id) {
    switch (id) {
        case EquivalenceId::PbDis: return BisimVariant::Dis;
        case EquivalenceId::Pb: return BisimVariant::Group;
        default: return BisimVariant::SupInf;
    }
}

Verdict decide_one(EquivalenceId id, const Nplts& m1, StateId s1, const Nplts& m2, StateId s2,
                   const TestFamily& family, Budget& budget, SchedulerMode mode,
                   PairContext* shared) {
    if (is_trace(id)) {
        auto [sem, app] = trace_parts(id);
        if (shared) return decide_trace_equivalence(*shared, sem, app);
        return decide_trace_equivalence(m1, s1, m2, s2, sem, app, budget, mode);
    }
    if (is_testing(id))
        return decide_testing_equivalence(m1, s1, m2, s2, testing_variant(id), family, budget,
                                          mode);
    return decide_bisimilarity(m1, s1, m2, s2, bisim_variant(id), budget).verdict;
}

} // namespace

Verdict decide_equivalence(EquivalenceId id, const Nplts& m1, StateId s1, const Nplts& m2,
                           StateId s2, const TestFamily& family, Budget& budget,
                           SchedulerMode mode) {
    return decide_one(id, m1, s1, m2, s2, family, budget, mode, nullptr);
}

EvalResult evaluate_all(const Nplts& m1, StateId s1, const Nplts& m2, StateId s2,
                        const TestFamily& family, std::int64_t budget_limit, SchedulerMode mode) {
    EvalResult r;
    ModelClass c1 = m1.classify(), c2 = m2.classify();
    r.pair_class.fully_nondeterministic =
        c1.fully_nondeterministic && c2.fully_nondeterministic;
    r.pair_class.fully_probabilistic = c1.fully_probabilistic && c2.fully_probabilistic;
    r.pair_class.depth = std::max(c1.depth, c2.depth);

    // The eighteen trace deciders share one context (and one budget) so
    // universes, resolutions, and profiles are computed once.
    Budget trace_budget(budget_limit);
    std::optional<PairContext> ctx;
    try {
        ctx.emplace(m1, s1, m2, s2, trace_budget, mode);
    } catch (const Error&) {
        ctx.reset();
    }

    for (int i = 0; i < kNumEquivalences; ++i) {
        auto id = static_cast<EquivalenceId>(i);
        EvalOutcome& out = r.outcomes[i];
        try {
            Budget budget(budget_limit);
            Verdict v = decide_one(id, m1, s1, m2, s2, family, is_trace(id) ? trace_budget : budget,
                                   mode, is_trace(id) && ctx ? &*ctx : nullptr);
            out.status = v.equivalent ? EvalOutcome::Status::Equivalent
                                      : EvalOutcome::Status::Distinguished;
            out.witness = std::move(v.witness);
        } catch (const Error& e) {
            if (!e.is_budget()) throw;
            out.status = EvalOutcome::Status::Error;
            out.error = e.what();
        }
    }
    return r;
}

const SpectrumExpectation& spectrum_expectation() {
    static const SpectrumExpectation expectation = [] {
        using E = EquivalenceId;
        SpectrumExpectation x;
        auto edge = [&](E from, E to, const char* thm,
                        EdgeBinding b = EdgeBinding::Binding) {
            x.edges.push_back({from, to, thm, b});
        };
        // dis => single => supinf within each semantics.
        for (int s = 0; s < 6; ++s) {
            auto dis = static_cast<E>(3 * s), single = static_cast<E>(3 * s + 1),
                 sup = static_cast<E>(3 * s + 2);
            edge(dis, single, "Thm. 3.2(1)");
            edge(single, sup, "Thm. 3.2(1)");
        }
        // Readiness/failure coincidences of the dis approach.
        edge(E::PrtrDis, E::PftrDis, "Thm. 3.2(2)");
        edge(E::PftrDis, E::PrtrDis, "Thm. 3.2(2)");
        edge(E::PrDis, E::PfDis, "Thm. 3.2(3)");
        edge(E::PfDis, E::PrDis, "Thm. 3.2(3)");
        // FTr => F => CTr => Tr chains per approach.
        edge(E::PftrDis, E::PfDis, "Thm. 3.2(4)");
        edge(E::PfDis, E::PctrDis, "Thm. 3.2(4)");
        edge(E::PctrDis, E::PtrDis, "Thm. 3.2(4)");
        edge(E::Pftr, E::Pf, "Thm. 3.2(5)");
        edge(E::Pf, E::Pctr, "Thm. 3.2(5)");
        edge(E::Pctr, E::Ptr, "Thm. 3.2(5)");
        edge(E::PftrSupInf, E::PfSupInf, "Thm. 3.2(6)");
        edge(E::PfSupInf, E::PctrSupInf, "Thm. 3.2(6)");
        edge(E::PctrSupInf, E::PtrSupInf, "Thm. 3.2(6)");
        // Testing. Edges whose premise is a family-relative testing verdict
        // bind only when provable per individual test.
        edge(E::PteAe, E::PteSupInf, "Thm. 4.2(1)"); // value sets determine extrema
        edge(E::PteSupInf, E::PteTbtSupInf, "Thm. 4.2(1)", EdgeBinding::NonBinding);
        edge(E::PteAe, E::PteTbtDis, "Thm. 4.2(2)");
        edge(E::PteTbtDis, E::PteAe, "Thm. 4.2(2)"); // SC partitions into the SCC(alpha)
        edge(E::PteTbtDis, E::PteTbt, "Thm. 4.2(2)");
        edge(E::PteTbt, E::PteTbtSupInf, "Thm. 4.2(2)");
        edge(E::PteTbtDis, E::PrtrDis, "Thm. 4.2(3)", EdgeBinding::NonBinding);
        edge(E::Pf, E::PteTbt, "Thm. 4.2(4)");
        edge(E::PteTbt, E::Ptr, "Thm. 4.2(4)", EdgeBinding::NonBinding);
        edge(E::PfSupInf, E::PteTbtSupInf, "Thm. 4.2(5)");
        edge(E::PteTbtSupInf, E::PtrSupInf, "Thm. 4.2(5)", EdgeBinding::NonBinding);
        // Bisimulation.
        edge(E::PbDis, E::Pb, "Thm. 5.2(1)");
        edge(E::Pb, E::PbSupInf, "Thm. 5.2(1)");
        edge(E::PbDis, E::PteTbtDis, "Thm. 5.2(2)");

        // Class-conditional coincidences with sound verdicts on both sides.
        static constexpr const char* sem_tag[2] = {"Thm. 3.1(1)", "Thm. 3.1(2)"};
        static constexpr const char* bis_tag[2] = {"Thm. 5.1(1)", "Thm. 5.1(2)"};
        for (int fp = 0; fp < 2; ++fp) {
            for (int s = 0; s < 6; ++s)
                x.equalities.push_back({fp == 0,
                                        {static_cast<E>(3 * s), static_cast<E>(3 * s + 1),
                                         static_cast<E>(3 * s + 2)},
                                        sem_tag[fp]});
            x.equalities.push_back({fp == 0, {E::PbDis, E::Pb, E::PbSupInf}, bis_tag[fp]});
        }

        x.incomparable = {{E::Pb, E::Ptr}, {E::Pr, E::Pf}, {E::PteSupInf, E::Pf}};
        return x;
    }();
    return expectation;
}

std::vector<Violation> check_consistency(const EvalResult& r,
                                         const SpectrumExpectation& expectation) {
    using St = EvalOutcome::Status;
    std::vector<Violation> out;
    for (const SpectrumEdge& e : expectation.edges) {
        if (e.binding == EdgeBinding::NonBinding) continue;
        const EvalOutcome& from = r.of(e.from);
        const EvalOutcome& to = r.of(e.to);
        if (from.status == St::Error || to.status == St::Error) continue;
        if (from.status == St::Equivalent && to.status == St::Distinguished)
            out.push_back({std::string(equiv_name(e.from)) + "=>" + equiv_name(e.to), e.theorem});
    }
    for (const ClassEquality& q : expectation.equalities) {
        if (q.requires_fnd && !r.pair_class.fully_nondeterministic) continue;
        if (!q.requires_fnd && !r.pair_class.fully_probabilistic) continue;
        std::optional<St> want;
        bool mismatch = false;
        std::string group;
        for (EquivalenceId id : q.ids) {
            if (!group.empty()) group += "=";
            group += equiv_name(id);
            St st = r.of(id).status;
            if (st == St::Error) continue;
            if (!want) want = st;
            else if (*want != st) mismatch = true;
        }
        if (mismatch) out.push_back({group, q.theorem});
    }
    return out;
}

std::string format_report(const std::string& pair_id, const EvalResult& r,
                          const std::vector<Violation>& violations) {
    std::string out = "pair " + pair_id + "\n";
    for (int i = 0; i < kNumEquivalences; ++i) {
        const EvalOutcome& o = r.outcomes[i];
        out += "verdict ";
        out += kEquivNames[i];
        switch (o.status) {
            case EvalOutcome::Status::Equivalent: out += " equivalent"; break;
            case EvalOutcome::Status::Distinguished:
                out += " distinguished";
                if (o.witness) out += " " + o.witness->kind;
                break;
            case EvalOutcome::Status::Error: out += " error budget"; break;
        }
        out += "\n";
    }
    for (const Violation& v : violations) out += "violation " + v.edge + " " + v.theorem + "\n";
    return out;
}

namespace {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    std::uint64_t below(std::uint64_t n) { return n ? eng() % n : 0; }
};

} // namespace

Nplts random_model(const GenConfig& cfg) {
    Rng rng(cfg.seed);
    NpltsBuilder b("gen" + std::to_string(cfg.seed));
    for (const auto& a : cfg.alphabet) b.declare_action(a);
    auto name = [](unsigned i) { return "s" + std::to_string(i); };
    for (unsigned i = 0; i < cfg.states; ++i) b.declare_state(name(i));

    std::vector<Rational> grid01;
    for (const Rational& p : cfg.grid)
        if (p > Rational(0) && p < Rational(1)) grid01.push_back(p);

    for (unsigned i = 0; i < cfg.states; ++i) {
        unsigned avail = cfg.states - 1 - i; // acyclicity: only later states are targets
        if (avail == 0) continue;
        unsigned maxdeg = cfg.max_out_degree;
        if (cfg.cls == ClassConstraint::FullyProbabilistic) maxdeg = std::min(maxdeg, 1u);
        unsigned deg = static_cast<unsigned>(rng.below(maxdeg + 1));
        std::vector<std::string> used;
        for (unsigned t = 0; t < deg; ++t) {
            ActionId a = static_cast<ActionId>(rng.below(cfg.alphabet.size()));
            unsigned maxsup =
                cfg.cls == ClassConstraint::FullyNondeterministic
                    ? 1u
                    : std::min(cfg.max_support, avail);
            unsigned sup = 1 + static_cast<unsigned>(rng.below(maxsup));
            // Distinct targets among the later states.
            std::vector<unsigned> targets;
            for (unsigned tries = 0; targets.size() < sup && tries < 64; ++tries) {
                unsigned cand = i + 1 + static_cast<unsigned>(rng.below(avail));
                if (std::find(targets.begin(), targets.end(), cand) == targets.end())
                    targets.push_back(cand);
            }
            std::sort(targets.begin(), targets.end());
            sup = static_cast<unsigned>(targets.size());
            // Probabilities from the grid; deterministic uniform fallback.
            std::vector<Rational> probs;
            if (sup == 1) {
                probs = {Rational(1)};
            } else {
                for (unsigned tries = 0; tries < 16 && probs.empty(); ++tries) {
                    std::vector<Rational> draw;
                    Rational sum(0);
                    for (unsigned k = 0; k + 1 < sup && !grid01.empty(); ++k) {
                        Rational p = grid01[rng.below(grid01.size())];
                        draw.push_back(p);
                        sum += p;
                    }
                    if (draw.size() + 1 == sup && sum < Rational(1)) {
                        draw.push_back(Rational(1) - sum);
                        probs = std::move(draw);
                    }
                }
                if (probs.empty())
                    probs.assign(sup, Rational(1, static_cast<std::int64_t>(sup)));
            }
            std::vector<std::pair<std::string, Rational>> dist;
            std::string key = cfg.alphabet[a] + "|";
            for (unsigned k = 0; k < sup; ++k) {
                dist.emplace_back(name(targets[k]), probs[k]);
                key += name(targets[k]) + ":" + probs[k].str() + ",";
            }
            if (std::find(used.begin(), used.end(), key) != used.end()) continue;
            used.push_back(key);
            b.add_transition(name(i), cfg.alphabet[a], dist);
        }
    }
    return std::move(b).build();
}

WitnessSearchResult search_witness(EquivalenceId finer, EquivalenceId coarser,
                                   const GenConfig& cfg, const TestFamily& family,
                                   std::int64_t budget_limit, unsigned attempts) {
    for (unsigned t = 0; t < attempts; ++t) {
        GenConfig c = cfg;
        c.seed = cfg.seed + t;
        Nplts m = random_model(c);
        for (StateId i = 0; i < m.num_states(); ++i)
            for (StateId j = i + 1; j < m.num_states(); ++j) {
                try {
                    Budget bc(budget_limit);
                    if (!decide_one(coarser, m, i, m, j, family, bc, SchedulerMode::Tree, nullptr)
                             .equivalent)
                        continue;
                    Budget bf(budget_limit);
                    if (decide_one(finer, m, i, m, j, family, bf, SchedulerMode::Tree, nullptr)
                            .equivalent)
                        continue;
                } catch (const Error& e) {
                    if (!e.is_budget()) throw;
                    continue;
                }
                std::string left = m.state_name(i), right = m.state_name(j);
                return {std::move(m), std::move(left), std::move(right), c.seed};
            }
    }
    throw Error(ErrorCode::SearchExhausted,
                "no witness found for " + std::string(equiv_name(finer)) + " vs " +
                    equiv_name(coarser) + " in " + std::to_string(attempts) + " models");
}

} // namespace spectra
