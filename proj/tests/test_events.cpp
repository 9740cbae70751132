#include <doctest.h>

#include "spectra/events.hpp"
#include "spectra/parser.hpp"
#include "spectra/spectrum.hpp"

using namespace spectra;

namespace {

struct Fixture {
    Nplts m;
    TreeModel tree;
    StateFacts facts;
    std::vector<Resolution> maxres;
    Budget budget;

    explicit Fixture(const std::string& text, const std::string& root = "s0")
        : m(parse_model(text)), tree(m, *m.find_state(root)), facts(StateFacts::of(m)) {
        maxres = enumerate_max_resolutions(tree, budget);
    }
};

ActionSet set_of(const Nplts& m, std::initializer_list<const char*> names) {
    ActionSet s = 0;
    for (const char* n : names) s |= ActionSet(1) << *m.find_action(n);
    return s;
}

std::vector<ActionId> tr(const Nplts& m, std::initializer_list<const char*> names) {
    std::vector<ActionId> t;
    for (const char* n : names) t.push_back(*m.find_action(n));
    return t;
}

} // namespace

TEST_CASE("empty trace is compatible with everything") {
    Fixture f("nplts m\nalphabet a\ntrans s0 a -> s1:1\n");
    for (const Resolution& z : f.maxres)
        CHECK(compatible_probability(z, Event{EventKind::Trace, {}, {}}, f.facts) == Rational(1));
}

TEST_CASE("decorated events on the half-deadlock coin") {
    // s0 -a-> {s1:1/2, s2:1/2}, s1 deadlocked, s2 -b-> s3
    Fixture f("nplts m\nalphabet a b\ntrans s0 a -> s1:1/2, s2:1/2\ntrans s2 b -> s3:1\n");
    REQUIRE(f.maxres.size() == 1);
    const Resolution& z = f.maxres[0];
    auto a = tr(f.m, {"a"});
    CHECK(compatible_probability(z, Event{EventKind::FailurePair, a, {set_of(f.m, {"b"})}},
                                 f.facts) == Rational(1, 2));
    CHECK(compatible_probability(z, Event{EventKind::ReadyPair, a, {set_of(f.m, {"b"})}},
                                 f.facts) == Rational(1, 2));
    CHECK(compatible_probability(z, Event{EventKind::ReadyPair, a, {0}}, f.facts) ==
          Rational(1, 2));
    CHECK(compatible_probability(z, Event{EventKind::CompletedTrace, a, {}}, f.facts) ==
          Rational(1, 2));
}

TEST_CASE("compatibility reads the model through corr, not the resolution") {
    // In a non-maximal resolution that stops after a, the reached state still
    // has a b-transition in the model, so it neither refuses b nor completes.
    Fixture f("nplts m\nalphabet a b\ntrans s0 a -> s1:1\ntrans s1 b -> s2:1\n");
    Budget budget;
    auto all = enumerate_resolutions(f.tree, budget);
    auto a = tr(f.m, {"a"});
    bool saw_stopped = false;
    for (const Resolution& z : all) {
        if (compatible_probability(z, Event{EventKind::Trace, a, {}}, f.facts) == Rational(0))
            continue;
        if (z.maximal) continue;
        saw_stopped = true;
        CHECK(compatible_probability(z, Event{EventKind::CompletedTrace, a, {}}, f.facts) ==
              Rational(0));
        CHECK(compatible_probability(z, Event{EventKind::FailurePair, a, {set_of(f.m, {"b"})}},
                                     f.facts) == Rational(0));
        CHECK(compatible_probability(z, Event{EventKind::ReadyPair, a, {set_of(f.m, {"b"})}},
                                     f.facts) == Rational(1));
    }
    CHECK(saw_stopped);
}

TEST_CASE("trace universe bounded by depth and readability") {
    Nplts m1 = parse_model("nplts m\nalphabet a b\ntrans s0 a -> s1:1\ntrans s1 b -> s2:1\n");
    Nplts m2 = parse_model("nplts n\nalphabet a b\ntrans s0 a -> s1:1\n");
    auto [a1, a2] = align_alphabets(m1, m2);
    Budget budget;
    EventUniverse u = event_universe(a1, 0, a2, 0, EventKind::Trace, budget);
    CHECK(u.size() == 3); // eps, a, ab
}

TEST_CASE("two deadlocked states: trace universe is {eps}") {
    NpltsBuilder b;
    b.declare_action("a");
    b.declare_state("s0");
    b.declare_state("s1");
    Nplts m = std::move(b).build();
    Budget budget;
    EventUniverse u = event_universe(m, 0, m, 1, EventKind::Trace, budget);
    REQUIRE(u.size() == 1);
    CHECK(u.at(0).trace.empty());
}

TEST_CASE("ready universe draws from occurring enabled sets plus empty") {
    Fixture f("nplts m\nalphabet a b\ntrans s0 a -> s1:1/2, s2:1/2\ntrans s2 b -> s3:1\n");
    Budget budget;
    EventUniverse u = event_universe(f.m, 0, f.m, 0, EventKind::ReadyPair, budget);
    for (const Event& e : u.events()) {
        REQUIRE(e.sets.size() == 1);
        bool occurring = e.sets[0] == 0;
        for (StateId s = 0; s < f.m.num_states(); ++s)
            if (f.m.enabled_actions(s) == e.sets[0]) occurring = true;
        CHECK(occurring);
    }
}

TEST_CASE("profile on the probabilistic chain") {
    Fixture f("nplts m\nalphabet a b\ntrans s0 a -> s1:1/2, s2:1/2\ntrans s1 b -> s3:1\n");
    Budget budget;
    EventUniverse u = event_universe(f.m, 0, f.m, 0, EventKind::Trace, budget);
    REQUIRE(f.maxres.size() == 1);
    auto profile = event_profile(f.maxres[0], u, f.facts);
    REQUIRE(profile.size() == 3);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Event& e = u.at(i);
        if (e.trace.empty()) CHECK(profile[i] == Rational(1));
        else if (e.trace.size() == 1) CHECK(profile[i] == Rational(1));
        else CHECK(profile[i] == Rational(1, 2));
    }
}

TEST_CASE("event algebra invariants on random models") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        GenConfig cfg;
        cfg.states = 5;
        cfg.seed = seed;
        cfg.alphabet = {"a", "b"};
        Nplts m = random_model(cfg);
        TreeModel tree(m, 0);
        StateFacts facts = StateFacts::of(m);
        Budget budget(200'000);
        std::vector<Resolution> maxres;
        try {
            maxres = enumerate_max_resolutions(tree, budget);
        } catch (const Error& e) {
            if (!e.is_budget()) throw;
            continue;
        }
        EventUniverse traces = event_universe(m, 0, m, 0, EventKind::Trace, budget);
        EventUniverse readies = event_universe(m, 0, m, 0, EventKind::ReadyPair, budget);
        ActionSet ambient = m.enabled_somewhere();
        for (const Resolution& z : maxres) {
            for (std::size_t i = 0; i < traces.size(); ++i) {
                const auto& alpha = traces.at(i).trace;
                Rational p = compatible_probability(z, traces.at(i), facts);
                // prefix monotonicity
                for (std::size_t cut = 0; cut < alpha.size(); ++cut) {
                    Event prefix{EventKind::Trace,
                                 {alpha.begin(), alpha.begin() + static_cast<long>(cut)},
                                 {}};
                    CHECK(compatible_probability(z, prefix, facts) >= p);
                }
                // FailurePair(alpha, {}) == Trace(alpha)
                CHECK(compatible_probability(z, Event{EventKind::FailurePair, alpha, {0}},
                                             facts) == p);
                // CompletedTrace(alpha) == FailurePair(alpha, ambient)
                CHECK(compatible_probability(z, Event{EventKind::CompletedTrace, alpha, {}},
                                             facts) ==
                      compatible_probability(z, Event{EventKind::FailurePair, alpha, {ambient}},
                                             facts));
                // ready pairs partition the trace mass
                Rational ready_sum(0);
                for (std::size_t j = 0; j < readies.size(); ++j)
                    if (readies.at(j).trace == alpha)
                        ready_sum += compatible_probability(z, readies.at(j), facts);
                CHECK(ready_sum == p);
                // FailureTrace with empty decorations degrades to Trace
                Event ft{EventKind::FailureTrace, alpha,
                         std::vector<ActionSet>(alpha.size(), 0)};
                CHECK(compatible_probability(z, ft, facts) == p);
            }
        }
    }
}

TEST_CASE("supinf DP matches exhaustive enumeration") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        GenConfig cfg;
        cfg.states = 5;
        cfg.seed = seed;
        cfg.alphabet = {"a", "b"};
        Nplts m = random_model(cfg);
        TreeModel tree(m, 0);
        StateFacts facts = StateFacts::of(m);
        try {
            Budget budget(200'000);
            for (EventKind kind :
                 {EventKind::Trace, EventKind::CompletedTrace, EventKind::FailurePair,
                  EventKind::ReadyPair, EventKind::FailureTrace, EventKind::ReadyTrace}) {
                EventUniverse u = event_universe(m, 0, m, 0, kind, budget);
                for (std::size_t i = 0; i < u.size(); ++i) {
                    auto dp = supinf_value_dp(tree, u.normalized(i), facts);
                    auto ex = supinf_value_exhaustive(tree, u.normalized(i), facts, budget);
                    CHECK(dp == ex);
                }
            }
        } catch (const Error& e) {
            if (!e.is_budget()) throw;
        }
    }
}

TEST_CASE("supinf examples") {
    // {0,1/2,1} example: s with a-transitions to Dirac(t) and {t:1/2,u:1/2},
    // t -b-> v, u deadlocked; e = Trace(ab).
    Nplts m = parse_model("nplts m\nalphabet a b\n"
                          "trans s a -> t:1\ntrans s a -> t:1/2, u:1/2\ntrans t b -> v:1\n");
    TreeModel tree(m, *m.find_state("s"));
    StateFacts facts = StateFacts::of(m);
    Budget budget;
    auto ab = tr(m, {"a", "b"});
    NormalizedEvent e = normalize(Event{EventKind::Trace, ab, {}});
    // Both a-options realize ab when t continues with b, so the extrema
    // range over the positive values {1/2, 1}; premature stops are out.
    auto [sup, inf] = supinf_value_dp(tree, e, facts);
    CHECK(sup == Rational(1));
    CHECK(inf == Rational(1, 2));

    // empty trace: (1, 1)
    NormalizedEvent eps = normalize(Event{EventKind::Trace, {}, {}});
    CHECK(supinf_value_dp(tree, eps, facts) ==
          std::pair<Rational, Rational>(Rational(1), Rational(1)));

    // unreadable trace: value 0 on every member of Res_c
    auto c_ev = normalize(Event{EventKind::Trace, tr(m, {"b"}), {}});
    auto [csup, cinf] = supinf_value_dp(tree, c_ev, facts);
    CHECK(csup == Rational(0));
    CHECK(cinf == Rational(0));
}
