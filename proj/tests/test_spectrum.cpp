#include <doctest.h>

#include "spectra/parser.hpp"
#include "spectra/spectrum.hpp"

using namespace spectra;

namespace {

TestFamily default_family() {
    Budget budget;
    TestGenConfig cfg;
    cfg.alphabet = {"a", "b"};
    return generate_tests(cfg, budget);
}

} // namespace

TEST_CASE("equivalence names round-trip and keep the report order") {
    for (int i = 0; i < kNumEquivalences; ++i) {
        auto id = static_cast<EquivalenceId>(i);
        auto back = equiv_from_name(equiv_name(id));
        REQUIRE(back.has_value());
        CHECK(*back == id);
    }
    CHECK(std::string(equiv_name(EquivalenceId::PtrDis)) == "ptr-dis");
    CHECK(std::string(equiv_name(EquivalenceId::Pb)) == "pb");
    CHECK(std::string(equiv_name(EquivalenceId::PteTbtSupInf)) == "pte-tbt-supinf");
    CHECK(!equiv_from_name("nope").has_value());
    int traces = 0, testings = 0, bisims = 0;
    for (int i = 0; i < kNumEquivalences; ++i) {
        auto id = static_cast<EquivalenceId>(i);
        traces += is_trace(id);
        testings += is_testing(id);
        bisims += is_bisim(id);
        CHECK(is_trace(id) + is_testing(id) + is_bisim(id) == 1);
    }
    CHECK(traces == 18);
    CHECK(testings == 5);
    CHECK(bisims == 3);
}

TEST_CASE("identical states are equivalent under all 26 equivalences") {
    Nplts m = parse_model("nplts m\nalphabet a b\n"
                          "trans s a -> t:1/2, u:1/2\ntrans s b -> t:1\ntrans t b -> v:1\n");
    StateId s = *m.find_state("s");
    EvalResult r = evaluate_all(m, s, m, s, default_family(), 2'000'000);
    for (int i = 0; i < kNumEquivalences; ++i)
        CHECK(r.outcomes[static_cast<std::size_t>(i)].status == EvalOutcome::Status::Equivalent);
    CHECK(check_consistency(r).empty());
}

TEST_CASE("the expectation table is well-formed") {
    const SpectrumExpectation& e = spectrum_expectation();
    CHECK(!e.edges.empty());
    for (const SpectrumEdge& edge : e.edges) {
        CHECK(edge.from != edge.to);
        CHECK(edge.theorem != nullptr);
    }
    for (const ClassEquality& eq : e.equalities) CHECK(eq.ids.size() >= 2);
    CHECK(e.incomparable.size() == 3);
}

TEST_CASE("a fabricated verdict vector trips consistency checking") {
    // bisimilar but trace-distinguished is impossible
    Nplts m = parse_model("nplts m\nalphabet a\ntrans s a -> t:1\n");
    StateId s = *m.find_state("s");
    EvalResult r = evaluate_all(m, s, m, s, default_family(), 2'000'000);
    r.outcomes[static_cast<int>(EquivalenceId::Ptr)].status =
        EvalOutcome::Status::Distinguished;
    auto violations = check_consistency(r);
    CHECK(!violations.empty());
}

TEST_CASE("errored outcomes are skipped by consistency checking") {
    Nplts m = parse_model("nplts m\nalphabet a\ntrans s a -> t:1\n");
    StateId s = *m.find_state("s");
    EvalResult r = evaluate_all(m, s, m, s, default_family(), 2'000'000);
    r.outcomes[static_cast<int>(EquivalenceId::Ptr)].status = EvalOutcome::Status::Error;
    r.outcomes[static_cast<int>(EquivalenceId::Ptr)].error = "budget";
    CHECK(check_consistency(r).empty());
}

TEST_CASE("random models are seeded, deterministic, and class-constrained") {
    GenConfig cfg;
    cfg.states = 6;
    cfg.seed = 42;
    Nplts m1 = random_model(cfg);
    Nplts m2 = random_model(cfg);
    CHECK(serialize_model(m1) == serialize_model(m2));
    cfg.seed = 43;
    CHECK(serialize_model(random_model(cfg)) != serialize_model(m1));

    cfg.cls = ClassConstraint::FullyNondeterministic;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        cfg.seed = seed;
        CHECK(random_model(cfg).classify().fully_nondeterministic);
    }
    cfg.cls = ClassConstraint::FullyProbabilistic;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        cfg.seed = seed;
        CHECK(random_model(cfg).classify().fully_probabilistic);
    }
}

TEST_CASE("random pairs never violate the binding spectrum") {
    TestFamily fam = default_family();
    for (std::uint64_t seed = 800; seed < 830; ++seed) {
        GenConfig cfg;
        cfg.states = 4;
        cfg.seed = seed;
        Nplts m1 = random_model(cfg);
        cfg.seed = seed + 17000;
        Nplts m2 = random_model(cfg);
        EvalResult r = evaluate_all(m1, 0, m2, 0, fam, 300'000);
        auto violations = check_consistency(r);
        for (const Violation& v : violations) MESSAGE(v.edge, " (", v.theorem, ")");
        CHECK(violations.empty());
    }
}

TEST_CASE("reports are deterministic") {
    Nplts m1 = parse_model("nplts m\nalphabet a b\ntrans s a -> t:1/2, u:1/2\ntrans t b -> v:1\n");
    Nplts m2 = parse_model("nplts n\nalphabet a b\ntrans s a -> t:1\ntrans t b -> v:1\n");
    TestFamily fam = default_family();
    EvalResult r1 = evaluate_all(m1, 0, m2, 0, fam, 2'000'000);
    EvalResult r2 = evaluate_all(m1, 0, m2, 0, fam, 2'000'000);
    std::string rep1 = format_report("pair0", r1, check_consistency(r1));
    std::string rep2 = format_report("pair0", r2, check_consistency(r2));
    CHECK(rep1 == rep2);
    CHECK(rep1.find("pair pair0") != std::string::npos);
    CHECK(rep1.find("verdict ptr-dis") != std::string::npos);
    CHECK(rep1.find("verdict pb-supinf") != std::string::npos);
}

TEST_CASE("witness search finds a trace/failure separator") {
    GenConfig cfg;
    cfg.states = 5;
    cfg.alphabet = {"a", "b"};
    cfg.seed = 1;
    TestFamily fam = default_family();
    WitnessSearchResult w =
        search_witness(EquivalenceId::Pf, EquivalenceId::Ptr, cfg, fam, 300'000, 400);
    StateId l = *w.model.find_state(w.left), r = *w.model.find_state(w.right);
    Budget budget;
    CHECK(decide_equivalence(EquivalenceId::Ptr, w.model, l, w.model, r, fam, budget)
              .equivalent);
    CHECK(!decide_equivalence(EquivalenceId::Pf, w.model, l, w.model, r, fam, budget)
               .equivalent);
}

TEST_CASE("witness search reports exhaustion") {
    GenConfig cfg;
    cfg.states = 2;
    cfg.seed = 5;
    TestFamily fam;
    // ptr finer than itself never separates
    CHECK_THROWS_AS(search_witness(EquivalenceId::Ptr, EquivalenceId::Ptr, cfg, fam,
                                   2'000'000, 5),
                    Error);
}
