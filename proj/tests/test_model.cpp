#include <doctest.h>

#include "spectra/model.hpp"

using namespace spectra;

namespace {

Nplts build(const std::vector<std::tuple<std::string, std::string,
                                         std::vector<std::pair<std::string, Rational>>>>& trans,
            const std::vector<std::string>& alphabet = {"a", "b"}) {
    NpltsBuilder b;
    for (const auto& a : alphabet) b.declare_action(a);
    for (const auto& [src, label, dist] : trans) b.add_transition(src, label, dist);
    return std::move(b).build();
}

} // namespace

TEST_CASE("single state, no transitions: valid, depth 0") {
    NpltsBuilder b;
    b.declare_action("a");
    b.declare_state("s0");
    Nplts m = std::move(b).build();
    CHECK(m.num_states() == 1);
    CHECK(m.classify().depth == 0);
    CHECK(m.deadlocked(0));
}

TEST_CASE("distribution sum error carries the right code") {
    NpltsBuilder b;
    b.declare_action("a");
    b.add_transition("s0", "a", {{"s1", Rational(1, 2)}, {"s2", Rational(1, 3)}});
    try {
        std::move(b).build();
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DistributionNotNormalized);
    }
}

TEST_CASE("self-loop is a cycle") {
    NpltsBuilder b;
    b.declare_action("a");
    b.add_transition("s0", "a", {{"s0", Rational(1)}});
    try {
        std::move(b).build();
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::CyclicModel);
    }
}

TEST_CASE("empty model rejected") {
    NpltsBuilder b;
    try {
        std::move(b).build();
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyModel);
    }
}

TEST_CASE("classification") {
    Nplts fnd = build({{"s0", "a", {{"s1", Rational(1)}}}, {"s0", "b", {{"s2", Rational(1)}}}});
    CHECK(fnd.classify().fully_nondeterministic);
    CHECK(!fnd.classify().fully_probabilistic);
    CHECK(fnd.classify().depth == 1);

    Nplts fpr = build({{"s0", "a", {{"s1", Rational(1, 2)}, {"s2", Rational(1, 2)}}}});
    CHECK(fpr.classify().fully_probabilistic);
    CHECK(!fpr.classify().fully_nondeterministic);

    Nplts neither = build({{"s0", "a", {{"s1", Rational(1, 2)}, {"s2", Rational(1, 2)}}},
                           {"s0", "a", {{"s1", Rational(1)}}}});
    CHECK(!neither.classify().fully_probabilistic);
    CHECK(!neither.classify().fully_nondeterministic);
}

TEST_CASE("enabled actions are a set") {
    Nplts m = build({{"s0", "a", {{"s1", Rational(1)}}},
                     {"s0", "a", {{"s2", Rational(1)}}},
                     {"s0", "b", {{"s2", Rational(1)}}}});
    ActionId a = *m.find_action("a"), bq = *m.find_action("b");
    CHECK(m.enabled_actions(0) == ((ActionSet(1) << a) | (ActionSet(1) << bq)));
    CHECK(m.enabled_actions(*m.find_state("s1")) == 0);
}

TEST_CASE("can_read follows computations") {
    Nplts m = build({{"s0", "a", {{"s1", Rational(1, 2)}, {"s2", Rational(1, 2)}}},
                     {"s1", "b", {{"s3", Rational(1)}}}});
    ActionId a = *m.find_action("a"), bq = *m.find_action("b");
    std::vector<ActionId> ab{a, bq}, ba{bq, a};
    CHECK(m.can_read(0, ab));
    CHECK(!m.can_read(0, ba));
    CHECK(m.can_read(0, std::span<const ActionId>{}));
}

TEST_CASE("parallel composition: Dirac times Dirac") {
    Nplts m1 = build({{"s", "a", {{"t", Rational(1)}}}}, {"a"});
    Nplts m2 = build({{"o", "a", {{"p", Rational(1)}}}}, {"a"});
    auto [a1, a2] = align_alphabets(m1, m2);
    Composition c = parallel_compose(a1, *a1.find_state("s"), a2, *a2.find_state("o"));
    CHECK(c.model.num_states() == 2);
    const auto& out = c.model.outgoing(c.root);
    REQUIRE(out.size() == 1);
    CHECK(out[0].target.is_dirac());
}

TEST_CASE("parallel composition: product of distributions") {
    // (s,o) -a-> {(t,p):1/6, (t,q):1/3, (u,p):1/6, (u,q):1/3}
    Nplts m1 = build({{"s", "a", {{"t", Rational(1, 2)}, {"u", Rational(1, 2)}}}}, {"a"});
    Nplts m2 = build({{"o", "a", {{"p", Rational(1, 3)}, {"q", Rational(2, 3)}}}}, {"a"});
    auto [a1, a2] = align_alphabets(m1, m2);
    Composition c = parallel_compose(a1, *a1.find_state("s"), a2, *a2.find_state("o"));
    const auto& out = c.model.outgoing(c.root);
    REQUIRE(out.size() == 1);
    REQUIRE(out[0].target.entries.size() == 4);
    Rational sum(0);
    for (const auto& [st, p] : out[0].target.entries) sum += p;
    CHECK(sum == Rational(1));
    CHECK(out[0].target.at(*c.model.find_state("(t,q)")) == Rational(1, 3));
    CHECK(out[0].target.at(*c.model.find_state("(u,p)")) == Rational(1, 6));
}

TEST_CASE("parallel composition: synchronization failure deadlocks") {
    Nplts m1 = build({{"s", "a", {{"t", Rational(1)}}}});
    Nplts m2 = build({{"o", "b", {{"p", Rational(1)}}}});
    auto [a1, a2] = align_alphabets(m1, m2);
    Composition c = parallel_compose(a1, *a1.find_state("s"), a2, *a2.find_state("o"));
    CHECK(c.model.deadlocked(c.root));
    CHECK(c.model.num_states() == 1);
}

TEST_CASE("composition depth bounded by factors") {
    Nplts m1 = build({{"s", "a", {{"t", Rational(1)}}}, {"t", "b", {{"u", Rational(1)}}}});
    Nplts m2 = build({{"o", "a", {{"p", Rational(1)}}}});
    auto [a1, a2] = align_alphabets(m1, m2);
    Composition c = parallel_compose(a1, *a1.find_state("s"), a2, *a2.find_state("o"));
    CHECK(c.model.classify().depth <= 1);
}

TEST_CASE("disjoint union keeps both sides apart") {
    Nplts m1 = build({{"s", "a", {{"t", Rational(1)}}}});
    Nplts m2 = build({{"s", "b", {{"t", Rational(1)}}}});
    auto [a1, a2] = align_alphabets(m1, m2);
    Nplts u = disjoint_union(a1, a2);
    CHECK(u.num_states() == 4);
    CHECK(u.find_state("l.s"));
    CHECK(u.find_state("r.s"));
    StateId ls = *u.find_state("l.s"), rs = *u.find_state("r.s");
    CHECK(u.enabled_actions(ls) != u.enabled_actions(rs));
}
