#pragma once

#include "spectra/verdict.hpp"

namespace spectra {

/// A nondeterministic and probabilistic test: a finite acyclic model with a
/// designated initial state and a transition-free success state.
struct Npt {
    Nplts model;
    StateId root = 0;
    StateId omega = 0;
};

/// The test family quantification runs over. Verdict semantics is
/// asymmetric: "distinguished" is sound, "equivalent" means "not
/// distinguished by this family".
struct TestFamily {
    std::vector<Npt> tests;
    std::string provenance;
};

/// L composed with a test; configurations whose test component is omega are
/// successful (and deadlocked, since omega has no transitions).
struct InteractionSystem {
    Composition comp;
    StateFacts facts; // success set at omega-configurations
};

InteractionSystem interaction(const Nplts& m, StateId s, const Npt& t);

/// (sup, inf) of the successful-computation probability over the maximal
/// resolutions of the interaction system.
std::pair<Rational, Rational> success_extrema(const Nplts& m, StateId s, const Npt& t,
                                              Budget& budget,
                                              SchedulerMode mode = SchedulerMode::Tree);

enum class TestingVariant { SupInf, ForallExists, TbtDis, Tbt, TbtSupInf };

const char* testing_variant_name(TestingVariant v);

Verdict decide_testing_equivalence(const Nplts& m1, StateId s1, const Nplts& m2, StateId s2,
                                   TestingVariant variant, const TestFamily& family,
                                   Budget& budget, SchedulerMode mode = SchedulerMode::Tree);

struct TestGenConfig {
    std::vector<std::string> alphabet;
    unsigned max_depth = 2;
    unsigned max_branching = 2;
    /// Branch probabilities for test distributions. The default keeps tests
    /// fully nondeterministic: probabilistic grids blow the family size up
    /// combinatorially at depth 2, so they are opt-in.
    std::vector<Rational> grid = {Rational(1)};
};

/// All structurally distinct NPTs up to the bounds, modulo rooted-tree
/// isomorphism, in a deterministic order. Distribution supports are capped
/// at two states. Throws FamilyTooLarge past the budget.
TestFamily generate_tests(const TestGenConfig& cfg, Budget& budget);

} // namespace spectra
