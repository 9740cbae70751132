#pragma once

#include <array>

#include "spectra/bisim.hpp"
#include "spectra/testing.hpp"
#include "spectra/trace_equiv.hpp"

namespace spectra {

/// The 26 decided equivalences, in the fixed report order.
enum class EquivalenceId : int {
    PtrDis, Ptr, PtrSupInf,
    PctrDis, Pctr, PctrSupInf,
    PfDis, Pf, PfSupInf,
    PftrDis, Pftr, PftrSupInf,
    PrDis, Pr, PrSupInf,
    PrtrDis, Prtr, PrtrSupInf,
    PteSupInf, PteAe, PteTbtDis, PteTbt, PteTbtSupInf,
    PbDis, Pb, PbSupInf,
};

constexpr int kNumEquivalences = 26;

const char* equiv_name(EquivalenceId id);
std::optional<EquivalenceId> equiv_from_name(const std::string& name);
bool is_testing(EquivalenceId id);
bool is_bisim(EquivalenceId id);
bool is_trace(EquivalenceId id);
/// For trace ids only.
std::pair<Semantics, Approach> trace_parts(EquivalenceId id);

/// One equivalence by id; the family is only consulted for testing ids.
Verdict decide_equivalence(EquivalenceId id, const Nplts& m1, StateId s1, const Nplts& m2,
                           StateId s2, const TestFamily& family, Budget& budget,
                           SchedulerMode mode = SchedulerMode::Tree);

struct EvalOutcome {
    enum class Status { Equivalent, Distinguished, Error };
    Status status = Status::Equivalent;
    std::optional<Witness> witness;
    std::string error; // budget error text when status == Error
};

/// Model class of a compared pair: the conjunction of both sides' classes.
struct EvalResult {
    std::array<EvalOutcome, kNumEquivalences> outcomes;
    ModelClass pair_class;

    const EvalOutcome& of(EquivalenceId id) const { return outcomes[static_cast<int>(id)]; }
};

/// Runs all 26 deciders. Budget exhaustion is recorded per equivalence, not
/// fatal; each decider gets a fresh budget with the given limit.
EvalResult evaluate_all(const Nplts& m1, StateId s1, const Nplts& m2, StateId s2,
                        const TestFamily& family, std::int64_t budget_limit,
                        SchedulerMode mode = SchedulerMode::Tree);

/// How an implication edge participates in consistency checking. Testing
/// "equivalent" verdicts are family-relative, so edges whose premise is a
/// testing equivalence bind only when the implication is provable per
/// individual test; the rest are checkable only through shipped witnesses.
enum class EdgeBinding { Binding, NonBinding };

struct SpectrumEdge {
    EquivalenceId from, to; // from finer to coarser: from-equivalent implies to-equivalent
    const char* theorem;
    EdgeBinding binding;
};

/// Pairwise-agreement groups that hold on restricted model classes.
struct ClassEquality {
    bool requires_fnd; // else requires fully probabilistic
    std::vector<EquivalenceId> ids;
    const char* theorem;
};

struct SpectrumExpectation {
    std::vector<SpectrumEdge> edges;
    std::vector<ClassEquality> equalities;
    /// Pairs expected incomparable; certified only through shipped
    /// witnesses, never via random corpora.
    std::vector<std::pair<EquivalenceId, EquivalenceId>> incomparable;
};

const SpectrumExpectation& spectrum_expectation();

struct Violation {
    std::string edge;
    std::string theorem;
};

/// Empty iff no binding implication or class-conditional equality is
/// violated by the verdict vector. Outcomes with errors are skipped.
std::vector<Violation> check_consistency(const EvalResult& r,
                                         const SpectrumExpectation& expectation =
                                             spectrum_expectation());

/// The line-oriented report block for one compared pair.
std::string format_report(const std::string& pair_id, const EvalResult& r,
                          const std::vector<Violation>& violations);

enum class ClassConstraint { Any, FullyNondeterministic, FullyProbabilistic };

struct GenConfig {
    unsigned states = 4;
    unsigned max_out_degree = 2;
    unsigned max_support = 2;
    std::vector<Rational> grid = {Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1)};
    std::vector<std::string> alphabet = {"a", "b"};
    ClassConstraint cls = ClassConstraint::Any;
    std::uint64_t seed = 0;
};

/// Seeded random acyclic model; byte-identical serialization per seed.
Nplts random_model(const GenConfig& cfg);

struct WitnessSearchResult {
    Nplts model;
    std::string left, right; // state names inside model
    std::uint64_t seed = 0;  // the seed that produced the model
};

/// Searches seeded random models for a pair that the coarser equivalence
/// accepts (family-relative for testing ids) and the finer one refutes.
/// Throws SearchExhausted after `attempts` models.
WitnessSearchResult search_witness(EquivalenceId finer, EquivalenceId coarser,
                                   const GenConfig& cfg, const TestFamily& family,
                                   std::int64_t budget_limit, unsigned attempts);

} // namespace spectra
