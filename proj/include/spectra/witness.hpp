#pragma once

#include "spectra/spectrum.hpp"

namespace spectra {

/// One corpus entry (.wit file): a model, two of its states, the
/// equivalences expected to accept the pair, and those expected to refute
/// it. Verification reruns every listed decider. Format, '#' comments
/// allowed:
///
///   witness NAME
///   theorem TAG            # documentation only
///   seed N                 # provenance: search seed that found the pair
///   left STATE
///   right STATE
///   equiv ID...
///   dist ID...
///   gentests depth=D branching=B grid=R,R,...   # optional; default family otherwise
///   nplts NAME             # model block, same grammar as model files
///   ...
///   npt NAME               # optional explicit test blocks; when present the
///   ...                    # testing deciders run over exactly these tests
struct WitnessEntry {
    std::string name;
    std::string theorem;
    std::uint64_t seed = 0;
    std::string left, right;
    std::vector<EquivalenceId> equiv, dist;
    TestGenConfig tests;
    std::vector<Npt> npts;
    Nplts model;
};

WitnessEntry parse_witness(const std::string& text);
std::string serialize_witness(const WitnessEntry& w);

struct CorpusReport {
    unsigned entries = 0;
    unsigned failures = 0;
    std::vector<std::string> lines; // one per entry, plus one per failure detail
};

/// Parses and re-verifies every *.wit file in the directory (sorted by file
/// name). A failure is a verdict that does not match the entry.
CorpusReport verify_corpus(const std::string& dir, std::int64_t budget_limit);

} // namespace spectra
