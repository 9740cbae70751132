#pragma once

#include "spectra/resolution.hpp"
#include "spectra/spectrum.hpp"

namespace spectra {

/// Graphviz rendering; non-Dirac transitions go through a small junction
/// node carrying the action, with probability-labeled edges to the targets.
std::string model_to_dot(const Nplts& m);

/// The selected sub-tree of the unfolding; stopped nodes are marked.
std::string resolution_to_dot(const Resolution& z);

/// The realized spectrum for one evaluated pair: one node per equivalence
/// (shaded by verdict), edges from the expectation table (dashed when the
/// edge is non-binding for consistency checking).
std::string spectrum_to_dot(const EvalResult& r);

} // namespace spectra
