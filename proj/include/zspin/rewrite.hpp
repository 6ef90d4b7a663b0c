#pragma once

#include "zspin/model.hpp"

namespace zspin {

/// Contract the edge carried by a two-body equality-type interaction
/// ("ising", two-body "potts", or "constraint-equal"): its endpoints become
/// one variable, the interaction itself is dropped, and every other
/// interaction is re-indexed. The result's partition function equals that of
/// the input with the chosen interaction replaced by a hard equality
/// constraint.
SpinModel merge(const SpinModel& m, int interaction_index);

/// Remove one interaction. Equivalent to setting its coupling to zero
/// (energy identically 0, weight identically 1).
SpinModel delete_interaction(const SpinModel& m, int interaction_index);

/// Embed a two-level edge+field model on n' <= n vertices into the n-vertex
/// complete graph: couplings match the target on its edges and the remaining
/// edges are absent (coupling zero); surplus vertices are decoupled, so the
/// partition function picks up a factor q^(n-n').
SpinModel specialize_clique(int n, const SpinModel& target);

}  // namespace zspin
