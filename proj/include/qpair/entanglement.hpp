// Initial-state families and Wootters concurrence

#pragma once

#include <vector>

#include "qpair/density_matrix.hpp"
#include "qpair/dynamics.hpp"
#include "qpair/model.hpp"

namespace qpair {

enum class StateFamily {
    one_excitation,  // sqrt(p)|01> + e^{i phi} sqrt(1-p)|10>
    two_excitation,  // sqrt(p)|00> + e^{i phi} sqrt(1-p)|11>
};

struct InitialStateSpec {
    StateFamily family{StateFamily::one_excitation};
    double p{1.0};    // in [0, 1]
    double phi{0.0};
};

const char* to_string(StateFamily family);

// Dressed-basis density matrix of the pure initial state. The one-excitation
// family only populates the (b, c) block, the two-excitation family the (a, d) block.
DensityMatrix build_initial(const InitialStateSpec& spec, const DressedBasis& basis);

// max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)) over the decreasing
// eigenvalues of rho * (sy sy) rho^* (sy sy). Requires a computational-basis
// state; throws BasisMismatch otherwise and InvalidArgument for unphysical input.
double concurrence(const DensityMatrix& rho);

// Concurrence of every state of a dressed-basis trajectory; also stored in
// traj.observables.
std::vector<double> concurrence_series(Trajectory& traj, const DressedBasis& basis);

} // namespace qpair
