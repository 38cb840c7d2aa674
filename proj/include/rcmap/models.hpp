#pragma once

#include <memory>

#include "rcmap/delay_line.hpp"
#include "rcmap/lti_filter_bank.hpp"
#include "rcmap/pinned_particles.hpp"
#include "rcmap/polynomial_bank.hpp"
#include "rcmap/reservoir.hpp"
#include "rcmap/tanh_lattice.hpp"

namespace rcmap {

inline std::unique_ptr<Reservoir> make_reservoir(const ReservoirSpec& spec) {
    switch (spec.model) {
        case ReservoirModel::tanh_lattice: return std::make_unique<TanhLattice>(spec);
        case ReservoirModel::pinned_particles: return std::make_unique<PinnedParticles>(spec);
        case ReservoirModel::delay_line: return std::make_unique<DelayLine>(spec);
        case ReservoirModel::lti_filter_bank: return std::make_unique<LtiFilterBank>(spec);
        case ReservoirModel::polynomial_bank: return std::make_unique<PolynomialBank>(spec);
    }
    throw std::invalid_argument("make_reservoir: unknown model");
}

} // namespace rcmap
