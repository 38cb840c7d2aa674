#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rcmap/reservoir.hpp"

namespace rcmap {

// Legendre polynomial P_d(x) by the Bonnet recurrence.
inline double legendre(std::size_t degree, double x) {
    if (degree == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (std::size_t d = 1; d < degree; ++d) {
        const double next = ((2.0 * d + 1.0) * x * p - static_cast<double>(d) * pm1) / (d + 1.0);
        pm1 = p;
        p = next;
    }
    return p;
}

// Memoryless nonlinear bank: node i reads P_d(clamp(input_gain * u, -1, 1))
// with degrees cycling 2..polynomial_degree. Legendre polynomials of degree
// >= 2 are orthogonal to constants and to u itself under uniform input on
// [-1, 1], so the bank shows maximal nonlinearity with no memory at all —
// the counterpart of the linear filter bank.
class PolynomialBank final : public Reservoir {
public:
    explicit PolynomialBank(ReservoirSpec spec) : Reservoir(std::move(spec)) {
        const std::size_t n = layout_.node_count();
        degrees_.resize(n);
        for (std::size_t i = 0; i < n; ++i) degrees_[i] = 2 + i % (spec_.polynomial_degree - 1);
        state_.assign(1, 0.0); // the held input sample
    }

    const std::vector<std::size_t>& degrees() const { return degrees_; }

protected:
    void reset_state() override { state_[0] = 0.0; }

    void advance(double u) override { state_[0] = std::clamp(spec_.drive.input_gain * u, -1.0, 1.0); }

    void project(std::vector<double>& out) const override {
        for (std::size_t i = 0; i < degrees_.size(); ++i) out[i] = legendre(degrees_[i], state_[0]);
    }

    const std::vector<double>& internal_state() const override { return state_; }

    void set_internal_state(std::vector<double> state) override {
        if (state.size() != state_.size()) throw std::invalid_argument("PolynomialBank: state size mismatch");
        state_ = std::move(state);
    }

private:
    std::vector<double> state_;
    std::vector<std::size_t> degrees_;
};

} // namespace rcmap
