#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcmap/csv.hpp"
#include "rcmap/series.hpp"

namespace rcmap {

// Delay differential equation dx/dt = a x(t-tau) / (1 + x(t-tau)^n) - b x(t)
// with constant pre-history x(t <= 0) = history_init. Output is sampled
// once per unit of model time.
struct MackeyGlassParams {
    double a = 0.2;
    double b = 0.1;
    double n = 10.0;
    double tau = 23.0;
    double dt = 0.1;         // integration step; must divide the unit sample interval
    double t_end = 1000.0;   // last sampled time
    double history_init = 1.2;

    void validate() const {
        for (double v : {a, b, n, tau, dt, t_end, history_init})
            if (!std::isfinite(v)) throw std::invalid_argument("MackeyGlassParams: non-finite parameter");
        if (!(dt > 0.0)) throw std::invalid_argument("MackeyGlassParams: dt must be > 0");
        if (!(tau > 0.0)) throw std::invalid_argument("MackeyGlassParams: tau must be > 0");
        if (tau < dt) throw std::invalid_argument("MackeyGlassParams: tau must be >= dt");
        if (!(t_end >= 0.0)) throw std::invalid_argument("MackeyGlassParams: t_end must be >= 0");
        const double per_unit = 1.0 / dt;
        if (std::fabs(per_unit - std::round(per_unit)) > 1e-9)
            throw std::invalid_argument("MackeyGlassParams: dt must divide the unit sample interval");
    }
};

// Fixed-step RK4; the delayed term is read from the already-integrated grid
// with linear interpolation (step-halving agreement ~1e-5 before chaotic
// divergence sets in). Deterministic for identical parameters.
inline TimeSeries mackey_glass(const MackeyGlassParams& params) {
    params.validate();
    const auto per_unit = static_cast<std::size_t>(std::llround(1.0 / params.dt));
    const auto total_units = static_cast<std::size_t>(std::floor(params.t_end));
    const std::size_t steps = total_units * per_unit;
    const double dt = params.dt;
    const double delay_steps = params.tau / dt;

    std::vector<double> grid(steps + 1);
    grid[0] = params.history_init;

    // x(t) at a fractional step position, linearly interpolated; constant
    // history before t = 0. filled = highest grid index integrated so far.
    const auto delayed = [&](double step_pos, std::size_t filled) {
        if (step_pos <= 0.0) return params.history_init;
        const auto idx = static_cast<std::size_t>(step_pos);
        if (idx >= filled) return grid[filled];
        const double frac = step_pos - static_cast<double>(idx);
        return grid[idx] + frac * (grid[idx + 1] - grid[idx]);
    };
    const auto f = [&](double x, double x_delayed) {
        return params.a * x_delayed / (1.0 + std::pow(x_delayed, params.n)) - params.b * x;
    };

    for (std::size_t m = 0; m < steps; ++m) {
        const double x = grid[m];
        const double base = static_cast<double>(m) - delay_steps;
        const double k1 = f(x, delayed(base, m));
        const double k2 = f(x + 0.5 * dt * k1, delayed(base + 0.5, m));
        const double k3 = f(x + 0.5 * dt * k2, delayed(base + 0.5, m));
        const double k4 = f(x + dt * k3, delayed(base + 1.0, m));
        grid[m + 1] = x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    std::vector<double> samples(total_units + 1);
    for (std::size_t i = 0; i <= total_units; ++i) samples[i] = grid[i * per_unit];

    Provenance prov;
    prov.generator = "mackey_glass";
    prov.params["a"] = format_double(params.a);
    prov.params["b"] = format_double(params.b);
    prov.params["n"] = format_double(params.n);
    prov.params["tau"] = format_double(params.tau);
    prov.params["dt"] = format_double(params.dt);
    prov.params["t_end"] = format_double(params.t_end);
    prov.params["history_init"] = format_double(params.history_init);
    return TimeSeries(std::move(samples), 1.0, 0.0, std::move(prov));
}

} // namespace rcmap
