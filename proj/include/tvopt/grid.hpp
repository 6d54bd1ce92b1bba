#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tvopt {

/// Uniform time grid {t_start + k*h : 0 <= k <= num_steps}. The integer
/// step index is the source of truth; continuous time is always derived
/// as a single fused k*h product so there is no accumulation drift over
/// long runs.
struct TimeGrid {
    double h = 0.0;
    std::int64_t num_steps = 0;
    double t_start = 0.0;

    TimeGrid(double h_, std::int64_t num_steps_, double t_start_ = 0.0)
        : h(h_), num_steps(num_steps_), t_start(t_start_) {
        if (!(h > 0.0)) throw std::invalid_argument("TimeGrid: h must be > 0");
        if (num_steps < 1)
            throw std::invalid_argument("TimeGrid: num_steps must be >= 1");
        if (t_start < 0.0)
            throw std::invalid_argument("TimeGrid: t_start must be >= 0");
    }

    double t_max() const { return time_of(num_steps); }

    double time_of(std::int64_t k) const {
        if (k < 0 || k > num_steps)
            throw std::out_of_range("TimeGrid::time_of: k = " + std::to_string(k) +
                                    " outside [0, " + std::to_string(num_steps) + "]");
        return t_start + static_cast<double>(k) * h;
    }
};

inline double time_of(const TimeGrid& grid, std::int64_t k) {
    return grid.time_of(k);
}

}  // namespace tvopt
