#pragma once

#include <cstdint>
#include <cstddef>
#include <span>
#include <vector>

namespace tvopt {

/// Ring buffer of the most recent observation vectors, ordered most
/// recent first. Step indices must be pushed consecutively so the stored
/// history is always a contiguous descending run; that invariant is what
/// makes moving-average combinations over y_{t-ih} well defined.
/// Single writer; readers may alias only between pushes.
class ObservationBuffer {
  public:
    /// capacity: max rows kept; dim: entries per observation (may be 0
    /// for scenarios that carry no observations).
    ObservationBuffer(std::size_t capacity, std::size_t dim);

    std::size_t capacity() const { return capacity_; }
    std::size_t dim() const { return dim_; }
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    /// Step index of the most recent observation; only valid when non-empty.
    std::int64_t latest_step() const { return latest_step_; }

    /// Appends the observation for step k. k must be exactly one past the
    /// latest stored step (any k is accepted when empty); the oldest row
    /// is evicted when full.
    void push(std::int64_t k, std::span<const double> obs);

    /// Row i counts back from the most recent: row(0) is y_t, row(1) is
    /// y_{t-h}, ... Requires i < size().
    const double* row(std::size_t i) const;

    void clear();

  private:
    std::size_t capacity_;
    std::size_t dim_;
    std::size_t size_ = 0;
    std::size_t head_ = 0;  // slot of the most recent row
    std::int64_t latest_step_ = -1;
    std::vector<double> storage_;
};

}  // namespace tvopt
