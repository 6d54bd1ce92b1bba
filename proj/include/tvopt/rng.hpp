#pragma once

#include <cstdint>
#include <string_view>

namespace tvopt {

/// Deterministic random stream keyed by (seed, stream_id). The generator
/// is xoshiro256++ seeded through splitmix64, with the Gaussian transform
/// implemented here rather than taken from <random>, so identical keys
/// reproduce identical draws on every platform and standard library.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64();

    /// Uniform draw in [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal via the Marsaglia polar method (deterministic
    /// rejection sequence; pairs cached).
    double normal();

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// splitmix64 finalizer; used both for seeding and for deriving stream ids.
std::uint64_t mix64(std::uint64_t x);

/// Stable stream-id derivation from a master seed plus an arbitrary tag
/// and numeric coordinates (e.g. the h value and replicate index of a
/// Monte Carlo cell).
std::uint64_t derive_stream(std::uint64_t master_seed, std::string_view tag,
                            double a = 0.0, std::uint64_t b = 0);

}  // namespace tvopt
