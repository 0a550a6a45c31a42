#pragma once

#include <cstdint>
#include <random>

namespace ncdisco {

/// Reproducible stream identifier. The pair (master, stream) fully determines
/// every draw made from an engine built by make_engine().
struct RngSeed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;

    /// A sub-stream for a distinct purpose within the same replication.
    RngSeed child(std::uint64_t salt) const;

    friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

Engine make_engine(const RngSeed& seed);

}  // namespace ncdisco
