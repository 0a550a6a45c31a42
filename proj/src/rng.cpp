#include "ncdisco/rng.hpp"

namespace ncdisco {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngSeed RngSeed::child(std::uint64_t salt) const {
    return RngSeed{splitmix64(master ^ splitmix64(salt + 0x632be59bd9b4e019ULL)), stream};
}

Engine make_engine(const RngSeed& seed) {
    const std::uint64_t a = splitmix64(seed.master);
    const std::uint64_t b = splitmix64(a ^ splitmix64(seed.stream + 1));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return Engine(seq);
}

}  // namespace ncdisco
