#pragma once

#include <cstdint>

namespace xorsat {

// "sm64/v1": counter-based 64-bit generator (splitmix64 finalizer over an
// incrementing counter). Output is identical on every platform for a given
// seed, which is what makes instances and solver runs bit-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : key_(seed), counter_(0) {}

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + (++counter_) * 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1) with 53 bits of randomness.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    // Independent child stream; used to split one experiment seed into
    // per-permutation / per-trial streams.
    Rng split(std::uint64_t stream) const {
        std::uint64_t z = key_ ^ (stream + 0x632be59bd9b4e019ull) * 0xd6e8feb86659fd93ull;
        z = (z ^ (z >> 32)) * 0xd6e8feb86659fd93ull;
        return Rng(z ^ (z >> 32));
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

// Fisher-Yates shuffle with the portable generator above.
template <typename Vec>
void shuffle(Vec& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        auto tmp = v[i - 1];
        v[i - 1] = v[j];
        v[j] = tmp;
    }
}

}  // namespace xorsat
