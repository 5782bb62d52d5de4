#pragma once

#include <cstdint>

namespace afflab {

/// Counter-based generator: the i-th draw of a stream depends only on
/// (seed, stream, i), so work can be split across threads without changing
/// results.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t at(std::uint64_t counter) const noexcept {
        return mix(key_ + counter * 0x9e3779b97f4a7c15ULL);
    }
    std::uint64_t operator()() noexcept { return at(counter_++); }

    /// Uniform in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) noexcept {
        if (bound <= 1) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        for (;;) {
            const std::uint64_t x = (*this)();
            if (x < limit) return x % bound;
        }
    }
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) noexcept { return uniform() < p; }

    static std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace afflab
