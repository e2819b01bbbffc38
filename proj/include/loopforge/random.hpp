#pragma once

#include <cstdint>
#include <random>

namespace loopforge {

/// Seeded generator with distribution code that does not depend on the
/// standard library's (implementation-defined) distribution classes, so a
/// seed reproduces the same probes everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
    /// Integer in [lo, hi].
    int integer(int lo, int hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(eng_() % span);
    }
    bool coin() { return (eng_() >> 63) != 0; }

private:
    std::mt19937_64 eng_;
};

}  // namespace loopforge
