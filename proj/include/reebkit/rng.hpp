#ifndef REEBKIT_RNG_HPP
#define REEBKIT_RNG_HPP

#include <cstdint>

namespace reebkit {

// splitmix64. Chosen over <random> engines because its output stream (and
// hence every seeded report) is identical across standard libraries, which
// the byte-identical-report contract depends on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform integer in [0, n)
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    bool coin() { return (next_u64() & 1u) != 0; }

    Rng fork() { return Rng(next_u64()); }

private:
    std::uint64_t state_;
};

} // namespace reebkit

#endif // REEBKIT_RNG_HPP
