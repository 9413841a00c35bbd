#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace sighyp {

inline std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed of the substream for item `index` under `master`; independent of
// how items are distributed over workers.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index)
{
    std::uint64_t s = master;
    const std::uint64_t a = splitmix64(s);
    std::uint64_t t = a ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
    return splitmix64(t);
}

// xoshiro256**: s <- linear shift-register update, output scrambled by
// rotl(s1 * 5, 7) * 9.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed)
    {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next()
    {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on (0, 1].
    double uniform_open0() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }
    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

// Box-Muller pairs; the second variate is cached.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : g_(seed) {}

    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(g_.uniform_open0()));
        const double th = 2.0 * std::numbers::pi * g_.uniform();
        spare_ = r * std::sin(th);
        has_spare_ = true;
        return r * std::cos(th);
    }

    double uniform() { return g_.uniform(); }

private:
    Xoshiro256 g_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace sighyp
