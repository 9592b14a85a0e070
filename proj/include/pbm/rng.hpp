#pragma once

#include <cstdint>

namespace pbm {

// splitmix64 finalizer. Used to expand seeds and to derive stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += UINT64_C(0x9e3779b97f4a7c15));
    z = (z ^ (z >> 30)) * UINT64_C(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94d049bb133111eb);
    return z ^ (z >> 31);
}

// Seed for the index-th independent stream derived from a base seed.
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t s = seed + index;
    return splitmix64(s);
}

// Uniform variates on [0,1) from xoshiro256** (Blackman & Vigna), state
// filled from a 64-bit seed through splitmix64. Single-threaded: create one
// source per thread via stream_seed().
class UniformSource {
public:
    using result_type = std::uint64_t;

    explicit UniformSource(std::uint64_t seed) noexcept;

    // Raw 64-bit output. Does not count towards draws_issued().
    result_type next_u64() noexcept;

    // Top 53 bits scaled by 2^-53, so the result is strictly below 1.
    double next_unit() noexcept {
        ++draws_;
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    std::uint64_t draws_issued() const noexcept { return draws_; }
    std::uint64_t seed() const noexcept { return seed_; }

    // UniformRandomBitGenerator interface.
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }
    result_type operator()() noexcept { return next_u64(); }

private:
    std::uint64_t s_[4]{};
    std::uint64_t seed_ = 0;
    std::uint64_t draws_ = 0;
};

UniformSource new_source(std::uint64_t seed) noexcept;

}  // namespace pbm
