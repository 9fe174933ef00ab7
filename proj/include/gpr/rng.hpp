#pragma once

#include <array>
#include <cstdint>

namespace gpr {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Output depends only on (key, counter), so streams can be addressed directly.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter counter, Key key) noexcept;
};

/// Standard normal draws addressed by (seed, stream, index): draw `index` of
/// stream `stream` is a pure function of the triple. Uses Box-Muller on two
/// 53-bit uniforms taken from one Philox block, which yields draws 2k and 2k+1.
class NormalStream {
public:
    NormalStream(std::uint64_t seed, std::uint64_t stream) noexcept;
    double operator()(std::uint64_t index) const noexcept;

private:
    Philox4x32::Key key_;
    std::uint64_t stream_;
};

}  // namespace gpr
