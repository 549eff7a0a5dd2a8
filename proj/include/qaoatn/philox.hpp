// Copyright 2026 The qaoatn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <array>
#include <cstdint>

namespace qaoatn {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Every output block is a pure function of (counter, key), which makes
/// random draws addressable: coefficient k of stream s for seed S is block
/// ({k_lo, k_hi, s, 0}, {S_lo, S_hi}).
class Philox4x32 {
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter counter, Key key);

    /// Block for (seed, stream, index) under the addressing scheme above.
    static Counter draw(std::uint64_t seed, std::uint32_t stream, std::uint64_t index);

    /// 64 random bits from the first two output words.
    static std::uint64_t draw64(std::uint64_t seed, std::uint32_t stream, std::uint64_t index);
};

/// Uniform double in [0, 1) with 53 random bits.
inline double unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Derives an independent 64-bit seed from a parent seed and a label.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t label);

}  // namespace qaoatn
