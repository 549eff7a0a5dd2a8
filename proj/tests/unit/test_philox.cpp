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


#include <gtest/gtest.h>

#include "qaoatn/philox.hpp"

using namespace qaoatn;

TEST(Philox, KnownAnswerVectors) {
    using C = Philox4x32::Counter;
    EXPECT_EQ(Philox4x32::block({0, 0, 0, 0}, {0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, AddressingScheme) {
    const std::uint64_t seed = 0x0123456789abcdefull;
    const auto a = Philox4x32::draw(seed, 2, 0x100000005ull);
    const auto b = Philox4x32::block({5, 1, 2, 0}, {0x89abcdef, 0x01234567});
    EXPECT_EQ(a, b);
    EXPECT_EQ(Philox4x32::draw64(seed, 2, 0x100000005ull), (std::uint64_t{b[1]} << 32) | b[0]);
}

TEST(Philox, UnitDoubleRange) {
    EXPECT_EQ(unit_double(0), 0.0);
    EXPECT_LT(unit_double(~std::uint64_t{0}), 1.0);
    EXPECT_DOUBLE_EQ(unit_double(std::uint64_t{1} << 63), 0.5);
}

TEST(Philox, DerivedSeedsDiffer) {
    EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
    EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
    EXPECT_EQ(derive_seed(9, 4), derive_seed(9, 4));
}
