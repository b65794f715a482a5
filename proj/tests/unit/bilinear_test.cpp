/*
 * Copyright (C) 2026 The ssbgp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <set>
#include <string>

#include "ssbgp/bilinear.hpp"
#include "test_support.hpp"

namespace ssbgp::bilinear {
namespace {

using ssbgp::testing::scalar_from;

const GroupContext& ctx() { return GroupContext::bls12_381(); }

TEST(Scalar, SeededDrawsAreInRangeAndDeterministic) {
    auto a = random_scalar(ctx(), as_bytes("a"));
    auto b = random_scalar(ctx(), as_bytes("a"));
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a.is_zero());
    EXPECT_LT(a.to_bytes(), ctx().order());
    EXPECT_NE(a, random_scalar(ctx(), as_bytes("b")));
    EXPECT_THROW(random_scalar(ctx(), ByteView{}), std::invalid_argument);
}

TEST(Scalar, TenThousandDrawsNeverZero) {
    for (int i = 0; i < 10000; ++i) {
        auto s = scalar_from("draw/" + std::to_string(i));
        ASSERT_FALSE(s.is_zero());
        ASSERT_LT(s.to_bytes(), ctx().order());
    }
}

TEST(Scalar, FromBytesRejectsUnreduced) {
    EXPECT_THROW(Scalar::from_bytes(ctx().order()), BackendError);
    EXPECT_THROW(Scalar::from_bytes(Bytes(31, 0)), BackendError);
    auto one = Scalar::from_u64(1);
    EXPECT_EQ(Scalar::reduce(ctx().order()), Scalar{});
    EXPECT_EQ(Scalar{} - one + one, Scalar{});
    EXPECT_EQ(-one + one, Scalar{});
}

TEST(G1, ExponentEdgeCases) {
    auto g = G1Element::generator();
    EXPECT_EQ(g.pow(Scalar::from_u64(1)), g);
    EXPECT_TRUE(g.pow(Scalar{}).is_identity());
    EXPECT_EQ(g.pow(Scalar::from_u64(2)), g * g);
}

TEST(G1, ExponentComposition) {
    auto g = G1Element::generator();
    for (int i = 0; i < 20; ++i) {
        auto a = scalar_from("exp/a/" + std::to_string(i));
        auto b = scalar_from("exp/b/" + std::to_string(i));
        EXPECT_EQ(g.pow(a).pow(b), g.pow(a * b));
    }
}

TEST(G1, CombineIsAnAbelianGroup) {
    auto g = G1Element::generator();
    auto minus_one = -Scalar::from_u64(1);  // q - 1
    for (int i = 0; i < 20; ++i) {
        auto a = scalar_from("grp/a/" + std::to_string(i));
        auto b = scalar_from("grp/b/" + std::to_string(i));
        auto c = scalar_from("grp/c/" + std::to_string(i));
        auto x = g.pow(a), y = g.pow(b), z = hash_to_g1(as_bytes("grp/" + std::to_string(i)));
        EXPECT_EQ(x * G1Element::identity(), x);
        EXPECT_EQ(x * y, y * x);
        EXPECT_EQ((x * y) * z, x * (y * z));
        EXPECT_TRUE((x * x.pow(minus_one)).is_identity());
        EXPECT_EQ(x.pow(minus_one), x.inverse());
        EXPECT_EQ(g.pow(a) * g.pow(b), g.pow(a + b));
        EXPECT_EQ(g.pow(c) * g.pow(c), g.pow(c + c));
    }
}

TEST(Pairing, SymmetricInExponent) {
    auto g = DualElement::generator();
    auto x = scalar_from("sym");
    EXPECT_EQ(pairing(g.g1().pow(x), g), pairing(g.g1(), g.pow(x)));
}

TEST(Pairing, Bilinearity) {
    auto g = ctx().generator();
    auto base = pairing(g.g1(), g);
    for (int i = 0; i < 100; ++i) {
        auto a = scalar_from("bilin/a/" + std::to_string(i));
        auto b = scalar_from("bilin/b/" + std::to_string(i));
        ASSERT_EQ(pairing(g.g1().pow(a), g.pow(b)), base.pow(a * b)) << "trial " << i;
    }
}

TEST(Pairing, DegenerateInputsAndNonDegeneracy) {
    auto g = ctx().generator();
    EXPECT_TRUE(pairing(G1Element::identity(), g).is_one());
    EXPECT_TRUE(pairing(g.g1(), DualElement{}).is_one());
    auto base = pairing(g.g1(), g);
    EXPECT_FALSE(base.is_one());
    EXPECT_TRUE(base.in_group());
    // order q: base^(q-1) * base == 1
    EXPECT_TRUE((base.pow(-Scalar::from_u64(1)) * base).is_one());
}

TEST(Pairing, ProductMatchesIndividualPairings) {
    auto g = ctx().generator();
    std::vector<PairingTerm> terms;
    GtElement expected;
    for (int i = 0; i < 4; ++i) {
        auto h = hash_to_g1(as_bytes("prod/" + std::to_string(i)));
        auto y = g.pow(scalar_from("prod/key/" + std::to_string(i)));
        terms.push_back({h, y});
        expected *= pairing(h, y);
    }
    EXPECT_EQ(pairing_product(terms), expected);
    EXPECT_TRUE(pairing_product({}).is_one());
}

TEST(HashToG1, DeterministicDistinctAndInSubgroup) {
    EXPECT_EQ(hash_to_g1(as_bytes("x")), hash_to_g1(as_bytes("x")));
    EXPECT_FALSE(hash_to_g1(ByteView{}) == hash_to_g1(as_bytes("a")));
    for (int i = 0; i < 1000; ++i) {
        auto h = hash_to_g1(as_bytes("member/" + std::to_string(i)));
        ASSERT_TRUE(h.in_subgroup());
        ASSERT_FALSE(h.is_identity());
    }
}

TEST(Serialization, RoundTripFixedLengthInjective) {
    auto g = G1Element::generator();
    std::set<std::array<std::uint8_t, kPointBytes>> seen;
    for (std::uint64_t i = 1; i <= 1000; ++i) {
        auto e = g.pow(Scalar::from_u64(i));
        auto bytes = e.to_bytes();
        ASSERT_EQ(bytes.size(), kPointBytes);
        if (i <= 100) ASSERT_EQ(G1Element::from_bytes(bytes).to_bytes(), bytes);
        seen.insert(bytes);
    }
    EXPECT_EQ(seen.size(), 1000u);

    auto id = G1Element::identity().to_bytes();
    EXPECT_EQ(id[0], 0xc0);
    EXPECT_TRUE(G1Element::from_bytes(id).is_identity());
}

TEST(Serialization, RejectsMalformedEncodings) {
    EXPECT_THROW(G1Element::from_bytes(Bytes(kPointBytes, 0xff)), BackendError);
    EXPECT_THROW(G1Element::from_bytes(Bytes(kPointBytes - 1, 0x80)), BackendError);
    EXPECT_THROW(G1Element::from_bytes(Bytes(kPointBytes, 0x00)), BackendError);  // no compression bit

    // Scan compressed x-coordinates: some are off-curve, some land on the curve
    // outside the order-q subgroup (the cofactor is ~2^126). Both must throw.
    int off_curve = 0, wrong_subgroup = 0;
    for (int i = 1; i < 64 && (off_curve == 0 || wrong_subgroup == 0); ++i) {
        Bytes enc(kPointBytes, 0);
        enc[0] = 0x80;
        enc[kPointBytes - 1] = static_cast<std::uint8_t>(i);
        try {
            G1Element::from_bytes(enc);
            ADD_FAILURE() << "accepted x=" << i;
        } catch (const BackendError& e) {
            std::string what = e.what();
            if (what.find("subgroup") != std::string::npos) ++wrong_subgroup;
            else ++off_curve;
        }
    }
    EXPECT_GT(off_curve, 0);
    EXPECT_GT(wrong_subgroup, 0);
}

TEST(DualElement, EncodingChecksConsistency) {
    auto y = DualElement::from_exponent(scalar_from("dual"));
    EXPECT_TRUE(y.is_consistent());
    auto bytes = y.to_bytes();
    EXPECT_EQ(DualElement::from_bytes(bytes), y);

    // Splice the G1 half of one key onto the G2 half of another.
    auto z = DualElement::from_exponent(scalar_from("other")).to_bytes();
    std::copy(z.begin(), z.begin() + kPointBytes, bytes.begin());
    EXPECT_THROW(DualElement::from_bytes(bytes), BackendError);
    EXPECT_THROW(DualElement::from_bytes(Bytes(10, 0)), BackendError);
}

TEST(GroupContext, Parameters) {
    EXPECT_EQ(to_hex(ctx().order()), "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001");
    EXPECT_EQ(ctx().security_bits(), 128u);
    EXPECT_TRUE(ctx().generator().g1().in_subgroup());
    EXPECT_TRUE(ctx().generator().is_consistent());
    EXPECT_LE(kPointBytes, 64u);
}

}  // namespace
}  // namespace ssbgp::bilinear
