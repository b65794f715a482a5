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

#include <algorithm>
#include <numeric>
#include <random>

#include "ssbgp/ecs.hpp"
#include "test_support.hpp"

namespace ssbgp::ecs {
namespace {

using testing::build_chain;
using testing::key_from;

const bilinear::GroupContext& ctx() { return bilinear::GroupContext::bls12_381(); }

TEST(KeyGen, PublicMatchesPrivate) {
    auto kp = key_from("kg");
    EXPECT_EQ(kp.public_key().point(), bilinear::DualElement::from_exponent(kp.private_key()));
    EXPECT_EQ(kp.public_key().point().g1(), bilinear::G1Element::generator().pow(kp.private_key()));
    EXPECT_EQ(kp.public_key().canonical_bytes().size(), bilinear::kPointBytes);
    EXPECT_EQ(kp.public_key().to_wire().size(), bilinear::kDualPointBytes);
    EXPECT_FALSE(kp.public_key() == key_from("kg2").public_key());
    EXPECT_THROW(KeyPair(bilinear::Scalar::from_u64(5), key_from("kg").public_key()), std::invalid_argument);
}

TEST(KeyGen, DistinctSeedsGiveDistinctKeys) {
    std::set<PublicKey> keys;
    for (int i = 0; i < 200; ++i) keys.insert(key_from("distinct/" + std::to_string(i)).public_key());
    EXPECT_EQ(keys.size(), 200u);
}

TEST(Sign, FirstLinkIsHashToThePrivateKey) {
    auto kp = key_from("first");
    auto msg = to_bytes("m1");
    auto sig = sign(kp, msg, ChainSequence{}, EcsSignature::unit());
    ChainSequence one({{msg, kp.public_key()}});
    EXPECT_EQ(sig.value(), prefix_digest(one).pow(kp.private_key()));
    EXPECT_TRUE(verify(one, sig));
}

TEST(Sign, RejectsDuplicateSigner) {
    auto chain = build_chain(3, "dup");
    try {
        sign(chain.keys[1], to_bytes("again"), chain.sequences[3], chain.signatures[3]);
        FAIL() << "expected DuplicateKey";
    } catch (const SignError& e) {
        EXPECT_EQ(e.kind(), SignError::Kind::kDuplicateKey);
    }
}

TEST(Sign, RejectsTamperedPriorSignature) {
    auto chain = build_chain(2, "tamper");
    auto bad = EcsSignature(chain.signatures[2].value() * bilinear::hash_to_g1(as_bytes("noise")));
    try {
        sign(key_from("tamper/next"), to_bytes("m"), chain.sequences[2], bad);
        FAIL() << "expected InvalidPriorSignature";
    } catch (const SignError& e) {
        EXPECT_EQ(e.kind(), SignError::Kind::kInvalidPriorSignature);
    }
    // The unchecked path only trusts the caller, it does not re-verify.
    EXPECT_NO_THROW(extend_verified(key_from("tamper/next"), to_bytes("m"), chain.sequences[2], bad));
}

TEST(Sign, FastPathMatchesCheckedSign) {
    auto chain = build_chain(4, "fast");
    auto kp = key_from("fast/extra");
    EXPECT_EQ(extend_verified(kp, to_bytes("x"), chain.sequences[4], chain.signatures[4]),
              sign(kp, to_bytes("x"), chain.sequences[4], chain.signatures[4]));
    EXPECT_THROW(extend_verified(chain.keys[0], to_bytes("x"), chain.sequences[4], chain.signatures[4]),
                 SignError);
}

TEST(Verify, EmptyChainRules) {
    EXPECT_TRUE(verify(ChainSequence{}, EcsSignature::unit()));
    EXPECT_FALSE(verify(ChainSequence{}, EcsSignature(bilinear::G1Element::generator())));
    EXPECT_FALSE(verify(ChainSequence{}, build_chain(1, "empty").signatures[1]));
}

TEST(Verify, RepeatedKeyIsInvalid) {
    auto kp = key_from("rep");
    auto s1 = sign(kp, to_bytes("a"), ChainSequence{}, EcsSignature::unit());
    ChainSequence one({{to_bytes("a"), kp.public_key()}});
    // Forge the would-be signature directly; verify must still refuse.
    ChainSequence two = append(one, {to_bytes("b"), kp.public_key()});
    auto s2 = EcsSignature(s1.value() * prefix_digest(two).pow(kp.private_key()));
    EXPECT_FALSE(verify(two, s2));
}

TEST(Verify, FiveLinkChainAndNaiveTruncation) {
    auto chain = build_chain(5, "five");
    EXPECT_TRUE(verify(chain.sequences[5], chain.signatures[5]));
    EXPECT_FALSE(verify(chain.sequences[3], chain.signatures[5]));
}

class ChainLength : public ::testing::TestWithParam<int> {};

TEST_P(ChainLength, AlgebraProperties) {
    const auto n = static_cast<std::size_t>(GetParam());
    auto chain = build_chain(n, "prop/" + std::to_string(n));
    const auto& full = chain.sequences[n];
    const auto& sigma = chain.signatures[n];

    // roundtrip at every intermediate length
    for (std::size_t j = 0; j <= n; ++j) EXPECT_TRUE(verify(chain.sequences[j], chain.signatures[j]));

    // sigma_n never transfers to a strict prefix
    for (std::size_t j = 0; j < n; ++j) EXPECT_FALSE(verify(full.prefix(j), sigma)) << "prefix " << j;

    // any single message or key substitution breaks it
    for (std::size_t j = 0; j < n; ++j) {
        auto links = full.links();
        links[j].message.push_back('x');
        EXPECT_FALSE(verify(ChainSequence(links), sigma)) << "message " << j;
        links = full.links();
        links[j].key = key_from("prop/intruder").public_key();
        EXPECT_FALSE(verify(ChainSequence(links), sigma)) << "key " << j;
    }

    // stripping with the true keys reproduces honest signatures byte-exactly
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<bilinear::Scalar> suffix;
        for (std::size_t j = n - k; j < n; ++j) suffix.push_back(chain.keys[j].private_key());
        auto stripped = strip(full, sigma, suffix);
        EXPECT_EQ(stripped.to_wire(), chain.signatures[n - k].to_wire()) << "strip " << k;
    }
}

INSTANTIATE_TEST_SUITE_P(OneToTen, ChainLength, ::testing::Range(1, 11));

TEST(Verify, PermutedLinksAreInvalid) {
    auto chain = build_chain(5, "perm");
    auto links = chain.sequences[5].links();
    std::vector<std::size_t> order(links.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937 rng(7);
    int checked = 0;
    while (checked < 100) {
        std::shuffle(order.begin(), order.end(), rng);
        if (std::is_sorted(order.begin(), order.end())) continue;
        std::vector<ChainLink> permuted;
        for (auto i : order) permuted.push_back(links[i]);
        ASSERT_FALSE(verify(ChainSequence(permuted), chain.signatures[5]));
        ++checked;
    }
}

TEST(Verify, EqualMessagesBehaveLikeAnyOtherChain) {
    // every signer signs the same message
    ChainSequence seq;
    auto sig = EcsSignature::unit();
    std::vector<KeyPair> keys;
    for (int i = 0; i < 4; ++i) {
        keys.push_back(key_from("cs/" + std::to_string(i)));
        sig = sign(keys.back(), to_bytes("same"), seq, sig);
        seq = append(seq, {to_bytes("same"), keys.back().public_key()});
        EXPECT_TRUE(verify(seq, sig));
    }
    EXPECT_FALSE(verify(seq.prefix(2), sig));
    auto stripped = strip(seq, sig, std::vector{keys[2].private_key(), keys[3].private_key()});
    EXPECT_TRUE(verify(seq.prefix(2), stripped));
}

TEST(Strip, ErrorPaths) {
    auto chain = build_chain(3, "striperr");
    EXPECT_EQ(strip(chain.sequences[3], chain.signatures[3], {}), chain.signatures[3]);
    std::vector keys{chain.keys[0].private_key(), chain.keys[1].private_key(), chain.keys[2].private_key()};
    EXPECT_TRUE(strip(chain.sequences[3], chain.signatures[3], keys).is_unit());

    std::vector wrong{chain.keys[1].private_key()};
    EXPECT_THROW(strip(chain.sequences[3], chain.signatures[3], wrong), std::invalid_argument);
    std::vector one{chain.keys[2].private_key()};
    EXPECT_THROW(strip(chain.sequences[3], chain.signatures[2], one), std::invalid_argument);
    keys.push_back(keys[0]);
    EXPECT_THROW(strip(chain.sequences[3], chain.signatures[3], keys), std::invalid_argument);
}

TEST(Strip, ThreeOfFourMatchesDirectSigning) {
    auto chain = build_chain(4, "s34");
    std::vector suffix{chain.keys[1].private_key(), chain.keys[2].private_key(), chain.keys[3].private_key()};
    auto stripped = strip(chain.sequences[4], chain.signatures[4], suffix);
    auto direct = sign(chain.keys[0], chain.sequences[1][0].message, ChainSequence{}, EcsSignature::unit());
    EXPECT_EQ(stripped.value().to_bytes(), direct.value().to_bytes());
}

TEST(Aggregate, HonestAndTamperedBatches) {
    auto a = build_chain(3, "agg/a");
    auto b = build_chain(4, "agg/b");
    std::vector<SignedChain> batch{{a.sequences[3], a.signatures[3]}, {b.sequences[4], b.signatures[4]}};
    EXPECT_TRUE(aggregate_verify(batch));

    auto tampered = batch;
    tampered[1].signature = EcsSignature(b.signatures[4].value() * bilinear::hash_to_g1(as_bytes("t")));
    EXPECT_FALSE(aggregate_verify(tampered));

    // Swapped signatures: the plain product of sigmas is unchanged, the
    // randomized check still catches it.
    auto swapped = batch;
    std::swap(swapped[0].signature, swapped[1].signature);
    EXPECT_FALSE(aggregate_verify(swapped));

    // Cancelling errors: sigma_a * d and sigma_b / d.
    auto d = bilinear::hash_to_g1(as_bytes("delta"));
    auto cancel = batch;
    cancel[0].signature = EcsSignature(a.signatures[3].value() * d);
    cancel[1].signature = EcsSignature(b.signatures[4].value() * d.inverse());
    EXPECT_FALSE(aggregate_verify(cancel));

    std::vector<SignedChain> with_empty{{ChainSequence{}, EcsSignature::unit()}, batch[0]};
    EXPECT_TRUE(aggregate_verify(with_empty));
    with_empty[0].signature = a.signatures[1];
    EXPECT_FALSE(aggregate_verify(with_empty));

    EXPECT_THROW(aggregate_verify({}), std::invalid_argument);
}

TEST(Aggregate, SingletonAgreesWithVerify) {
    int valid = 0, invalid = 0;
    for (int i = 0; i < 200; ++i) {
        auto n = static_cast<std::size_t>(1 + i % 3);
        auto chain = build_chain(n, "single/" + std::to_string(i));
        SignedChain sc{chain.sequences[n], chain.signatures[n]};
        if (i % 2 == 1) {
            // invalid variants: truncated presentation or tampered message
            if (i % 4 == 1) sc.sequence = sc.sequence.prefix(n - 1);
            else {
                auto links = sc.sequence.links();
                links[0].message.push_back('!');
                sc.sequence = ChainSequence(links);
            }
        }
        bool expected = verify(sc.sequence, sc.signature);
        ASSERT_EQ(aggregate_verify(std::span<const SignedChain>(&sc, 1)), expected) << i;
        (expected ? valid : invalid)++;
    }
    EXPECT_EQ(valid, 100);
    EXPECT_EQ(invalid, 100);
}

TEST(ChainWire, RoundTripAndRejection) {
    auto chain = build_chain(3, "wire");
    SignedChain sc{chain.sequences[3], chain.signatures[3]};
    auto bytes = encode_chain(sc);
    auto back = decode_chain(bytes);
    EXPECT_EQ(back.sequence, sc.sequence);
    EXPECT_EQ(back.signature, sc.signature);
    EXPECT_EQ(encode_chain(back), bytes);

    SignedChain empty{};
    EXPECT_EQ(encode_chain(empty), (Bytes{0, 0, 0, 0, kUnitMarker}));
    EXPECT_TRUE(decode_chain(encode_chain(empty)).signature.is_unit());

    bytes.push_back(0);
    EXPECT_THROW(decode_chain(bytes), DecodeError);
    bytes.pop_back();
    bytes.pop_back();
    EXPECT_THROW(decode_chain(bytes), DecodeError);
    auto bad_marker = encode_chain(empty);
    bad_marker.back() = 0x07;
    EXPECT_THROW(decode_chain(bad_marker), DecodeError);
}

}  // namespace
}  // namespace ssbgp::ecs
