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

// Known-answer values produced by tests/oracles/ecs_vectors.py, an
// independent pure-Python BLS12-381 implementation (py_ecc).

#include <gtest/gtest.h>

#include "ssbgp/ecs.hpp"

namespace ssbgp::ecs {
namespace {

TEST(KnownAnswer, HashToCurveUnderProjectTag) {
    EXPECT_EQ(to_hex(bilinear::hash_to_g1(as_bytes("abc")).to_bytes()),
              "91436a0c611be1717c15ff33add80dbf966169c58fd675c5fada6480b957dc10"
              "0aca0f49a07be655de61195040835141");
}

TEST(KnownAnswer, ThreeLinkChain) {
    const std::vector<std::pair<std::string, std::uint64_t>> spec = {
        {"m1", 0x1234567}, {"m2", 0xabcdef01}, {"", 0x42}};
    const std::vector<std::string> expected_keys = {
        "820ad0f24a42c82129fef2a137f7b7c230c2aaffb78ffd82f6cbdcd2bfbf3560435a35c62d3ff66ad696b78f8c6c6c68",
        "ac4697aa47dfb00901f4ab0b4f70ce01e4d03e0e190945332868e4493123a62d2ec9c54b119b96d88dcc951abed3ca9d",
        "a4e8f4a4f81f855f46512af8cdcbc9ae8a7eb395a75f135e5569b758a8d92349681a0358500f2d41f4578d3f7ffaa90f",
    };
    const std::vector<std::string> expected_sigs = {
        "a0c6705ab3f119af11e07bd95be5010467c86c6e60b8f1052dca931456fcd36cffb17ad945119e40139eb9fc233e60ca",
        "b40d51409dcb6768d027dfaff6f945dd8ed4c42079319ef0c7a9c01414098682d2eb47fa554da3e25704407fc082b96e",
        "9778b757f97d0489cde2a206acac5b1d564a380c5ccf72a9e01069051e77de0b9a62c59b5203c3d681e65365cf3f8639",
    };

    ChainSequence seq;
    auto sig = EcsSignature::unit();
    for (std::size_t i = 0; i < spec.size(); ++i) {
        auto kp = KeyPair::from_private(bilinear::Scalar::from_u64(spec[i].second));
        EXPECT_EQ(to_hex(kp.public_key().canonical_bytes()), expected_keys[i]);
        auto msg = to_bytes(spec[i].first);
        sig = sign(kp, msg, seq, sig);
        seq = append(seq, {msg, kp.public_key()});
        EXPECT_EQ(to_hex(sig.value().to_bytes()), expected_sigs[i]) << "link " << i;
        EXPECT_TRUE(verify(seq, sig));
    }
}

}  // namespace
}  // namespace ssbgp::ecs
