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

#ifndef SSBGP_TESTS_TEST_SUPPORT_HPP
#define SSBGP_TESTS_TEST_SUPPORT_HPP

#include <string>
#include <vector>

#include "ssbgp/bilinear.hpp"
#include "ssbgp/ecs.hpp"

namespace ssbgp::testing {

inline bilinear::Scalar scalar_from(const std::string& seed) {
    return bilinear::random_scalar(bilinear::GroupContext::bls12_381(), as_bytes(seed));
}

inline ecs::KeyPair key_from(const std::string& seed) {
    return ecs::KeyPair::generate(bilinear::GroupContext::bls12_381(), as_bytes(seed));
}

// Builds an n-link honest chain by successive sign() calls.
struct HonestChain {
    std::vector<ecs::KeyPair> keys;
    std::vector<ecs::ChainSequence> sequences;  // sequences[j] has j links
    std::vector<ecs::EcsSignature> signatures;  // signatures[j] signs sequences[j]
};

inline HonestChain build_chain(std::size_t n, const std::string& tag) {
    HonestChain chain;
    chain.sequences.emplace_back();
    chain.signatures.push_back(ecs::EcsSignature::unit());
    for (std::size_t j = 0; j < n; ++j) {
        chain.keys.push_back(key_from(tag + "/key/" + std::to_string(j)));
        auto msg = to_bytes(tag + "/msg/" + std::to_string(j));
        auto sig = ecs::sign(chain.keys.back(), msg, chain.sequences.back(), chain.signatures.back());
        chain.sequences.push_back(
            ecs::append(chain.sequences.back(), {msg, chain.keys.back().public_key()}));
        chain.signatures.push_back(sig);
    }
    return chain;
}

}  // namespace ssbgp::testing

#endif  // SSBGP_TESTS_TEST_SUPPORT_HPP
