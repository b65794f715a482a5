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

// Deterministic chain-signature test vectors in the chain wire format, for
// cross-implementation checks.

#ifndef SSBGP_VECTORS_HPP
#define SSBGP_VECTORS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ssbgp::vectors {

inline constexpr std::string_view kFormat = "ssbgp-ecs-vectors-v1";

/// Vector i (0-based) is a chain of i+1 links. Output is JSON text.
std::string generate(std::size_t count, std::uint64_t seed);

struct VerifyReport {
    std::size_t checked = 0;
    std::vector<std::string> failures;  // one line per bad vector
    bool ok() const { return checked > 0 && failures.empty(); }
};

/// Decodes every vector, checks it verifies, that the decoded links match
/// the listed ones, and that re-signing with the listed private keys gives
/// the same signature bytes. Malformed documents are reported as failures.
VerifyReport verify(std::string_view json_text);

}  // namespace ssbgp::vectors

#endif  // SSBGP_VECTORS_HPP
