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

// Signed path-vector BGP: one statement (R_{j-1}, R_j, t_j) and one
// signature per hop. R_0 is the empty string.

#ifndef SSBGP_ROUTING_BGP_HPP
#define SSBGP_ROUTING_BGP_HPP

#include <variant>
#include <vector>

#include "ssbgp/routing/common.hpp"

namespace ssbgp::routing {

inline constexpr std::string_view kBgpTag = "SSBGP-BGP-v1";

struct BgpEntry {
    NodeId prev;  // R_{j-1}
    NodeId node;  // R_j, the signer
    Timestamp time = 0;
    bilinear::G1Element sig;

    /// Bytes covered by `sig`.
    Bytes statement() const;
    friend bool operator==(const BgpEntry&, const BgpEntry&) = default;
};

struct BgpUpdate {
    std::vector<BgpEntry> entries;

    std::vector<NodeId> path() const;
    /// u16 count || per entry (u8-len prev || u8-len node || u64 time || 48-byte sig).
    Bytes to_wire() const;
    static BgpUpdate from_wire(ByteView bytes);
    friend bool operator==(const BgpUpdate&, const BgpUpdate&) = default;
};

/// Signed entry for `node` following `prev`.
BgpEntry bgp_sign_entry(const ecs::KeyPair& kp, const NodeId& prev, const NodeId& node, Timestamp time);
BgpUpdate bgp_initiate(const NodeId& self, Timestamp now, const ecs::KeyPair& kp);

class BgpRouter : public Router {
public:
    using Router::Router;

    Protocol protocol() const override { return Protocol::kBgp; }
    std::vector<Bytes> initiate(Timestamp now) override;
    ProcessResult receive(ByteView wire, const NodeId& sender, Timestamp now) override;
    std::optional<std::vector<NodeId>> peek_path(ByteView wire) const override;
    std::size_t signature_bytes(ByteView wire) const override;

    /// Steps (a)-(e); on success installs the route and returns the update to
    /// propagate (ours appended).
    std::variant<BgpUpdate, ValidationError> process(const BgpUpdate& update, const NodeId& sender, Timestamp now);
};

}  // namespace ssbgp::routing

#endif  // SSBGP_ROUTING_BGP_HPP
