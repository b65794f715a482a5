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

// Stateful S-BGP: every signed statement names its recipient
// (signer <= recipient), so each update is specific to one neighbor and a
// node sends one update per neighbor not already on the path.

#ifndef SSBGP_ROUTING_SBGP_HPP
#define SSBGP_ROUTING_SBGP_HPP

#include <variant>
#include <vector>

#include "ssbgp/routing/common.hpp"

namespace ssbgp::routing {

inline constexpr std::string_view kSbgpTag = "SSBGP-SBGP-v1";

struct SbgpStatement {
    NodeId signer;
    NodeId recipient;
    Timestamp time = 0;
    bilinear::G1Element sig;

    Bytes statement() const;
    friend bool operator==(const SbgpStatement&, const SbgpStatement&) = default;
};

struct SbgpUpdate {
    std::vector<SbgpStatement> statements;

    std::vector<NodeId> path() const;  // signers in order
    /// u16 count || per statement (u8-len signer || u8-len recipient || u64 time || 48-byte sig).
    Bytes to_wire() const;
    static SbgpUpdate from_wire(ByteView bytes);
    friend bool operator==(const SbgpUpdate&, const SbgpUpdate&) = default;
};

SbgpStatement sbgp_sign_statement(const ecs::KeyPair& kp, const NodeId& signer, const NodeId& recipient,
                                  Timestamp time);
/// One update per neighbor.
std::vector<SbgpUpdate> sbgp_initiate(const NodeId& self, const std::vector<NodeId>& neighbors, Timestamp now,
                                      const ecs::KeyPair& kp);

class SbgpRouter : public Router {
public:
    using Router::Router;

    Protocol protocol() const override { return Protocol::kSbgp; }
    std::vector<Bytes> initiate(Timestamp now) override;
    ProcessResult receive(ByteView wire, const NodeId& sender, Timestamp now) override;
    std::optional<std::vector<NodeId>> peek_path(ByteView wire) const override;
    std::size_t signature_bytes(ByteView wire) const override;

    /// Steps (a)-(e) plus the recipient check; on success returns one
    /// extended update per neighbor not on the path.
    std::variant<std::vector<SbgpUpdate>, ValidationError> process(const SbgpUpdate& update, const NodeId& sender,
                                                                   Timestamp now);
};

}  // namespace ssbgp::routing

#endif  // SSBGP_ROUTING_SBGP_HPP
