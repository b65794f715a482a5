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

// Stateless secure BGP: the path is a chain of (m_j, R_j) links carried
// with one chain signature. m_j encodes the hop time and an optional opaque
// extension; the key of link j is the registry key of R_j.

#ifndef SSBGP_ROUTING_SSBGP_HPP
#define SSBGP_ROUTING_SSBGP_HPP

#include <variant>
#include <vector>

#include "ssbgp/routing/common.hpp"

namespace ssbgp::routing {

struct SsbgpHop {
    Timestamp time = 0;
    NodeId node;
    Bytes extension;

    /// Chain message: u64 time || u16 |extension| || extension.
    Bytes message() const;
    friend bool operator==(const SsbgpHop&, const SsbgpHop&) = default;
};

struct SsbgpUpdate {
    std::vector<SsbgpHop> path;
    ecs::EcsSignature sigma;

    std::vector<NodeId> nodes() const;
    /// Throws std::out_of_range naming the first unknown id.
    ecs::ChainSequence chain(const KeyRegistry& registry) const;
    /// u16 count || per hop (u64 time || u8-len id || u16 |ext| || ext) || 48-byte sigma.
    Bytes to_wire() const;
    static SsbgpUpdate from_wire(ByteView bytes);
    /// Bytes of to_wire() spent on the path list alone.
    std::size_t path_bytes() const;
    friend bool operator==(const SsbgpUpdate&, const SsbgpUpdate&) = default;
};

SsbgpUpdate ssbgp_initiate(const NodeId& self, Timestamp now, const ecs::KeyPair& kp, Bytes extension = {});

class SsbgpRouter : public Router {
public:
    using Router::Router;

    Protocol protocol() const override { return Protocol::kSsbgp; }
    std::vector<Bytes> initiate(Timestamp now) override;
    ProcessResult receive(ByteView wire, const NodeId& sender, Timestamp now) override;
    std::optional<std::vector<NodeId>> peek_path(ByteView wire) const override;
    std::size_t signature_bytes(ByteView wire) const override;

    /// Extension attached to this node's own hops.
    void set_extension(Bytes ext) { extension_ = std::move(ext); }

    std::variant<SsbgpUpdate, ValidationError> process(const SsbgpUpdate& update, const NodeId& sender,
                                                       Timestamp now);

private:
    Bytes extension_;
};

}  // namespace ssbgp::routing

#endif  // SSBGP_ROUTING_SSBGP_HPP
