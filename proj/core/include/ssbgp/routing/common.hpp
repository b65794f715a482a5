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

/*
 * Shared routing core: node ids, the key registry, the best-route table,
 * the forwarding rule, the single-signer baseline signature used by BGP and
 * S-BGP, and the router interface the simulator drives.
 *
 * All three engines validate in the same order and stop at the first
 * failure: (a) format, (b) loop, (c) new-or-better route, (d) timestamp
 * deltas, (e) signatures. Signature work only happens in (e).
 */

#ifndef SSBGP_ROUTING_COMMON_HPP
#define SSBGP_ROUTING_COMMON_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ssbgp/bytes.hpp"
#include "ssbgp/ecs.hpp"

namespace ssbgp::routing {

/// Node label (A, B, ..., R_i). At most 255 bytes on the wire.
using NodeId = std::string;
/// Simulation milliseconds.
using Timestamp = std::uint64_t;

inline constexpr Timestamp kDefaultThreshold = 1000;

enum class Protocol { kBgp, kSbgp, kSsbgp };

std::string_view to_string(Protocol p);
/// "bgp", "sbgp", "ssbgp" (case-insensitive, '-' ignored).
std::optional<Protocol> parse_protocol(std::string_view text);

/// Static id -> public key map; stands in for a PKI.
class KeyRegistry {
public:
    void add(const NodeId& id, const ecs::PublicKey& key);
    const ecs::PublicKey* find(const NodeId& id) const;
    bool contains(const NodeId& id) const { return find(id) != nullptr; }
    std::size_t size() const { return keys_.size(); }

private:
    std::map<NodeId, ecs::PublicKey> keys_;
};

struct RoutingTableEntry {
    NodeId destination;
    NodeId next_hop;
    std::uint32_t metric = 0;

    friend bool operator==(const RoutingTableEntry&, const RoutingTableEntry&) = default;
};

/// Best route per destination. Offers replace the incumbent only when
/// strictly shorter; ties keep the existing route.
class RoutingTable {
public:
    const RoutingTableEntry* find(const NodeId& destination) const;
    /// True if an offer with this metric would be installed.
    bool is_improvement(const NodeId& destination, std::uint32_t metric) const;
    /// Installs the route if it is an improvement; returns whether it did.
    bool offer(const RoutingTableEntry& entry);
    /// path = origin..previous hop as seen by the receiver.
    bool apply(const std::vector<NodeId>& path);

    const std::map<NodeId, RoutingTableEntry>& entries() const { return entries_; }
    friend bool operator==(const RoutingTable&, const RoutingTable&) = default;

private:
    std::map<NodeId, RoutingTableEntry> entries_;
};

enum class ForwardAction { kForward, kDrop };

/// Drop when self is the destination, when there is no route, or when the
/// packet came from our own next hop; forward otherwise.
ForwardAction forward_decision(const RoutingTable& table, const NodeId& self, const NodeId& packet_dest,
                               const NodeId& packet_sender);

struct ValidationError {
    enum class Kind {
        kBadFormat,
        kLoopDetected,
        kNotBetter,
        kStaleTimestamp,
        kBadSignature,
        kNotAddressedToMe,
        kSenderMismatch,
    };
    Kind kind = Kind::kBadFormat;
    std::size_t position = 0;  // entry index the check failed at
    std::string detail;

    friend bool operator==(const ValidationError& a, const ValidationError& b) {
        return a.kind == b.kind && a.position == b.position;
    }
};

std::string_view to_string(ValidationError::Kind kind);

/// Single-signer signatures over the same curve: sig = H(tag || m)^x.
namespace baseline {
bilinear::G1Element sign(const ecs::KeyPair& kp, std::string_view tag, ByteView message);
bool verify(const ecs::PublicKey& key, std::string_view tag, ByteView message, const bilinear::G1Element& sig);
}  // namespace baseline

struct RouterCounters {
    std::uint64_t updates_received = 0;
    std::uint64_t updates_accepted = 0;
    std::uint64_t signature_checks = 0;  // individual verifications attempted
};

struct Accepted {
    RoutingTableEntry route;
    std::vector<NodeId> path;     // origin..sender as received
    std::vector<Bytes> outgoing;  // broadcasts to send in response
};

using ProcessResult = std::variant<Accepted, ValidationError>;

/// Engine-independent face of a node's routing process.
class Router {
public:
    struct Options {
        Timestamp threshold = kDefaultThreshold;
        bool sender_identification = true;
    };

    Router(NodeId self, ecs::KeyPair key, const KeyRegistry& registry, Options options);
    virtual ~Router() = default;

    virtual Protocol protocol() const = 0;
    /// Advertisements announcing self as a destination.
    virtual std::vector<Bytes> initiate(Timestamp now) = 0;
    /// Decodes and validates one received broadcast. `sender` is the
    /// physically observed transmitter.
    virtual ProcessResult receive(ByteView wire, const NodeId& sender, Timestamp now) = 0;
    /// Path (origin..last signer) carried by a wire update, if it decodes.
    virtual std::optional<std::vector<NodeId>> peek_path(ByteView wire) const = 0;
    /// Bytes of signature material in a wire update.
    virtual std::size_t signature_bytes(ByteView wire) const = 0;

    /// Neighbors as far as this node can tell; only S-BGP uses it.
    void set_neighbors(std::vector<NodeId> neighbors) { neighbors_ = std::move(neighbors); }

    const NodeId& self() const { return self_; }
    const ecs::KeyPair& key() const { return key_; }
    const KeyRegistry& registry() const { return registry_; }
    const Options& options() const { return options_; }
    const RoutingTable& table() const { return table_; }
    const RouterCounters& counters() const { return counters_; }

protected:
    /// Shared steps (b)-(d) over a decoded path with per-hop times.
    std::optional<ValidationError> check_loop(const std::vector<NodeId>& path) const;
    std::optional<ValidationError> check_better(const std::vector<NodeId>& path) const;
    std::optional<ValidationError> check_times(const std::vector<Timestamp>& times, Timestamp now) const;
    std::optional<ValidationError> check_sender(const NodeId& claimed, const NodeId& physical) const;
    Accepted install(const std::vector<NodeId>& path);
    void note_initiated();

    NodeId self_;
    ecs::KeyPair key_;
    const KeyRegistry& registry_;
    Options options_;
    RoutingTable table_;
    RouterCounters counters_;
    std::vector<NodeId> neighbors_;
};

}  // namespace ssbgp::routing

#endif  // SSBGP_ROUTING_COMMON_HPP
