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

#include "ssbgp/routing/common.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "ssbgp/routing.hpp"

namespace ssbgp::routing {

std::string_view to_string(Protocol p) {
    switch (p) {
        case Protocol::kBgp: return "bgp";
        case Protocol::kSbgp: return "sbgp";
        case Protocol::kSsbgp: return "ssbgp";
    }
    return "?";
}

std::optional<Protocol> parse_protocol(std::string_view text) {
    std::string norm;
    for (char ch : text)
        if (ch != '-' && ch != '_') norm.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    if (norm == "bgp") return Protocol::kBgp;
    if (norm == "sbgp") return Protocol::kSbgp;
    if (norm == "ssbgp") return Protocol::kSsbgp;
    return std::nullopt;
}

std::string_view to_string(ValidationError::Kind kind) {
    using K = ValidationError::Kind;
    switch (kind) {
        case K::kBadFormat: return "BadFormat";
        case K::kLoopDetected: return "LoopDetected";
        case K::kNotBetter: return "NotBetter";
        case K::kStaleTimestamp: return "StaleTimestamp";
        case K::kBadSignature: return "BadSignature";
        case K::kNotAddressedToMe: return "NotAddressedToMe";
        case K::kSenderMismatch: return "SenderMismatch";
    }
    return "?";
}

// --- registry and table ---------------------------------------------------------

void KeyRegistry::add(const NodeId& id, const ecs::PublicKey& key) {
    if (id.empty() || id.size() > 255) throw std::invalid_argument("node id must be 1..255 bytes");
    for (const auto& [other, k] : keys_)
        if (k == key && other != id) throw std::invalid_argument("public key already registered to " + other);
    keys_[id] = key;
}

const ecs::PublicKey* KeyRegistry::find(const NodeId& id) const {
    auto it = keys_.find(id);
    return it == keys_.end() ? nullptr : &it->second;
}

const RoutingTableEntry* RoutingTable::find(const NodeId& destination) const {
    auto it = entries_.find(destination);
    return it == entries_.end() ? nullptr : &it->second;
}

bool RoutingTable::is_improvement(const NodeId& destination, std::uint32_t metric) const {
    const auto* e = find(destination);
    return e == nullptr || metric < e->metric;
}

bool RoutingTable::offer(const RoutingTableEntry& entry) {
    if (!is_improvement(entry.destination, entry.metric)) return false;
    entries_[entry.destination] = entry;
    return true;
}

bool RoutingTable::apply(const std::vector<NodeId>& path) {
    if (path.empty()) throw std::invalid_argument("empty path");
    return offer({path.front(), path.back(), static_cast<std::uint32_t>(path.size())});
}

ForwardAction forward_decision(const RoutingTable& table, const NodeId& self, const NodeId& packet_dest,
                               const NodeId& packet_sender) {
    if (packet_dest == self) return ForwardAction::kDrop;
    const auto* route = table.find(packet_dest);
    if (route == nullptr) return ForwardAction::kDrop;
    if (route->next_hop == packet_sender) return ForwardAction::kDrop;
    return ForwardAction::kForward;
}

// --- baseline signatures -----------------------------------------------------------

namespace baseline {

namespace {
bilinear::G1Element digest(std::string_view tag, ByteView message) {
    Bytes input = to_bytes(tag);
    input.insert(input.end(), message.begin(), message.end());
    return bilinear::hash_to_g1(input);
}
}  // namespace

bilinear::G1Element sign(const ecs::KeyPair& kp, std::string_view tag, ByteView message) {
    return digest(tag, message).pow(kp.private_key());
}

bool verify(const ecs::PublicKey& key, std::string_view tag, ByteView message, const bilinear::G1Element& sig) {
    if (sig.is_identity()) return false;
    std::vector<bilinear::PairingTerm> terms{
        {sig.inverse(), bilinear::DualElement::generator()},
        {digest(tag, message), key.point()},
    };
    return bilinear::pairing_product(terms).is_one();
}

}  // namespace baseline

// --- router base -----------------------------------------------------------------

Router::Router(NodeId self, ecs::KeyPair key, const KeyRegistry& registry, Options options)
    : self_(std::move(self)), key_(std::move(key)), registry_(registry), options_(options) {
    if (self_.empty() || self_.size() > 255) throw std::invalid_argument("node id must be 1..255 bytes");
}

std::optional<ValidationError> Router::check_loop(const std::vector<NodeId>& path) const {
    std::set<NodeId> seen;
    for (std::size_t j = 0; j < path.size(); ++j) {
        if (path[j] == self_) return ValidationError{ValidationError::Kind::kLoopDetected, j, "path contains self"};
        if (!seen.insert(path[j]).second)
            return ValidationError{ValidationError::Kind::kLoopDetected, j, "path repeats " + path[j]};
    }
    return std::nullopt;
}

std::optional<ValidationError> Router::check_better(const std::vector<NodeId>& path) const {
    if (!table_.is_improvement(path.front(), static_cast<std::uint32_t>(path.size())))
        return ValidationError{ValidationError::Kind::kNotBetter, path.size() - 1, "route to " + path.front()};
    return std::nullopt;
}

std::optional<ValidationError> Router::check_times(const std::vector<Timestamp>& times, Timestamp now) const {
    auto stale = [&](Timestamp earlier, Timestamp later) {
        return later < earlier || later - earlier > options_.threshold;
    };
    for (std::size_t j = 1; j < times.size(); ++j)
        if (stale(times[j - 1], times[j]))
            return ValidationError{ValidationError::Kind::kStaleTimestamp, j, "hop delta outside threshold"};
    if (!times.empty() && stale(times.back(), now))
        return ValidationError{ValidationError::Kind::kStaleTimestamp, times.size(), "update too old"};
    return std::nullopt;
}

std::optional<ValidationError> Router::check_sender(const NodeId& claimed, const NodeId& physical) const {
    if (options_.sender_identification && claimed != physical)
        return ValidationError{ValidationError::Kind::kSenderMismatch, 0,
                               "sent by " + physical + " but last hop is " + claimed};
    return std::nullopt;
}

Accepted Router::install(const std::vector<NodeId>& path) {
    Accepted a;
    a.route = {path.front(), path.back(), static_cast<std::uint32_t>(path.size())};
    a.path = path;
    table_.offer(a.route);
    ++counters_.updates_accepted;
    return a;
}

void Router::note_initiated() { table_.offer({self_, self_, 0}); }

std::unique_ptr<Router> make_router(Protocol protocol, NodeId self, ecs::KeyPair key, const KeyRegistry& registry,
                                    Router::Options options) {
    switch (protocol) {
        case Protocol::kBgp: return std::make_unique<BgpRouter>(std::move(self), std::move(key), registry, options);
        case Protocol::kSbgp: return std::make_unique<SbgpRouter>(std::move(self), std::move(key), registry, options);
        case Protocol::kSsbgp:
            return std::make_unique<SsbgpRouter>(std::move(self), std::move(key), registry, options);
    }
    throw std::invalid_argument("unknown protocol");
}

}  // namespace ssbgp::routing
