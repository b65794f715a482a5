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
 * Discrete-event broadcast simulator.
 *
 * Every transmission reaches all nodes in the sender's disk one sim-ms
 * later; there is no loss. Events run in (time, insertion) order, so a run
 * is a pure function of (scenario, seed). Each node handles a given
 * serialized update at most once.
 *
 * Attackers:
 *   TRUNCATOR  on its first accepted update with at least two hops, sends a
 *              forged <R_1, self> update instead of the honest one, and
 *              swallows data packets routed through it.
 *   REPEATER   rebroadcasts every control update it hears, unmodified, and
 *              never advertises itself. Data packets are forwarded normally.
 *              Without sender identification it is invisible, so neighbors
 *              see through it.
 */

#ifndef SSBGP_SIM_SIMULATOR_HPP
#define SSBGP_SIM_SIMULATOR_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ssbgp/routing/common.hpp"
#include "ssbgp/sim/scenario.hpp"

namespace ssbgp::sim {

struct Rejection {
    std::string kind;
    std::size_t position = 0;
    NodeId from;
    Timestamp time = 0;
    std::string detail;
};

struct NodeMetrics {
    Role role = Role::kHonest;
    std::uint64_t broadcasts_sent = 0;  // control-plane transmissions
    std::uint64_t control_bytes_sent = 0;
    std::uint64_t signature_bytes_sent = 0;
    std::uint64_t data_broadcasts = 0;
    std::uint64_t updates_received = 0;
    std::uint64_t updates_accepted = 0;
    std::uint64_t signature_checks = 0;
    std::uint64_t forged_updates = 0;
    std::vector<Rejection> rejections;
    routing::RoutingTable table;

    std::size_t rejections_of(std::string_view kind) const;
};

struct PacketOutcome {
    NodeId src;
    NodeId dest;
    Timestamp at = 0;
    bool delivered = false;
    std::vector<NodeId> path;            // src..dest along first receptions
    std::vector<NodeId> intercepted_by;  // attackers the packet was routed to
    bool blackholed = false;             // intercepted and never delivered
};

/// One physical reception, for instrumentation.
struct Reception {
    Timestamp time = 0;
    NodeId sender;
    NodeId receiver;
    bool control = true;
};

struct Metrics {
    std::string scenario;
    Protocol protocol = Protocol::kBgp;
    std::uint64_t seed = 0;
    std::map<NodeId, NodeMetrics> nodes;
    std::vector<PacketOutcome> packets;
    std::vector<Reception> trace;  // not serialized

    std::uint64_t intercepted_packets() const;
    std::uint64_t blackholed_packets() const;
    const routing::RoutingTableEntry* route(const NodeId& at, const NodeId& destination) const;

    /// Stable, sorted-key JSON (2-space indent, trailing newline).
    std::string to_json() const;
};

/// Keys are derived from "node-key:<seed>:<id>".
Metrics run_scenario(const Scenario& scenario, std::uint64_t seed = 0);

/// Neighbor set a node perceives: the disk, with repeaters seen through
/// when senders cannot be identified.
std::vector<NodeId> perceived_neighbors(const Scenario& scenario, const Adjacency& adj, const NodeId& node);

}  // namespace ssbgp::sim

#endif  // SSBGP_SIM_SIMULATOR_HPP
