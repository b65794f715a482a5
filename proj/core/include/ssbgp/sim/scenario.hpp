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

// Scenario description: a static unit-disk topology, the protocol all nodes
// run, node roles, initiators and scheduled data packets.

#ifndef SSBGP_SIM_SCENARIO_HPP
#define SSBGP_SIM_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ssbgp/routing/common.hpp"

namespace ssbgp::sim {

using routing::NodeId;
using routing::Protocol;
using routing::Timestamp;

enum class Role { kHonest, kTruncator, kRepeater };

std::string_view to_string(Role role);

struct Position {
    double x = 0;
    double y = 0;
};

struct NodeSpec {
    NodeId id;
    Position pos;
    Role role = Role::kHonest;
};

struct DataPacketSpec {
    NodeId src;
    NodeId dest;
    Timestamp at = 100;
};

class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Scenario {
    std::string name;
    double radius = 1.0;
    std::vector<NodeSpec> nodes;
    Protocol protocol = Protocol::kBgp;
    std::vector<NodeId> initiators;
    Timestamp threshold = routing::kDefaultThreshold;
    bool sender_identification = true;
    std::vector<DataPacketSpec> data_packets;
    std::vector<NodeId> extracted_keys;  // private keys handed to attackers

    /// Throws ScenarioError on duplicate or unknown ids, bad radius, etc.
    void validate() const;
    const NodeSpec* find(const NodeId& id) const;
};

using Adjacency = std::map<NodeId, std::set<NodeId>>;

/// Edge iff the euclidean distance is at most the radius.
Adjacency coverage_graph(const std::vector<NodeSpec>& nodes, double radius);
Adjacency coverage_graph(const Scenario& scenario);
bool is_connected(const Adjacency& adj);

/// JSON fields: radius, nodes [{id, x, y, role}], protocol, initiator
/// (string or list), threshold_t, sender_identification,
/// data_packets [{src, dest, at}], extracted_keys [ids], optional name.
Scenario parse_scenario(std::string_view json_text);
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& scenario);

/// Connected random topology of `n` honest nodes N0..N{n-1}, all of which
/// initiate. Same seed, same scenario.
Scenario random_scenario(std::uint64_t seed, std::size_t n, Protocol protocol);

}  // namespace ssbgp::sim

#endif  // SSBGP_SIM_SCENARIO_HPP
