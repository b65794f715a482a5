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

#include "ssbgp/sim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <queue>
#include <random>
#include <sstream>

#include "json.hpp"

namespace ssbgp::sim {

using nlohmann::json;

namespace {

std::string upper(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    return s;
}

Role parse_role(const std::string& text) {
    auto r = upper(text);
    if (r == "HONEST") return Role::kHonest;
    if (r == "TRUNCATOR") return Role::kTruncator;
    if (r == "REPEATER") return Role::kRepeater;
    throw ScenarioError("unknown role '" + text + "'");
}

template <class T>
T field(const json& obj, const char* name) {
    if (!obj.contains(name)) throw ScenarioError(std::string("missing field '") + name + "'");
    try {
        return obj.at(name).get<T>();
    } catch (const json::exception&) {
        throw ScenarioError(std::string("field '") + name + "' has the wrong type");
    }
}

template <class T>
T field_or(const json& obj, const char* name, T fallback) {
    return obj.contains(name) ? field<T>(obj, name) : fallback;
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

std::string_view to_string(Role role) {
    switch (role) {
        case Role::kHonest: return "HONEST";
        case Role::kTruncator: return "TRUNCATOR";
        case Role::kRepeater: return "REPEATER";
    }
    return "?";
}

const NodeSpec* Scenario::find(const NodeId& id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

void Scenario::validate() const {
    if (!std::isfinite(radius) || radius < 0) throw ScenarioError("radius must be a finite non-negative number");
    if (nodes.empty()) throw ScenarioError("scenario has no nodes");
    std::set<NodeId> ids;
    for (const auto& n : nodes) {
        if (n.id.empty() || n.id.size() > 255) throw ScenarioError("node id must be 1..255 bytes");
        if (!std::isfinite(n.pos.x) || !std::isfinite(n.pos.y)) throw ScenarioError("position of " + n.id + " is not finite");
        if (!ids.insert(n.id).second) throw ScenarioError("duplicate node id '" + n.id + "'");
    }
    auto known = [&](const NodeId& id, const char* what) {
        if (!ids.contains(id)) throw ScenarioError(std::string(what) + " names unknown node '" + id + "'");
    };
    if (initiators.empty()) throw ScenarioError("scenario has no initiator");
    for (const auto& i : initiators) known(i, "initiator");
    for (const auto& p : data_packets) {
        known(p.src, "data packet source");
        known(p.dest, "data packet destination");
    }
    for (const auto& k : extracted_keys) known(k, "extracted_keys");
}

Adjacency coverage_graph(const std::vector<NodeSpec>& nodes, double radius) {
    Adjacency adj;
    for (const auto& n : nodes) adj[n.id];
    const double r2 = radius * radius;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            double dx = nodes[i].pos.x - nodes[j].pos.x;
            double dy = nodes[i].pos.y - nodes[j].pos.y;
            if (dx * dx + dy * dy <= r2) {
                adj[nodes[i].id].insert(nodes[j].id);
                adj[nodes[j].id].insert(nodes[i].id);
            }
        }
    }
    return adj;
}

Adjacency coverage_graph(const Scenario& scenario) { return coverage_graph(scenario.nodes, scenario.radius); }

bool is_connected(const Adjacency& adj) {
    if (adj.empty()) return true;
    std::set<NodeId> seen{adj.begin()->first};
    std::queue<NodeId> q;
    q.push(adj.begin()->first);
    while (!q.empty()) {
        auto u = q.front();
        q.pop();
        for (const auto& v : adj.at(u))
            if (seen.insert(v).second) q.push(v);
    }
    return seen.size() == adj.size();
}

Scenario parse_scenario(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");

    Scenario s;
    s.name = field_or<std::string>(doc, "name", "");
    s.radius = field<double>(doc, "radius");
    auto proto = routing::parse_protocol(field<std::string>(doc, "protocol"));
    if (!proto) throw ScenarioError("unknown protocol '" + field<std::string>(doc, "protocol") + "'");
    s.protocol = *proto;

    auto nodes = field<json>(doc, "nodes");
    if (!nodes.is_array()) throw ScenarioError("'nodes' must be an array");
    for (const auto& n : nodes) {
        NodeSpec spec;
        spec.id = field<std::string>(n, "id");
        spec.pos = {field<double>(n, "x"), field<double>(n, "y")};
        spec.role = parse_role(field_or<std::string>(n, "role", "HONEST"));
        s.nodes.push_back(std::move(spec));
    }

    auto init = field<json>(doc, "initiator");
    if (init.is_string()) {
        s.initiators.push_back(init.get<std::string>());
    } else if (init.is_array()) {
        for (const auto& i : init) {
            if (!i.is_string()) throw ScenarioError("'initiator' entries must be strings");
            s.initiators.push_back(i.get<std::string>());
        }
    } else {
        throw ScenarioError("'initiator' must be a string or a list of strings");
    }

    auto threshold = field_or<std::int64_t>(doc, "threshold_t", static_cast<std::int64_t>(routing::kDefaultThreshold));
    if (threshold < 0) throw ScenarioError("threshold_t must be non-negative");
    s.threshold = static_cast<Timestamp>(threshold);
    s.sender_identification = field_or<bool>(doc, "sender_identification", true);

    for (const auto& p : field_or<json>(doc, "data_packets", json::array())) {
        DataPacketSpec d;
        d.src = field<std::string>(p, "src");
        d.dest = field<std::string>(p, "dest");
        auto at = field_or<std::int64_t>(p, "at", 100);
        if (at < 0) throw ScenarioError("data packet time must be non-negative");
        d.at = static_cast<Timestamp>(at);
        s.data_packets.push_back(std::move(d));
    }
    s.extracted_keys = field_or<std::vector<std::string>>(doc, "extracted_keys", {});

    s.validate();
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError("cannot open scenario file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    auto s = parse_scenario(buf.str());
    if (s.name.empty()) s.name = path.stem().string();
    return s;
}

std::string scenario_to_json(const Scenario& s) {
    json doc;
    doc["name"] = s.name;
    doc["radius"] = s.radius;
    doc["protocol"] = std::string(routing::to_string(s.protocol));
    doc["initiator"] = s.initiators;
    doc["threshold_t"] = s.threshold;
    doc["sender_identification"] = s.sender_identification;
    doc["extracted_keys"] = s.extracted_keys;
    doc["nodes"] = json::array();
    for (const auto& n : s.nodes)
        doc["nodes"].push_back({{"id", n.id}, {"x", n.pos.x}, {"y", n.pos.y}, {"role", std::string(to_string(n.role))}});
    doc["data_packets"] = json::array();
    for (const auto& p : s.data_packets) doc["data_packets"].push_back({{"src", p.src}, {"dest", p.dest}, {"at", p.at}});
    return doc.dump(2) + "\n";
}

Scenario random_scenario(std::uint64_t seed, std::size_t n, Protocol protocol) {
    if (n == 0) throw std::invalid_argument("random topology needs at least one node");
    std::mt19937_64 rng(seed);
    const double side = std::max(1.0, 0.9 * std::sqrt(static_cast<double>(n)));
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Scenario s;
        s.name = "random-" + std::to_string(seed) + "-" + std::to_string(n);
        s.radius = 1.0;
        s.protocol = protocol;
        for (std::size_t i = 0; i < n; ++i) {
            double x = unit_double(rng) * side;
            double y = unit_double(rng) * side;
            s.nodes.push_back({"N" + std::to_string(i), {x, y}, Role::kHonest});
            s.initiators.push_back(s.nodes.back().id);
        }
        if (is_connected(coverage_graph(s))) return s;
    }
    throw std::runtime_error("could not draw a connected topology");
}

}  // namespace ssbgp::sim
