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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "../oracles/bfs_oracle.hpp"
#include "ssbgp/sim/simulator.hpp"

namespace {

using namespace ssbgp::sim;
using ssbgp::routing::Protocol;

Scenario relay(const std::string& name) {
    return load_scenario(std::filesystem::path(SSBGP_SCENARIO_DIR) / (name + ".json"));
}

std::string next_hop(const Metrics& m, const NodeId& at, const NodeId& dest = "A") {
    const auto* r = m.route(at, dest);
    return r ? r->next_hop : "";
}

TEST(Coverage, RelayAdjacency) {
    auto adj = coverage_graph(relay("relay_bgp"));
    Adjacency want{{"A", {"B"}},      {"B", {"A", "C"}}, {"C", {"B", "D", "E"}}, {"D", {"C", "F"}},
                   {"E", {"C", "X"}}, {"F", {"D", "Y"}}, {"X", {"E"}},           {"Y", {"F"}}};
    EXPECT_EQ(adj, want);
    EXPECT_TRUE(is_connected(adj));
}

TEST(Coverage, BoundaryAndCoincidentNodes) {
    std::vector<NodeSpec> nodes{{"P", {0, 0}}, {"Q", {0, 0}}, {"R", {0.6, 0.8}}, {"S", {3, 3}}};
    auto adj = coverage_graph(nodes, 1.0);
    EXPECT_EQ(adj["P"], (std::set<NodeId>{"Q", "R"}));  // distance exactly 1 counts
    EXPECT_TRUE(adj["S"].empty());
    EXPECT_FALSE(is_connected(adj));
    auto none = coverage_graph(nodes, 0.0);
    EXPECT_EQ(none["P"], std::set<NodeId>{"Q"});
}

TEST(ScenarioParse, RejectsBadInput) {
    EXPECT_THROW(parse_scenario("not json"), ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"radius": 1, "nodes": [], "protocol": "bgp", "initiator": "A"})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"radius": 1, "protocol": "ospf", "initiator": "A",
                                    "nodes": [{"id": "A", "x": 0, "y": 0}]})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"radius": 1, "protocol": "bgp", "initiator": "Z",
                                    "nodes": [{"id": "A", "x": 0, "y": 0}]})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"radius": 1, "protocol": "bgp", "initiator": "A",
                                    "nodes": [{"id": "A", "x": 0, "y": 0}, {"id": "A", "x": 1, "y": 0}]})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"radius": -1, "protocol": "bgp", "initiator": "A",
                                    "nodes": [{"id": "A", "x": 0, "y": 0}]})"),
                 ScenarioError);
    EXPECT_THROW(parse_scenario(R"({"radius": 1, "protocol": "bgp", "initiator": "A",
                                    "nodes": [{"id": "A", "x": 0, "y": 0, "role": "SPY"}]})"),
                 ScenarioError);
}

TEST(ScenarioParse, RoundTrip) {
    auto s = relay("relay_ssbgp_truncation_extracted");
    auto again = parse_scenario(scenario_to_json(s));
    EXPECT_EQ(scenario_to_json(again), scenario_to_json(s));
    EXPECT_EQ(again.extracted_keys, (std::vector<NodeId>{"B", "C", "D"}));
    EXPECT_EQ(again.find("F")->role, Role::kTruncator);
}

TEST(Relay, HonestBgpRoutesAndDelivery) {
    auto m = run_scenario(relay("relay_bgp"));
    EXPECT_EQ(next_hop(m, "D"), "C");
    EXPECT_EQ(m.route("D", "A")->metric, 3u);
    ASSERT_EQ(m.packets.size(), 2u);
    EXPECT_TRUE(m.packets[0].delivered);
    EXPECT_EQ(m.packets[0].path, (std::vector<NodeId>{"E", "C", "B", "A"}));
    EXPECT_EQ(m.intercepted_packets(), 0u);
}

TEST(Relay, HonestRunsAgreeAcrossProtocols) {
    auto bgp = run_scenario(relay("relay_bgp"));
    for (auto name : {"relay_sbgp", "relay_ssbgp"}) {
        auto m = run_scenario(relay(name));
        for (const auto& [id, n] : bgp.nodes) EXPECT_EQ(m.nodes.at(id).table.entries(), n.table.entries()) << name << id;
    }
}

TEST(Relay, BgpTruncationDivertsD) {
    auto m = run_scenario(relay("relay_bgp_truncation"));
    EXPECT_EQ(next_hop(m, "D"), "F");
    EXPECT_EQ(m.route("D", "A")->metric, 2u);
    EXPECT_EQ(m.nodes.at("F").forged_updates, 1u);
    const auto& from_d = m.packets[1];
    EXPECT_EQ(from_d.src, "D");
    EXPECT_EQ(from_d.intercepted_by, std::vector<NodeId>{"F"});
}

TEST(Relay, SbgpTruncationRejected) {
    auto m = run_scenario(relay("relay_sbgp_truncation"));
    EXPECT_EQ(next_hop(m, "D"), "C");
    EXPECT_EQ(m.nodes.at("D").rejections_of("BadSignature"), 1u);
    EXPECT_EQ(m.intercepted_packets(), 0u);
}

TEST(Relay, SsbgpTruncationRejectedOnce) {
    auto m = run_scenario(relay("relay_ssbgp_truncation"));
    EXPECT_EQ(next_hop(m, "D"), "C");
    EXPECT_EQ(m.nodes.at("D").rejections_of("BadSignature"), 1u);
    EXPECT_EQ(m.nodes.at("D").rejections.size(), 1u);
    EXPECT_EQ(m.intercepted_packets(), 0u);
}

TEST(Relay, SsbgpStripSucceedsWithExtractedKeys) {
    auto m = run_scenario(relay("relay_ssbgp_truncation_extracted"));
    EXPECT_EQ(next_hop(m, "D"), "F");
    EXPECT_EQ(m.nodes.at("D").rejections_of("BadSignature"), 0u);
    EXPECT_GE(m.intercepted_packets(), 1u);
}

TEST(Relay, RepeaterWithSenderIdentification) {
    for (auto p : {"bgp", "sbgp", "ssbgp"}) {
        auto m = run_scenario(relay(std::string("relay_") + p + "_repeater_on"));
        EXPECT_EQ(m.route("Y", "A"), nullptr) << p;
        EXPECT_EQ(m.nodes.at("Y").rejections_of("SenderMismatch"), 1u) << p;
    }
}

TEST(Relay, RepeaterWithoutSenderIdentification) {
    for (auto p : {"bgp", "sbgp", "ssbgp"}) {
        auto m = run_scenario(relay(std::string("relay_") + p + "_repeater_off"));
        ASSERT_NE(m.route("Y", "A"), nullptr) << p;
        // F splices itself in unseen: Y believes D is adjacent.
        EXPECT_EQ(next_hop(m, "Y"), "D") << p;
        EXPECT_EQ(m.route("Y", "A")->metric, 4u) << p;
        EXPECT_EQ(next_hop(m, "D"), "C") << p;
    }
}

TEST(Relay, PerceivedNeighborsSeeThroughRepeaters) {
    auto off = relay("relay_sbgp_repeater_off");
    auto on = relay("relay_sbgp_repeater_on");
    EXPECT_EQ(perceived_neighbors(off, coverage_graph(off), "D"), (std::vector<NodeId>{"C", "Y"}));
    EXPECT_EQ(perceived_neighbors(on, coverage_graph(on), "D"), (std::vector<NodeId>{"C", "F"}));
}

TEST(Relay, MessageComplexityAtC) {
    EXPECT_EQ(run_scenario(relay("relay_sbgp")).nodes.at("C").broadcasts_sent, 2u);
    EXPECT_EQ(run_scenario(relay("relay_ssbgp")).nodes.at("C").broadcasts_sent, 1u);
}

TEST(Relay, SignatureByteAccounting) {
    auto ss = run_scenario(relay("relay_ssbgp"));
    auto bgp = run_scenario(relay("relay_bgp"));
    for (const auto& [id, n] : ss.nodes) {
        EXPECT_EQ(n.signature_bytes_sent, 48 * n.broadcasts_sent) << id;
        const auto& b = bgp.nodes.at(id);
        ASSERT_EQ(b.broadcasts_sent, 1u) << id;
        auto hops = bgp.route(id, "A")->metric;
        EXPECT_EQ(b.signature_bytes_sent, 48u * (hops + 1)) << id;
    }
}

TEST(Sim, BroadcastsStayInsideCoverage) {
    for (auto name : {"relay_bgp_truncation", "relay_sbgp_repeater_off", "relay_ssbgp"}) {
        auto s = relay(name);
        auto adj = coverage_graph(s);
        auto m = run_scenario(s);
        ASSERT_FALSE(m.trace.empty());
        for (const auto& r : m.trace) EXPECT_TRUE(adj.at(r.sender).count(r.receiver)) << name;
    }
}

TEST(Sim, Deterministic) {
    for (const auto& e : std::filesystem::directory_iterator(SSBGP_SCENARIO_DIR)) {
        auto s = load_scenario(e.path());
        EXPECT_EQ(run_scenario(s).to_json(), run_scenario(s).to_json()) << e.path();
    }
    EXPECT_NE(run_scenario(relay("relay_ssbgp"), 0).to_json(), run_scenario(relay("relay_ssbgp"), 1).to_json());
}

TEST(Sim, MetricsJsonShape) {
    auto m = run_scenario(relay("relay_bgp_truncation"));
    auto text = m.to_json();
    EXPECT_EQ(text.back(), '\n');
    EXPECT_NE(text.find("\"intercepted_packets\": 2"), std::string::npos);
    EXPECT_NE(text.find("\"scenario\": \"relay_bgp_truncation\""), std::string::npos);
}

TEST(RandomTopology, DeterministicAndConnected) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto a = random_scenario(seed, 10, Protocol::kSsbgp);
        EXPECT_EQ(scenario_to_json(a), scenario_to_json(random_scenario(seed, 10, Protocol::kSsbgp)));
        EXPECT_TRUE(is_connected(coverage_graph(a)));
        EXPECT_EQ(a.nodes.size(), 10u);
    }
    EXPECT_NE(scenario_to_json(random_scenario(1, 10, Protocol::kBgp)),
              scenario_to_json(random_scenario(2, 10, Protocol::kBgp)));
    auto one = random_scenario(5, 1, Protocol::kBgp);
    EXPECT_EQ(run_scenario(one).nodes.at("N0").table.entries().size(), 1u);
}

TEST(RandomTopology, HonestTablesMatchBfs) {
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        for (auto proto : {Protocol::kBgp, Protocol::kSbgp, Protocol::kSsbgp}) {
            auto s = random_scenario(seed, 8, proto);
            auto adj = coverage_graph(s);
            auto m = run_scenario(s, seed);
            for (const auto& dest : s.initiators) {
                auto dist = ssbgp::oracle::bfs_hops(adj, dest);
                for (const auto& [id, d] : dist) {
                    const auto* r = m.route(id, dest);
                    ASSERT_NE(r, nullptr) << seed << id << dest;
                    EXPECT_EQ(r->metric, d);
                    if (d > 0) {
                        EXPECT_TRUE(adj.at(id).count(r->next_hop));
                        EXPECT_EQ(dist.at(r->next_hop) + 1, d);
                    }
                }
            }
        }
    }
}

TEST(Sim, DataToUnknownDestinationIsNotDelivered) {
    auto s = relay("relay_ssbgp");
    s.data_packets = {{"D", "X", 100}};  // only A advertised
    auto m = run_scenario(s);
    EXPECT_FALSE(m.packets[0].delivered);
    EXPECT_FALSE(m.packets[0].blackholed);
}

}  // namespace
