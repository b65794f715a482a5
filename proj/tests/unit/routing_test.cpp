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

#include <map>

#include "ssbgp/routing.hpp"
#include "test_support.hpp"

namespace ssbgp::routing {
namespace {

using Kind = ValidationError::Kind;

struct Net {
    KeyRegistry registry;
    std::map<NodeId, ecs::KeyPair> keys;

    explicit Net(std::initializer_list<NodeId> ids) {
        for (const auto& id : ids) add(id);
    }
    void add(const NodeId& id) {
        auto kp = testing::key_from("routing/" + id);
        registry.add(id, kp.public_key());
        keys.emplace(id, kp);
    }
    template <class R>
    R router(const NodeId& id, Router::Options opt = {}) {
        return R(id, keys.at(id), registry, opt);
    }
};

template <class T>
const ValidationError& rejected(const std::variant<T, ValidationError>& r) {
    EXPECT_TRUE(std::holds_alternative<ValidationError>(r));
    static const ValidationError none{};
    return std::holds_alternative<ValidationError>(r) ? std::get<ValidationError>(r) : none;
}

// --- table and forwarding --------------------------------------------------------

TEST(RoutingTable, ApplyAndTieKeep) {
    RoutingTable t;
    EXPECT_TRUE(t.apply({"A", "B"}));
    EXPECT_EQ(*t.find("A"), (RoutingTableEntry{"A", "B", 2}));
    EXPECT_FALSE(t.offer({"A", "X", 2}));
    EXPECT_EQ(t.find("A")->next_hop, "B");

    RoutingTable u;
    u.offer({"A", "Q", 3});
    EXPECT_TRUE(u.offer({"A", "B", 2}));
    EXPECT_EQ(*u.find("A"), (RoutingTableEntry{"A", "B", 2}));
    EXPECT_THROW(u.apply({}), std::invalid_argument);
}

TEST(Forwarding, DecisionRule) {
    RoutingTable d;
    d.offer({"A", "C", 3});
    EXPECT_EQ(forward_decision(d, "D", "A", "C"), ForwardAction::kDrop);
    RoutingTable c;
    c.offer({"A", "B", 2});
    EXPECT_EQ(forward_decision(c, "C", "A", "E"), ForwardAction::kForward);
    EXPECT_EQ(forward_decision(c, "C", "Z", "E"), ForwardAction::kDrop);
    EXPECT_EQ(forward_decision(c, "C", "C", "E"), ForwardAction::kDrop);
}

TEST(Registry, RejectsDuplicateKeysAndBadIds) {
    Net net{"A"};
    EXPECT_THROW(net.registry.add("B", net.keys.at("A").public_key()), std::invalid_argument);
    EXPECT_THROW(net.registry.add("", testing::key_from("x").public_key()), std::invalid_argument);
    EXPECT_THROW(net.registry.add(std::string(256, 'n'), testing::key_from("y").public_key()),
                 std::invalid_argument);
}

TEST(Baseline, SignVerify) {
    auto kp = testing::key_from("base");
    auto sig = baseline::sign(kp, "T", as_bytes("msg"));
    EXPECT_TRUE(baseline::verify(kp.public_key(), "T", as_bytes("msg"), sig));
    EXPECT_FALSE(baseline::verify(kp.public_key(), "U", as_bytes("msg"), sig));
    EXPECT_FALSE(baseline::verify(kp.public_key(), "T", as_bytes("msh"), sig));
    EXPECT_FALSE(baseline::verify(testing::key_from("other").public_key(), "T", as_bytes("msg"), sig));
    EXPECT_FALSE(baseline::verify(kp.public_key(), "T", as_bytes("msg"), bilinear::G1Element{}));
}

TEST(Protocol, Names) {
    EXPECT_EQ(parse_protocol("SS-BGP"), Protocol::kSsbgp);
    EXPECT_EQ(parse_protocol("sbgp"), Protocol::kSbgp);
    EXPECT_EQ(parse_protocol("BGP"), Protocol::kBgp);
    EXPECT_FALSE(parse_protocol("ospf"));
    EXPECT_EQ(to_string(Kind::kBadSignature), "BadSignature");
}

// --- BGP --------------------------------------------------------------------------

TEST(Bgp, InitiateProducesOneSignedEntry) {
    Net net{"A"};
    auto u = bgp_initiate("A", 0, net.keys.at("A"));
    ASSERT_EQ(u.entries.size(), 1u);
    EXPECT_EQ(u.entries[0].prev, "");
    EXPECT_EQ(u.entries[0].node, "A");
    EXPECT_EQ(u.entries[0].time, 0u);
    EXPECT_TRUE(baseline::verify(net.keys.at("A").public_key(), kBgpTag, u.entries[0].statement(), u.entries[0].sig));
    EXPECT_FALSE(u.entries[0].sig == bgp_initiate("A", 5, net.keys.at("A")).entries[0].sig);
    EXPECT_EQ(BgpUpdate::from_wire(u.to_wire()), u);
}

TEST(Bgp, ChainThroughBGivesTwoHopRouteAtC) {
    Net net{"A", "B", "C"};
    auto b = net.router<BgpRouter>("B");
    auto c = net.router<BgpRouter>("C");
    auto ub = std::get<BgpUpdate>(b.process(bgp_initiate("A", 0, net.keys.at("A")), "A", 1));
    EXPECT_EQ(*b.table().find("A"), (RoutingTableEntry{"A", "A", 1}));
    auto uc = std::get<BgpUpdate>(c.process(ub, "B", 2));
    EXPECT_EQ(*c.table().find("A"), (RoutingTableEntry{"A", "B", 2}));
    ASSERT_EQ(uc.entries.size(), 3u);
    EXPECT_EQ(uc.entries[2].prev, "B");
    EXPECT_EQ(uc.entries[2].node, "C");

    // C's update arriving back at B
    EXPECT_EQ(rejected(b.process(uc, "C", 3)).kind, Kind::kLoopDetected);
}

TEST(Bgp, ForgedSignatureIsRejectedAtItsIndex) {
    Net net{"A", "B", "C"};
    auto b = net.router<BgpRouter>("B");
    auto c = net.router<BgpRouter>("C");
    auto ub = std::get<BgpUpdate>(b.process(bgp_initiate("A", 0, net.keys.at("A")), "A", 1));

    auto forged = ub;
    forged.entries[1].sig = forged.entries[0].sig;  // a valid point, wrong signature
    auto e = rejected(c.process(forged, "B", 2));
    EXPECT_EQ(e.kind, Kind::kBadSignature);
    EXPECT_EQ(e.position, 1u);

    // One flipped bit in the signed time of entry 0.
    auto wire = ub.to_wire();
    std::size_t time_offset = 2 + 1 + 0 + 1 + 1;  // count, prev "", node "A"
    wire[time_offset + 7] ^= 0x01;
    auto r = c.receive(wire, "B", 2);
    ASSERT_TRUE(std::holds_alternative<ValidationError>(r));
    EXPECT_EQ(std::get<ValidationError>(r).kind, Kind::kBadSignature);
    EXPECT_EQ(std::get<ValidationError>(r).position, 0u);

    // Corrupted point bytes fail decoding instead.
    wire = ub.to_wire();
    std::fill(wire.end() - bilinear::kPointBytes, wire.end(), 0xff);
    r = c.receive(wire, "B", 2);
    EXPECT_EQ(std::get<ValidationError>(r).kind, Kind::kBadFormat);
}

TEST(Bgp, TimestampThreshold) {
    Net net{"A", "B", "C"};
    auto b = net.router<BgpRouter>("B", {.threshold = 10});
    auto ok = net.router<BgpRouter>("C", {.threshold = 10});
    auto late = net.router<BgpRouter>("C", {.threshold = 10});
    auto ub = std::get<BgpUpdate>(b.process(bgp_initiate("A", 0, net.keys.at("A")), "A", 10));  // delta == t
    EXPECT_TRUE(std::holds_alternative<BgpUpdate>(ok.process(ub, "B", 20)));
    auto e = rejected(late.process(ub, "B", 21));
    EXPECT_EQ(e.kind, Kind::kStaleTimestamp);
    EXPECT_EQ(e.position, 2u);

    // a gap between two entries
    auto gap = BgpUpdate{{bgp_sign_entry(net.keys.at("A"), "", "A", 0), bgp_sign_entry(net.keys.at("B"), "A", "B", 11)}};
    auto fresh = net.router<BgpRouter>("C", {.threshold = 10});
    EXPECT_EQ(rejected(fresh.process(gap, "B", 12)).position, 1u);
    // time running backwards
    auto back = BgpUpdate{{bgp_sign_entry(net.keys.at("A"), "", "A", 5), bgp_sign_entry(net.keys.at("B"), "A", "B", 4)}};
    EXPECT_EQ(rejected(fresh.process(back, "B", 6)).kind, Kind::kStaleTimestamp);
    EXPECT_EQ(rejected(fresh.process(ub, "B", 9)).kind, Kind::kStaleTimestamp);  // from the future
}

TEST(Bgp, CheapChecksRunBeforeSignatures) {
    Net net{"A", "B", "C"};
    auto c = net.router<BgpRouter>("C");
    auto a0 = bgp_sign_entry(net.keys.at("A"), "", "A", 0);

    EXPECT_EQ(rejected(c.process(BgpUpdate{}, "A", 1)).kind, Kind::kBadFormat);
    auto broken = BgpUpdate{{a0, bgp_sign_entry(net.keys.at("B"), "Q", "B", 1)}};
    EXPECT_EQ(rejected(c.process(broken, "B", 2)).kind, Kind::kBadFormat);
    auto unknown = BgpUpdate{{bgp_sign_entry(testing::key_from("z"), "", "Z", 0)}};
    EXPECT_EQ(rejected(c.process(unknown, "Z", 1)).kind, Kind::kBadFormat);
    EXPECT_EQ(c.receive(Bytes{0x00}, "A", 1).index(), 1u);
    auto loop = BgpUpdate{{a0, bgp_sign_entry(net.keys.at("C"), "A", "C", 1)}};
    EXPECT_EQ(rejected(c.process(loop, "C", 2)).kind, Kind::kLoopDetected);
    auto repeat = BgpUpdate{{a0, bgp_sign_entry(net.keys.at("A"), "A", "A", 1)}};
    EXPECT_EQ(rejected(c.process(repeat, "A", 2)).kind, Kind::kLoopDetected);
    EXPECT_EQ(rejected(c.process(BgpUpdate{{a0}}, "B", 1)).kind, Kind::kSenderMismatch);
    EXPECT_EQ(c.counters().signature_checks, 0u);

    ASSERT_TRUE(std::holds_alternative<BgpUpdate>(c.process(BgpUpdate{{a0}}, "A", 1)));
    EXPECT_EQ(c.counters().signature_checks, 1u);
    EXPECT_EQ(rejected(c.process(BgpUpdate{{a0}}, "A", 1)).kind, Kind::kNotBetter);
    EXPECT_EQ(c.counters().signature_checks, 1u);
}

TEST(Bgp, TruncatedUpdateIsAcceptedByPlainBgp) {
    // The signed statements do not bind the rest of the path, so the
    // attacker can keep A's entry and append its own.
    Net net{"A", "B", "C", "D", "F"};
    auto d = net.router<BgpRouter>("D");
    auto up = bgp_initiate("A", 0, net.keys.at("A"));
    for (auto [prev, node, t] : {std::tuple{"A", "B", 1}, {"B", "C", 2}})
        up.entries.push_back(bgp_sign_entry(net.keys.at(node), prev, node, t));
    ASSERT_TRUE(std::holds_alternative<BgpUpdate>(d.process(up, "C", 3)));
    EXPECT_EQ(d.table().find("A")->next_hop, "C");

    BgpUpdate forged{{up.entries[0], bgp_sign_entry(net.keys.at("F"), "A", "F", 4)}};
    ASSERT_TRUE(std::holds_alternative<BgpUpdate>(d.process(forged, "F", 5)));
    EXPECT_EQ(*d.table().find("A"), (RoutingTableEntry{"A", "F", 2}));
}

TEST(Bgp, InterfaceReportsSignatureBytes) {
    Net net{"A", "B"};
    auto b = net.router<BgpRouter>("B");
    auto out = b.initiate(0);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(b.signature_bytes(out[0]), bilinear::kPointBytes);
    EXPECT_EQ(*b.peek_path(out[0]), std::vector<NodeId>{"B"});
    EXPECT_EQ(*b.table().find("B"), (RoutingTableEntry{"B", "B", 0}));
}

// --- S-BGP -------------------------------------------------------------------------

TEST(Sbgp, RecipientSpecificUpdates) {
    Net net{"A", "B", "C", "D", "E", "F"};
    auto a = net.router<SbgpRouter>("A");
    a.set_neighbors({"B"});
    auto b = net.router<SbgpRouter>("B");
    b.set_neighbors({"A", "C"});
    auto c = net.router<SbgpRouter>("C");
    c.set_neighbors({"B", "D", "E"});

    auto ua = a.initiate(0);
    ASSERT_EQ(ua.size(), 1u);
    auto rb = b.receive(ua[0], "A", 1);
    ASSERT_TRUE(std::holds_alternative<Accepted>(rb));
    auto ub = std::get<Accepted>(rb).outgoing;
    ASSERT_EQ(ub.size(), 1u);  // A is on the path
    auto rc = c.receive(ub[0], "B", 2);
    ASSERT_TRUE(std::holds_alternative<Accepted>(rc));
    const auto& uc = std::get<Accepted>(rc).outgoing;
    ASSERT_EQ(uc.size(), 2u);
    EXPECT_EQ(SbgpUpdate::from_wire(uc[0]).statements.back().recipient, "D");
    EXPECT_EQ(SbgpUpdate::from_wire(uc[1]).statements.back().recipient, "E");
    EXPECT_EQ(*c.table().find("A"), (RoutingTableEntry{"A", "B", 2}));

    // F replays C's D-addressed update to E.
    auto e = net.router<SbgpRouter>("E", {.sender_identification = false});
    auto r = e.receive(uc[0], "F", 3);
    ASSERT_TRUE(std::holds_alternative<ValidationError>(r));
    EXPECT_EQ(std::get<ValidationError>(r).kind, Kind::kNotAddressedToMe);
    EXPECT_EQ(e.counters().signature_checks, 0u);
    EXPECT_TRUE(std::holds_alternative<Accepted>(e.receive(uc[1], "C", 3)));
}

TEST(Sbgp, TruncationCannotNameTheAttacker) {
    Net net{"A", "B", "C", "D", "F"};
    auto d = net.router<SbgpRouter>("D");
    d.set_neighbors({"C", "F"});
    SbgpUpdate up{{sbgp_sign_statement(net.keys.at("A"), "A", "B", 0),
                   sbgp_sign_statement(net.keys.at("B"), "B", "C", 1),
                   sbgp_sign_statement(net.keys.at("C"), "C", "D", 2)}};
    ASSERT_TRUE(std::holds_alternative<std::vector<SbgpUpdate>>(d.process(up, "C", 3)));

    // F needs S_A(A <= F); the best it can do is reuse A's signature.
    SbgpStatement fake_a{"A", "F", 0, up.statements[0].sig};
    SbgpUpdate forged{{fake_a, sbgp_sign_statement(net.keys.at("F"), "F", "D", 4)}};
    auto e = rejected(d.process(forged, "F", 5));
    EXPECT_EQ(e.kind, Kind::kBadSignature);
    EXPECT_EQ(e.position, 0u);
    EXPECT_EQ(d.table().find("A")->next_hop, "C");

    SbgpUpdate broken{{up.statements[0], sbgp_sign_statement(net.keys.at("F"), "F", "D", 4)}};
    EXPECT_EQ(rejected(d.process(broken, "F", 5)).kind, Kind::kBadFormat);
    EXPECT_EQ(SbgpUpdate::from_wire(up.to_wire()), up);
}

// --- SS-BGP ------------------------------------------------------------------------

SsbgpUpdate extend(const SsbgpUpdate& u, const Net& net, const NodeId& id, Timestamp t) {
    SsbgpUpdate next = u;
    next.path.push_back({t, id, {}});
    next.sigma = ecs::sign(net.keys.at(id), next.path.back().message(), u.chain(net.registry), u.sigma);
    return next;
}

TEST(Ssbgp, InitiateIsAVerifiableSingleLinkChain) {
    Net net{"A"};
    auto u = ssbgp_initiate("A", 0, net.keys.at("A"));
    ASSERT_EQ(u.path.size(), 1u);
    EXPECT_TRUE(ecs::verify(u.chain(net.registry), u.sigma));
    EXPECT_EQ(u.to_wire().size() - u.path_bytes(), bilinear::kPointBytes);
    EXPECT_EQ(SsbgpUpdate::from_wire(u.to_wire()), u);
}

TEST(Ssbgp, FourHopChainAcceptedAtF) {
    Net net{"A", "B", "C", "D", "F"};
    auto u = ssbgp_initiate("A", 0, net.keys.at("A"));
    u = extend(u, net, "B", 1);
    u = extend(u, net, "C", 2);
    u = extend(u, net, "D", 3);
    auto f = net.router<SsbgpRouter>("F");
    auto r = f.process(u, "D", 4);
    ASSERT_TRUE(std::holds_alternative<SsbgpUpdate>(r));
    EXPECT_EQ(*f.table().find("A"), (RoutingTableEntry{"A", "D", 4}));
    const auto& next = std::get<SsbgpUpdate>(r);
    EXPECT_EQ(next.path.back().node, "F");
    EXPECT_TRUE(ecs::verify(next.chain(net.registry), next.sigma));
    EXPECT_EQ(f.counters().signature_checks, 1u);
}

TEST(Ssbgp, TruncationWithoutKeysFails) {
    Net net{"A", "B", "C", "D", "F"};
    auto u3 = extend(extend(ssbgp_initiate("A", 0, net.keys.at("A")), net, "B", 1), net, "C", 2);
    auto u = extend(u3, net, "D", 3);
    auto d = net.router<SsbgpRouter>("D");
    ASSERT_TRUE(std::holds_alternative<SsbgpUpdate>(d.process(u3, "C", 3)));

    SsbgpUpdate forged;
    forged.path = {u.path[0], {4, "F", {}}};
    auto link_f = ecs::ChainLink{forged.path[1].message(), net.keys.at("F").public_key()};
    auto prefix = ecs::append(forged.chain(net.registry).prefix(1), link_f);
    // reuse of the received sigma, and reuse times F's own factor
    for (auto sigma : {u.sigma, ecs::EcsSignature(u.sigma.value() *
                                                  ecs::prefix_digest(prefix).pow(net.keys.at("F").private_key()))}) {
        forged.sigma = sigma;
        auto e = rejected(d.process(forged, "F", 5));
        EXPECT_EQ(e.kind, Kind::kBadSignature);
    }
    EXPECT_EQ(*d.table().find("A"), (RoutingTableEntry{"A", "C", 3}));

    // With B, C and D's keys the attacker could strip back to A's signature.
    std::vector suffix{net.keys.at("B").private_key(), net.keys.at("C").private_key(),
                       net.keys.at("D").private_key()};
    auto sigma_a = ecs::strip(u.chain(net.registry), u.sigma, suffix);
    forged.sigma = ecs::extend_verified(net.keys.at("F"), forged.path[1].message(),
                                        forged.chain(net.registry).prefix(1), sigma_a);
    ASSERT_TRUE(std::holds_alternative<SsbgpUpdate>(d.process(forged, "F", 5)));
    EXPECT_EQ(*d.table().find("A"), (RoutingTableEntry{"A", "F", 2}));
}

TEST(Ssbgp, LoopAndFormatChecks) {
    Net net{"A", "B", "C"};
    auto u = extend(ssbgp_initiate("A", 0, net.keys.at("A")), net, "B", 1);
    auto b = net.router<SsbgpRouter>("B");
    auto e = rejected(b.process(u, "B", 2));
    EXPECT_EQ(e.kind, Kind::kLoopDetected);
    EXPECT_EQ(e.position, 1u);

    auto c = net.router<SsbgpRouter>("C");
    SsbgpUpdate unknown = u;
    unknown.path[1].node = "Q";
    EXPECT_EQ(rejected(c.process(unknown, "Q", 2)).kind, Kind::kBadFormat);
    EXPECT_EQ(rejected(c.process(SsbgpUpdate{}, "B", 2)).kind, Kind::kBadFormat);
    EXPECT_EQ(rejected(c.process(u, "A", 2)).kind, Kind::kSenderMismatch);
    EXPECT_EQ(c.counters().signature_checks, 0u);

    auto tampered = u;
    tampered.path[0].extension = to_bytes("gps:1,2");
    EXPECT_EQ(rejected(c.process(tampered, "B", 2)).kind, Kind::kBadSignature);
    EXPECT_TRUE(std::holds_alternative<SsbgpUpdate>(c.process(u, "B", 2)));
}

TEST(Ssbgp, ExtensionsAreSignedAndCarried) {
    Net net{"A", "B"};
    auto u = ssbgp_initiate("A", 0, net.keys.at("A"), to_bytes("gps:0,0"));
    auto b = net.router<SsbgpRouter>("B");
    b.set_extension(to_bytes("gps:1,0"));
    auto r = b.receive(u.to_wire(), "A", 1);
    ASSERT_TRUE(std::holds_alternative<Accepted>(r));
    auto next = SsbgpUpdate::from_wire(std::get<Accepted>(r).outgoing[0]);
    EXPECT_EQ(next.path[0].extension, to_bytes("gps:0,0"));
    EXPECT_EQ(next.path[1].extension, to_bytes("gps:1,0"));
    EXPECT_TRUE(ecs::verify(next.chain(net.registry), next.sigma));
}

TEST(Overhead, ChainSignatureIsConstantWhileBgpGrows) {
    KeyRegistry registry;
    std::vector<ecs::KeyPair> keys;
    for (int i = 0; i < 100; ++i) {
        keys.push_back(testing::key_from("overhead/" + std::to_string(i)));
        registry.add("N" + std::to_string(i), keys.back().public_key());
    }
    SsbgpUpdate ss;
    BgpUpdate bgp;
    ecs::ChainSequence chain;
    for (std::size_t n = 1; n <= 100; ++n) {
        NodeId id = "N" + std::to_string(n - 1);
        ss.path.push_back({n, id, {}});
        auto link = ecs::ChainLink{ss.path.back().message(), keys[n - 1].public_key()};
        ss.sigma = ecs::extend_verified(keys[n - 1], link.message, chain, ss.sigma);
        chain = ecs::append(chain, link);
        bgp.entries.push_back(bgp_sign_entry(keys[n - 1], n == 1 ? "" : "N" + std::to_string(n - 2), id, n));

        ASSERT_EQ(ss.to_wire().size() - ss.path_bytes(), bilinear::kPointBytes) << n;
        std::size_t bgp_path = 2;
        for (const auto& e : bgp.entries) bgp_path += 1 + e.prev.size() + 1 + e.node.size() + 8;
        ASSERT_EQ(bgp.to_wire().size() - bgp_path, n * bilinear::kPointBytes) << n;
    }
    EXPECT_TRUE(ecs::verify(ss.chain(registry), ss.sigma));
}

}  // namespace
}  // namespace ssbgp::routing
