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

#include "ssbgp/sim/simulator.hpp"

#include <algorithm>
#include <memory>
#include <queue>

#include "json.hpp"
#include "ssbgp/routing.hpp"

namespace ssbgp::sim {

using routing::Accepted;
using routing::ValidationError;

namespace {

using Payload = std::shared_ptr<const Bytes>;

struct Event {
    enum class Type { kInitiate, kControl, kDataOrigin, kData };
    Timestamp time = 0;
    std::uint64_t seq = 0;
    Type type = Type::kInitiate;
    NodeId node;    // receiver / actor
    NodeId sender;  // physical transmitter
    Payload payload;
    std::size_t packet = 0;
};

struct Later {
    bool operator()(const Event& a, const Event& b) const {
        return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
};

struct SimNode {
    NodeSpec spec;
    std::unique_ptr<routing::Router> router;
    std::set<Bytes> seen;
    bool forged = false;
};

struct PacketState {
    std::set<NodeId> handled;
    std::map<NodeId, NodeId> parent;
};

class Engine {
public:
    Engine(const Scenario& s, std::uint64_t seed) : scenario_(s), adj_(coverage_graph(s)) {
        s.validate();
        metrics_.scenario = s.name;
        metrics_.protocol = s.protocol;
        metrics_.seed = seed;

        const auto& ctx = bilinear::GroupContext::bls12_381();
        std::map<NodeId, ecs::KeyPair> keys;
        for (const auto& n : s.nodes) {
            auto kp = ecs::KeyPair::generate(ctx, as_bytes("node-key:" + std::to_string(seed) + ":" + n.id));
            registry_.add(n.id, kp.public_key());
            keys.emplace(n.id, kp);
        }
        for (const auto& id : s.extracted_keys) extracted_[id] = keys.at(id).private_key();

        routing::Router::Options opt{s.threshold, s.sender_identification};
        for (const auto& n : s.nodes) {
            SimNode node{n, routing::make_router(s.protocol, n.id, keys.at(n.id), registry_, opt), {}, false};
            node.router->set_neighbors(perceived_neighbors(s, adj_, n.id));
            nodes_.emplace(n.id, std::move(node));
            metrics_.nodes[n.id].role = n.role;
        }
    }

    Metrics run() {
        for (const auto& id : scenario_.initiators) schedule({0, 0, Event::Type::kInitiate, id, id, nullptr, 0});
        for (std::size_t i = 0; i < scenario_.data_packets.size(); ++i) {
            const auto& p = scenario_.data_packets[i];
            metrics_.packets.push_back({p.src, p.dest, p.at, false, {}, {}, false});
            packets_.emplace_back();
            schedule({p.at, 0, Event::Type::kDataOrigin, p.src, p.src, nullptr, i});
        }
        while (!queue_.empty()) {
            Event e = queue_.top();
            queue_.pop();
            switch (e.type) {
                case Event::Type::kInitiate: on_initiate(e); break;
                case Event::Type::kControl: on_control(e); break;
                case Event::Type::kDataOrigin: on_data_origin(e); break;
                case Event::Type::kData: on_data(e); break;
            }
        }
        for (auto& [id, node] : nodes_) {
            auto& m = metrics_.nodes[id];
            m.table = node.router->table();
            m.updates_received = node.router->counters().updates_received;
            m.updates_accepted = node.router->counters().updates_accepted;
            m.signature_checks = node.router->counters().signature_checks;
        }
        for (auto& p : metrics_.packets) p.blackholed = !p.delivered && !p.intercepted_by.empty();
        return std::move(metrics_);
    }

private:
    void schedule(Event e) {
        e.seq = next_seq_++;
        queue_.push(std::move(e));
    }

    void send_control(SimNode& from, Bytes bytes, Timestamp now) {
        auto& m = metrics_.nodes[from.spec.id];
        ++m.broadcasts_sent;
        m.control_bytes_sent += bytes.size();
        m.signature_bytes_sent += from.router->signature_bytes(bytes);
        from.seen.insert(bytes);
        auto payload = std::make_shared<const Bytes>(std::move(bytes));
        for (const auto& n : adj_.at(from.spec.id))
            schedule({now + 1, 0, Event::Type::kControl, n, from.spec.id, payload, 0});
    }

    void send_data(const NodeId& from, std::size_t packet, Timestamp now) {
        ++metrics_.nodes[from].data_broadcasts;
        for (const auto& n : adj_.at(from)) schedule({now + 1, 0, Event::Type::kData, n, from, nullptr, packet});
    }

    void on_initiate(const Event& e) {
        auto& node = nodes_.at(e.node);
        if (node.spec.role == Role::kRepeater) return;
        for (auto& out : node.router->initiate(e.time)) send_control(node, std::move(out), e.time);
    }

    void on_control(const Event& e) {
        metrics_.trace.push_back({e.time, e.sender, e.node, true});
        auto& node = nodes_.at(e.node);
        if (!node.seen.insert(*e.payload).second) return;

        auto result = node.router->receive(*e.payload, e.sender, e.time);
        if (auto* err = std::get_if<ValidationError>(&result)) {
            metrics_.nodes[e.node].rejections.push_back(
                {std::string(routing::to_string(err->kind)), err->position, e.sender, e.time, err->detail});
        }

        if (node.spec.role == Role::kRepeater) {
            send_control(node, *e.payload, e.time);
            return;
        }
        auto* ok = std::get_if<Accepted>(&result);
        if (ok == nullptr) return;
        if (node.spec.role == Role::kTruncator && !node.forged && ok->path.size() >= 2) {
            node.forged = true;
            auto forged = forge(node, *e.payload, e.time);
            metrics_.nodes[e.node].forged_updates += forged.size();
            for (auto& f : forged) send_control(node, std::move(f), e.time);
            return;
        }
        for (auto& out : ok->outgoing) send_control(node, std::move(out), e.time);
    }

    // Keeps the origin's hop, drops everything in between, appends self.
    std::vector<Bytes> forge(const SimNode& node, ByteView received, Timestamp now) {
        const auto& self = node.spec.id;
        const auto& kp = node.router->key();
        switch (scenario_.protocol) {
            case Protocol::kBgp: {
                auto u = routing::BgpUpdate::from_wire(received);
                routing::BgpUpdate f{{u.entries[0], routing::bgp_sign_entry(kp, u.entries[0].node, self, now)}};
                return {f.to_wire()};
            }
            case Protocol::kSbgp: {
                // Without S_A(A <= self) the attacker can only relabel A's
                // statement and hope the receiver does not check it.
                auto u = routing::SbgpUpdate::from_wire(received);
                auto first = u.statements[0];
                first.recipient = self;
                std::vector<Bytes> out;
                for (const auto& n : perceived_neighbors(scenario_, adj_, self)) {
                    if (n == first.signer) continue;
                    routing::SbgpUpdate f{{first, routing::sbgp_sign_statement(kp, self, n, now)}};
                    out.push_back(f.to_wire());
                }
                return out;
            }
            case Protocol::kSsbgp: {
                auto u = routing::SsbgpUpdate::from_wire(received);
                auto chain = u.chain(registry_);
                routing::SsbgpUpdate f;
                f.path = {u.path[0], {now, self, {}}};
                auto origin = chain.prefix(1);
                auto msg = f.path[1].message();

                std::vector<bilinear::Scalar> suffix;
                for (std::size_t j = 1; j < u.path.size(); ++j) {
                    auto it = extracted_.find(u.path[j].node);
                    if (it == extracted_.end()) break;
                    suffix.push_back(it->second);
                }
                if (suffix.size() == u.path.size() - 1) {
                    auto sigma_origin = ecs::strip(chain, u.sigma, suffix);
                    f.sigma = ecs::extend_verified(kp, msg, origin, sigma_origin);
                } else {
                    auto own = ecs::prefix_digest(ecs::append(origin, {msg, kp.public_key()})).pow(kp.private_key());
                    f.sigma = ecs::EcsSignature(u.sigma.value() * own);
                }
                return {f.to_wire()};
            }
        }
        return {};
    }

    void on_data_origin(const Event& e) {
        auto& out = metrics_.packets[e.packet];
        auto& st = packets_[e.packet];
        if (out.src == out.dest) {
            out.delivered = true;
            out.path = {out.src};
            return;
        }
        if (nodes_.at(e.node).router->table().find(out.dest) == nullptr) return;
        st.handled.insert(e.node);
        send_data(e.node, e.packet, e.time);
    }

    void on_data(const Event& e) {
        metrics_.trace.push_back({e.time, e.sender, e.node, false});
        auto& out = metrics_.packets[e.packet];
        auto& st = packets_[e.packet];
        if (e.node == out.dest) {
            if (!out.delivered) {
                out.delivered = true;
                st.parent[e.node] = e.sender;
                out.path = trace_path(out, st);
            }
            return;
        }
        if (!st.handled.insert(e.node).second) return;
        st.parent[e.node] = e.sender;

        auto& node = nodes_.at(e.node);
        if (node.spec.role != Role::kHonest) {
            const auto* via = nodes_.at(e.sender).router->table().find(out.dest);
            if (via != nullptr && via->next_hop == e.node &&
                std::find(out.intercepted_by.begin(), out.intercepted_by.end(), e.node) == out.intercepted_by.end())
                out.intercepted_by.push_back(e.node);
        }
        if (node.spec.role == Role::kTruncator) return;
        if (routing::forward_decision(node.router->table(), e.node, out.dest, e.sender) ==
            routing::ForwardAction::kForward)
            send_data(e.node, e.packet, e.time);
    }

    static std::vector<NodeId> trace_path(const PacketOutcome& out, const PacketState& st) {
        std::vector<NodeId> path{out.dest};
        while (path.back() != out.src && path.size() <= st.parent.size() + 1) path.push_back(st.parent.at(path.back()));
        std::reverse(path.begin(), path.end());
        return path;
    }

    const Scenario& scenario_;
    Adjacency adj_;
    routing::KeyRegistry registry_;
    std::map<NodeId, bilinear::Scalar> extracted_;
    std::map<NodeId, SimNode> nodes_;
    std::vector<PacketState> packets_;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::uint64_t next_seq_ = 0;
    Metrics metrics_;
};

}  // namespace

std::size_t NodeMetrics::rejections_of(std::string_view kind) const {
    return static_cast<std::size_t>(
        std::count_if(rejections.begin(), rejections.end(), [&](const Rejection& r) { return r.kind == kind; }));
}

std::uint64_t Metrics::intercepted_packets() const {
    return static_cast<std::uint64_t>(
        std::count_if(packets.begin(), packets.end(), [](const PacketOutcome& p) { return !p.intercepted_by.empty(); }));
}

std::uint64_t Metrics::blackholed_packets() const {
    return static_cast<std::uint64_t>(
        std::count_if(packets.begin(), packets.end(), [](const PacketOutcome& p) { return p.blackholed; }));
}

const routing::RoutingTableEntry* Metrics::route(const NodeId& at, const NodeId& destination) const {
    auto it = nodes.find(at);
    return it == nodes.end() ? nullptr : it->second.table.find(destination);
}

std::string Metrics::to_json() const {
    using nlohmann::json;
    json doc;
    doc["scenario"] = scenario;
    doc["protocol"] = std::string(routing::to_string(protocol));
    doc["seed"] = seed;
    std::uint64_t forged = 0;
    json jn = json::object();
    for (const auto& [id, m] : nodes) {
        forged += m.forged_updates;
        json rej = json::array();
        for (const auto& r : m.rejections)
            rej.push_back({{"kind", r.kind}, {"position", r.position}, {"from", r.from}, {"time", r.time},
                           {"detail", r.detail}});
        json table = json::object();
        for (const auto& [dest, e] : m.table.entries()) table[dest] = {{"next_hop", e.next_hop}, {"metric", e.metric}};
        jn[id] = {
            {"role", std::string(to_string(m.role))},
            {"broadcasts_sent", m.broadcasts_sent},
            {"control_bytes_sent", m.control_bytes_sent},
            {"signature_bytes_sent", m.signature_bytes_sent},
            {"data_broadcasts", m.data_broadcasts},
            {"updates_received", m.updates_received},
            {"updates_accepted", m.updates_accepted},
            {"signature_checks", m.signature_checks},
            {"forged_updates", m.forged_updates},
            {"rejections", rej},
            {"table", table},
        };
    }
    doc["nodes"] = jn;
    json jp = json::array();
    for (const auto& p : packets)
        jp.push_back({{"src", p.src}, {"dest", p.dest}, {"at", p.at}, {"delivered", p.delivered}, {"path", p.path},
                      {"intercepted_by", p.intercepted_by}, {"blackholed", p.blackholed}});
    doc["data_packets"] = jp;
    doc["attack"] = {{"intercepted_packets", intercepted_packets()},
                     {"blackholed_packets", blackholed_packets()},
                     {"forged_updates", forged}};
    return doc.dump(2) + "\n";
}

std::vector<NodeId> perceived_neighbors(const Scenario& scenario, const Adjacency& adj, const NodeId& node) {
    const auto& direct = adj.at(node);
    if (scenario.sender_identification) return {direct.begin(), direct.end()};
    auto is_repeater = [&](const NodeId& id) {
        const auto* spec = scenario.find(id);
        return spec != nullptr && spec->role == Role::kRepeater;
    };
    std::set<NodeId> out, visited{node};
    std::vector<NodeId> stack(direct.begin(), direct.end());
    while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        if (!visited.insert(v).second) continue;
        if (!is_repeater(v)) {
            out.insert(v);
            continue;
        }
        for (const auto& w : adj.at(v)) stack.push_back(w);
    }
    return {out.begin(), out.end()};
}

Metrics run_scenario(const Scenario& scenario, std::uint64_t seed) { return Engine(scenario, seed).run(); }

}  // namespace ssbgp::sim
