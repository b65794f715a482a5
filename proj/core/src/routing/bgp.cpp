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

#include "ssbgp/routing/bgp.hpp"

#include <limits>

namespace ssbgp::routing {

using Kind = ValidationError::Kind;

namespace {

bilinear::G1Element read_point(ByteReader& r) {
    auto raw = r.raw(bilinear::kPointBytes);
    try {
        return bilinear::G1Element::from_bytes(raw);
    } catch (const bilinear::BackendError& e) {
        throw DecodeError(std::string("bad signature point: ") + e.what());
    }
}

}  // namespace

Bytes BgpEntry::statement() const {
    ByteWriter w;
    w.short_string(prev);
    w.short_string(node);
    w.u64(time);
    return std::move(w).bytes();
}

std::vector<NodeId> BgpUpdate::path() const {
    std::vector<NodeId> out;
    for (const auto& e : entries) out.push_back(e.node);
    return out;
}

Bytes BgpUpdate::to_wire() const {
    if (entries.size() > std::numeric_limits<std::uint16_t>::max()) throw std::length_error("BGP path too long");
    ByteWriter w;
    w.u16(static_cast<std::uint16_t>(entries.size()));
    for (const auto& e : entries) {
        w.short_string(e.prev);
        w.short_string(e.node);
        w.u64(e.time);
        w.raw(e.sig.to_bytes());
    }
    return std::move(w).bytes();
}

BgpUpdate BgpUpdate::from_wire(ByteView bytes) {
    ByteReader r(bytes);
    BgpUpdate u;
    auto count = r.u16();
    for (std::uint16_t i = 0; i < count; ++i) {
        BgpEntry e;
        e.prev = r.short_string();
        e.node = r.short_string();
        e.time = r.u64();
        e.sig = read_point(r);
        u.entries.push_back(std::move(e));
    }
    r.expect_done();
    return u;
}

BgpEntry bgp_sign_entry(const ecs::KeyPair& kp, const NodeId& prev, const NodeId& node, Timestamp time) {
    BgpEntry e{prev, node, time, {}};
    e.sig = baseline::sign(kp, kBgpTag, e.statement());
    return e;
}

BgpUpdate bgp_initiate(const NodeId& self, Timestamp now, const ecs::KeyPair& kp) {
    return BgpUpdate{{bgp_sign_entry(kp, "", self, now)}};
}

std::vector<Bytes> BgpRouter::initiate(Timestamp now) {
    note_initiated();
    return {bgp_initiate(self_, now, key_).to_wire()};
}

std::variant<BgpUpdate, ValidationError> BgpRouter::process(const BgpUpdate& update, const NodeId& sender,
                                                            Timestamp now) {
    // (a) format
    const auto& es = update.entries;
    if (es.empty()) return ValidationError{Kind::kBadFormat, 0, "empty update"};
    for (std::size_t j = 0; j < es.size(); ++j) {
        const NodeId expected_prev = j == 0 ? NodeId{} : es[j - 1].node;
        if (es[j].prev != expected_prev) return ValidationError{Kind::kBadFormat, j, "broken hop linkage"};
        if (es[j].node.empty() || !registry_.contains(es[j].node))
            return ValidationError{Kind::kBadFormat, j, "unknown node '" + es[j].node + "'"};
    }
    if (auto e = check_sender(es.back().node, sender)) return *e;

    auto path = update.path();
    if (auto e = check_loop(path)) return *e;      // (b)
    if (auto e = check_better(path)) return *e;    // (c)
    std::vector<Timestamp> times;
    for (const auto& entry : es) times.push_back(entry.time);
    if (auto e = check_times(times, now)) return *e;  // (d)

    // (e) signatures
    for (std::size_t j = 0; j < es.size(); ++j) {
        ++counters_.signature_checks;
        if (!baseline::verify(*registry_.find(es[j].node), kBgpTag, es[j].statement(), es[j].sig))
            return ValidationError{Kind::kBadSignature, j, "signature of " + es[j].node};
    }

    install(path);
    BgpUpdate next = update;
    next.entries.push_back(bgp_sign_entry(key_, es.back().node, self_, now));
    return next;
}

ProcessResult BgpRouter::receive(ByteView wire, const NodeId& sender, Timestamp now) {
    ++counters_.updates_received;
    BgpUpdate update;
    try {
        update = BgpUpdate::from_wire(wire);
    } catch (const DecodeError& e) {
        return ValidationError{Kind::kBadFormat, 0, e.what()};
    }
    auto result = process(update, sender, now);
    if (auto* err = std::get_if<ValidationError>(&result)) return *err;
    auto path = update.path();
    return Accepted{*table_.find(path.front()), path, {std::get<BgpUpdate>(result).to_wire()}};
}

std::optional<std::vector<NodeId>> BgpRouter::peek_path(ByteView wire) const {
    try {
        return BgpUpdate::from_wire(wire).path();
    } catch (const DecodeError&) {
        return std::nullopt;
    }
}

std::size_t BgpRouter::signature_bytes(ByteView wire) const {
    try {
        return BgpUpdate::from_wire(wire).entries.size() * bilinear::kPointBytes;
    } catch (const DecodeError&) {
        return 0;
    }
}

}  // namespace ssbgp::routing
