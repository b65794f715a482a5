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

#include "ssbgp/routing/ssbgp.hpp"

#include <limits>

namespace ssbgp::routing {

using Kind = ValidationError::Kind;

Bytes SsbgpHop::message() const {
    if (extension.size() > std::numeric_limits<std::uint16_t>::max()) throw std::length_error("extension too long");
    ByteWriter w;
    w.u64(time);
    w.u16(static_cast<std::uint16_t>(extension.size()));
    w.raw(extension);
    return std::move(w).bytes();
}

std::vector<NodeId> SsbgpUpdate::nodes() const {
    std::vector<NodeId> out;
    for (const auto& h : path) out.push_back(h.node);
    return out;
}

ecs::ChainSequence SsbgpUpdate::chain(const KeyRegistry& registry) const {
    std::vector<ecs::ChainLink> links;
    for (const auto& h : path) {
        const auto* key = registry.find(h.node);
        if (key == nullptr) throw std::out_of_range("no key for node '" + h.node + "'");
        links.push_back({h.message(), *key});
    }
    return ecs::ChainSequence(std::move(links));
}

Bytes SsbgpUpdate::to_wire() const {
    if (path.size() > std::numeric_limits<std::uint16_t>::max()) throw std::length_error("SS-BGP path too long");
    ByteWriter w;
    w.u16(static_cast<std::uint16_t>(path.size()));
    for (const auto& h : path) {
        if (h.extension.size() > std::numeric_limits<std::uint16_t>::max())
            throw std::length_error("extension too long");
        w.u64(h.time);
        w.short_string(h.node);
        w.u16(static_cast<std::uint16_t>(h.extension.size()));
        w.raw(h.extension);
    }
    w.raw(sigma.value().to_bytes());
    return std::move(w).bytes();
}

SsbgpUpdate SsbgpUpdate::from_wire(ByteView bytes) {
    ByteReader r(bytes);
    SsbgpUpdate u;
    auto count = r.u16();
    for (std::uint16_t i = 0; i < count; ++i) {
        SsbgpHop h;
        h.time = r.u64();
        h.node = r.short_string();
        auto len = r.u16();
        auto ext = r.raw(len);
        h.extension.assign(ext.begin(), ext.end());
        u.path.push_back(std::move(h));
    }
    auto raw = r.raw(bilinear::kPointBytes);
    try {
        u.sigma = ecs::EcsSignature(bilinear::G1Element::from_bytes(raw));
    } catch (const bilinear::BackendError& e) {
        throw DecodeError(std::string("bad chain signature: ") + e.what());
    }
    r.expect_done();
    return u;
}

std::size_t SsbgpUpdate::path_bytes() const {
    std::size_t n = 2;
    for (const auto& h : path) n += 8 + 1 + h.node.size() + 2 + h.extension.size();
    return n;
}

SsbgpUpdate ssbgp_initiate(const NodeId& self, Timestamp now, const ecs::KeyPair& kp, Bytes extension) {
    SsbgpUpdate u;
    u.path.push_back({now, self, std::move(extension)});
    u.sigma = ecs::sign(kp, u.path[0].message(), ecs::ChainSequence{}, ecs::EcsSignature::unit());
    return u;
}

std::vector<Bytes> SsbgpRouter::initiate(Timestamp now) {
    note_initiated();
    return {ssbgp_initiate(self_, now, key_, extension_).to_wire()};
}

std::variant<SsbgpUpdate, ValidationError> SsbgpRouter::process(const SsbgpUpdate& update, const NodeId& sender,
                                                                Timestamp now) {
    // (a) format
    if (update.path.empty()) return ValidationError{Kind::kBadFormat, 0, "empty update"};
    for (std::size_t j = 0; j < update.path.size(); ++j)
        if (!registry_.contains(update.path[j].node))
            return ValidationError{Kind::kBadFormat, j, "unknown node '" + update.path[j].node + "'"};
    if (auto e = check_sender(update.path.back().node, sender)) return *e;

    auto path = update.nodes();
    if (auto e = check_loop(path)) return *e;    // (b)
    if (auto e = check_better(path)) return *e;  // (c)
    std::vector<Timestamp> times;
    for (const auto& h : update.path) times.push_back(h.time);
    if (auto e = check_times(times, now)) return *e;  // (d)

    // (e) one chain verification for the whole path
    auto chain = update.chain(registry_);
    ++counters_.signature_checks;
    if (!ecs::verify(chain, update.sigma))
        return ValidationError{Kind::kBadSignature, path.size() - 1, "chain signature"};

    SsbgpUpdate next = update;
    next.path.push_back({now, self_, extension_});
    try {
        next.sigma = ecs::extend_verified(key_, next.path.back().message(), chain, update.sigma);
    } catch (const ecs::SignError&) {
        return ValidationError{Kind::kLoopDetected, path.size(), "own key already on the chain"};
    }
    install(path);
    return next;
}

ProcessResult SsbgpRouter::receive(ByteView wire, const NodeId& sender, Timestamp now) {
    ++counters_.updates_received;
    SsbgpUpdate update;
    try {
        update = SsbgpUpdate::from_wire(wire);
    } catch (const DecodeError& e) {
        return ValidationError{Kind::kBadFormat, 0, e.what()};
    }
    auto result = process(update, sender, now);
    if (auto* err = std::get_if<ValidationError>(&result)) return *err;
    auto path = update.nodes();
    return Accepted{*table_.find(path.front()), path, {std::get<SsbgpUpdate>(result).to_wire()}};
}

std::optional<std::vector<NodeId>> SsbgpRouter::peek_path(ByteView wire) const {
    try {
        return SsbgpUpdate::from_wire(wire).nodes();
    } catch (const DecodeError&) {
        return std::nullopt;
    }
}

std::size_t SsbgpRouter::signature_bytes(ByteView wire) const {
    try {
        SsbgpUpdate::from_wire(wire);
        return bilinear::kPointBytes;
    } catch (const DecodeError&) {
        return 0;
    }
}

}  // namespace ssbgp::routing
