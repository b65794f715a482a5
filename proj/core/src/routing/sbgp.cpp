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

#include "ssbgp/routing/sbgp.hpp"

#include <algorithm>
#include <limits>

namespace ssbgp::routing {

using Kind = ValidationError::Kind;

Bytes SbgpStatement::statement() const {
    ByteWriter w;
    w.short_string(signer);
    w.short_string(recipient);
    w.u64(time);
    return std::move(w).bytes();
}

std::vector<NodeId> SbgpUpdate::path() const {
    std::vector<NodeId> out;
    for (const auto& s : statements) out.push_back(s.signer);
    return out;
}

Bytes SbgpUpdate::to_wire() const {
    if (statements.size() > std::numeric_limits<std::uint16_t>::max()) throw std::length_error("S-BGP path too long");
    ByteWriter w;
    w.u16(static_cast<std::uint16_t>(statements.size()));
    for (const auto& s : statements) {
        w.short_string(s.signer);
        w.short_string(s.recipient);
        w.u64(s.time);
        w.raw(s.sig.to_bytes());
    }
    return std::move(w).bytes();
}

SbgpUpdate SbgpUpdate::from_wire(ByteView bytes) {
    ByteReader r(bytes);
    SbgpUpdate u;
    auto count = r.u16();
    for (std::uint16_t i = 0; i < count; ++i) {
        SbgpStatement s;
        s.signer = r.short_string();
        s.recipient = r.short_string();
        s.time = r.u64();
        auto raw = r.raw(bilinear::kPointBytes);
        try {
            s.sig = bilinear::G1Element::from_bytes(raw);
        } catch (const bilinear::BackendError& e) {
            throw DecodeError(std::string("bad signature point: ") + e.what());
        }
        u.statements.push_back(std::move(s));
    }
    r.expect_done();
    return u;
}

SbgpStatement sbgp_sign_statement(const ecs::KeyPair& kp, const NodeId& signer, const NodeId& recipient,
                                  Timestamp time) {
    SbgpStatement s{signer, recipient, time, {}};
    s.sig = baseline::sign(kp, kSbgpTag, s.statement());
    return s;
}

std::vector<SbgpUpdate> sbgp_initiate(const NodeId& self, const std::vector<NodeId>& neighbors, Timestamp now,
                                      const ecs::KeyPair& kp) {
    std::vector<SbgpUpdate> out;
    for (const auto& n : neighbors) out.push_back(SbgpUpdate{{sbgp_sign_statement(kp, self, n, now)}});
    return out;
}

std::vector<Bytes> SbgpRouter::initiate(Timestamp now) {
    note_initiated();
    std::vector<Bytes> out;
    for (const auto& u : sbgp_initiate(self_, neighbors_, now, key_)) out.push_back(u.to_wire());
    return out;
}

std::variant<std::vector<SbgpUpdate>, ValidationError> SbgpRouter::process(const SbgpUpdate& update,
                                                                           const NodeId& sender, Timestamp now) {
    // (a) format, including who the update is for
    const auto& ss = update.statements;
    if (ss.empty()) return ValidationError{Kind::kBadFormat, 0, "empty update"};
    for (std::size_t j = 0; j < ss.size(); ++j) {
        if (!registry_.contains(ss[j].signer) || ss[j].recipient.empty())
            return ValidationError{Kind::kBadFormat, j, "unknown signer or empty recipient"};
        if (j + 1 < ss.size() && ss[j].recipient != ss[j + 1].signer)
            return ValidationError{Kind::kBadFormat, j + 1, "statement does not continue from its predecessor"};
    }
    if (auto e = check_sender(ss.back().signer, sender)) return *e;
    if (ss.back().recipient != self_)
        return ValidationError{Kind::kNotAddressedToMe, ss.size() - 1, "addressed to " + ss.back().recipient};

    auto path = update.path();
    if (auto e = check_loop(path)) return *e;    // (b)
    if (auto e = check_better(path)) return *e;  // (c)
    std::vector<Timestamp> times;
    for (const auto& s : ss) times.push_back(s.time);
    if (auto e = check_times(times, now)) return *e;  // (d)

    for (std::size_t j = 0; j < ss.size(); ++j) {  // (e)
        ++counters_.signature_checks;
        if (!baseline::verify(*registry_.find(ss[j].signer), kSbgpTag, ss[j].statement(), ss[j].sig))
            return ValidationError{Kind::kBadSignature, j, "signature of " + ss[j].signer};
    }

    install(path);
    std::vector<SbgpUpdate> out;
    for (const auto& n : neighbors_) {
        if (std::find(path.begin(), path.end(), n) != path.end()) continue;
        SbgpUpdate next = update;
        next.statements.push_back(sbgp_sign_statement(key_, self_, n, now));
        out.push_back(std::move(next));
    }
    return out;
}

ProcessResult SbgpRouter::receive(ByteView wire, const NodeId& sender, Timestamp now) {
    ++counters_.updates_received;
    SbgpUpdate update;
    try {
        update = SbgpUpdate::from_wire(wire);
    } catch (const DecodeError& e) {
        return ValidationError{Kind::kBadFormat, 0, e.what()};
    }
    auto result = process(update, sender, now);
    if (auto* err = std::get_if<ValidationError>(&result)) return *err;
    auto path = update.path();
    Accepted a{*table_.find(path.front()), path, {}};
    for (const auto& u : std::get<std::vector<SbgpUpdate>>(result)) a.outgoing.push_back(u.to_wire());
    return a;
}

std::optional<std::vector<NodeId>> SbgpRouter::peek_path(ByteView wire) const {
    try {
        return SbgpUpdate::from_wire(wire).path();
    } catch (const DecodeError&) {
        return std::nullopt;
    }
}

std::size_t SbgpRouter::signature_bytes(ByteView wire) const {
    try {
        return SbgpUpdate::from_wire(wire).statements.size() * bilinear::kPointBytes;
    } catch (const DecodeError&) {
        return 0;
    }
}

}  // namespace ssbgp::routing
