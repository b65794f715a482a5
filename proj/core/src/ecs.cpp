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

#include "ssbgp/ecs.hpp"

#include <algorithm>
#include <limits>

namespace ssbgp::ecs {

using bilinear::DualElement;
using bilinear::PairingTerm;

namespace {

constexpr std::string_view kAggregateTag = "ECS-AGGREGATE-v1";

void write_link_body(ByteWriter& w, const ChainLink& link) {
    if (link.message.size() > std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("chain message too long");
    w.u32(static_cast<std::uint32_t>(link.message.size()));
    w.raw(link.message);
    w.raw(link.key.canonical_bytes());
}

Bytes prefix_header(std::size_t length) {
    ByteWriter w;
    w.raw(kPrefixTag);
    w.u32(static_cast<std::uint32_t>(length));
    return std::move(w).bytes();
}

// H(<l_1..l_j>) for every j in one pass over the links.
std::vector<G1Element> all_prefix_digests(const ChainSequence& seq) {
    std::vector<G1Element> digests;
    digests.reserve(seq.size());
    ByteWriter body;
    Bytes input;
    for (std::size_t j = 0; j < seq.size(); ++j) {
        write_link_body(body, seq[j]);
        input = prefix_header(j + 1);
        input.insert(input.end(), body.bytes().begin(), body.bytes().end());
        digests.push_back(bilinear::hash_to_g1(input));
    }
    return digests;
}

bool structurally_valid(const SignedChain& chain) {
    if (chain.sequence.empty()) return chain.signature.is_unit();
    return !chain.sequence.has_repeated_key();
}

}  // namespace

// --- keys and sequences -------------------------------------------------------

PublicKey::PublicKey(bilinear::DualElement point) : point_(point), id_(point.g1().to_bytes()) {}

PublicKey PublicKey::from_wire(ByteView bytes) { return PublicKey(DualElement::from_bytes(bytes)); }

ChainSequence ChainSequence::prefix(std::size_t n) const {
    n = std::min(n, links_.size());
    return ChainSequence({links_.begin(), links_.begin() + static_cast<std::ptrdiff_t>(n)});
}

bool ChainSequence::has_key(const PublicKey& key) const {
    return std::any_of(links_.begin(), links_.end(), [&](const ChainLink& l) { return l.key == key; });
}

bool ChainSequence::has_repeated_key() const {
    std::set<PublicKey> seen;
    for (const auto& l : links_)
        if (!seen.insert(l.key).second) return true;
    return false;
}

bool is_prefix(const ChainSequence& seq, const ChainSequence& candidate) {
    if (candidate.size() > seq.size()) return false;
    return std::equal(candidate.links().begin(), candidate.links().end(), seq.links().begin());
}

namespace {

std::size_t common_prefix_length(const ChainSequence& a, const ChainSequence& b) {
    auto n = std::min(a.size(), b.size());
    std::size_t i = 0;
    while (i < n && a[i] == b[i]) ++i;
    return i;
}

}  // namespace

bool overlap(const ChainSequence& a, const ChainSequence& b) { return common_prefix_length(a, b) > 0; }

LinkSet common_prefix_set(const ChainSequence& a, const ChainSequence& b) {
    auto n = common_prefix_length(a, b);
    return {a.links().begin(), a.links().begin() + static_cast<std::ptrdiff_t>(n)};
}

LinkSet link_union(const ChainSequence& a, const ChainSequence& b) {
    LinkSet out(a.links().begin(), a.links().end());
    out.insert(b.links().begin(), b.links().end());
    return out;
}

LinkSet link_intersection(const ChainSequence& a, const ChainSequence& b) {
    LinkSet lhs(a.links().begin(), a.links().end());
    LinkSet out;
    for (const auto& l : b.links())
        if (lhs.contains(l)) out.insert(l);
    return out;
}

ChainSequence append(const ChainSequence& seq, ChainLink link) {
    auto links = seq.links();
    links.push_back(std::move(link));
    return ChainSequence(std::move(links));
}

Bytes encode_prefix(const ChainSequence& seq, std::size_t length) {
    if (length > seq.size()) throw std::out_of_range("prefix longer than sequence");
    ByteWriter w;
    w.raw(prefix_header(length));
    for (std::size_t j = 0; j < length; ++j) write_link_body(w, seq[j]);
    return std::move(w).bytes();
}

G1Element prefix_digest(const ChainSequence& prefix) {
    if (prefix.empty()) throw std::invalid_argument("prefix digest of the empty sequence");
    return bilinear::hash_to_g1(encode_prefix(prefix, prefix.size()));
}

// --- signatures -----------------------------------------------------------------

Bytes EcsSignature::to_wire() const {
    if (is_unit()) return {kUnitMarker};
    Bytes out{kPointMarker};
    auto point = value_.to_bytes();
    out.insert(out.end(), point.begin(), point.end());
    return out;
}

EcsSignature EcsSignature::from_wire(ByteReader& reader) {
    auto marker = reader.u8();
    if (marker == kUnitMarker) return unit();
    if (marker != kPointMarker) throw DecodeError("unknown signature marker");
    return EcsSignature(G1Element::from_bytes(reader.raw(bilinear::kPointBytes)));
}

KeyPair::KeyPair(Scalar priv, PublicKey pub) : private_(priv), public_(std::move(pub)) {
    if (!(DualElement::from_exponent(private_) == public_.point()))
        throw std::invalid_argument("public key does not match private key");
}

KeyPair KeyPair::generate(const bilinear::GroupContext& ctx, ByteView seed) {
    return from_private(bilinear::random_scalar(ctx, seed));
}

KeyPair KeyPair::from_private(Scalar priv) {
    return KeyPair(priv, PublicKey(DualElement::from_exponent(priv)));
}

EcsSignature extend_verified(const KeyPair& kp, ByteView msg, const ChainSequence& prior_seq,
                             const EcsSignature& prior_sig) {
    if (prior_seq.has_key(kp.public_key()))
        throw SignError(SignError::Kind::kDuplicateKey, "signer key already in chain");
    auto seq = append(prior_seq, ChainLink{Bytes(msg.begin(), msg.end()), kp.public_key()});
    return EcsSignature(prior_sig.value() * prefix_digest(seq).pow(kp.private_key()));
}

EcsSignature sign(const KeyPair& kp, ByteView msg, const ChainSequence& prior_seq,
                  const EcsSignature& prior_sig) {
    if (prior_seq.has_key(kp.public_key()))
        throw SignError(SignError::Kind::kDuplicateKey, "signer key already in chain");
    if (!verify(prior_seq, prior_sig))
        throw SignError(SignError::Kind::kInvalidPriorSignature, "prior chain signature invalid");
    return extend_verified(kp, msg, prior_seq, prior_sig);
}

bool verify(const ChainSequence& seq, const EcsSignature& sig) {
    if (seq.empty()) return sig.is_unit();
    if (seq.has_repeated_key()) return false;

    auto digests = all_prefix_digests(seq);
    std::vector<PairingTerm> terms;
    terms.reserve(seq.size() + 1);
    terms.push_back({sig.value().inverse(), DualElement::generator()});
    for (std::size_t j = 0; j < seq.size(); ++j) terms.push_back({digests[j], seq[j].key.point()});
    return bilinear::pairing_product(terms).is_one();
}

EcsSignature strip(const ChainSequence& seq, const EcsSignature& sig,
                   std::span<const Scalar> suffix_keys) {
    if (suffix_keys.size() > seq.size()) throw std::invalid_argument("more keys than links");
    if (!verify(seq, sig)) throw std::invalid_argument("cannot strip an invalid chain signature");

    auto first = seq.size() - suffix_keys.size();
    G1Element value = sig.value();
    for (std::size_t i = 0; i < suffix_keys.size(); ++i) {
        const auto& link = seq[first + i];
        if (!(DualElement::from_exponent(suffix_keys[i]) == link.key.point()))
            throw std::invalid_argument("private key does not match chain link");
        value *= prefix_digest(seq.prefix(first + i + 1)).pow(-suffix_keys[i]);
    }
    return EcsSignature(value);
}

bool aggregate_verify(std::span<const SignedChain> chains) {
    if (chains.empty()) throw std::invalid_argument("aggregate verification of an empty batch");

    ByteWriter transcript;
    for (const auto& c : chains) {
        if (!structurally_valid(c)) return false;
        transcript.raw(encode_chain(c));
    }
    auto batch_seed = bilinear::expand_message(transcript.bytes(), kAggregateTag, 32);

    G1Element combined;
    std::vector<PairingTerm> terms;
    terms.push_back({});  // slot for the combined signature
    for (std::size_t c = 0; c < chains.size(); ++c) {
        if (chains[c].sequence.empty()) continue;
        ByteWriter w;
        w.raw(batch_seed);
        w.u32(static_cast<std::uint32_t>(c));
        auto r = Scalar::reduce(bilinear::expand_message(w.bytes(), kAggregateTag, 16));
        if (r.is_zero()) r = Scalar::from_u64(1);

        combined *= chains[c].signature.value().pow(r);
        auto digests = all_prefix_digests(chains[c].sequence);
        for (std::size_t j = 0; j < digests.size(); ++j)
            terms.push_back({digests[j].pow(r), chains[c].sequence[j].key.point()});
    }
    terms[0] = {combined.inverse(), DualElement::generator()};
    return bilinear::pairing_product(terms).is_one();
}

// --- chain wire format ------------------------------------------------------------

Bytes encode_chain(const SignedChain& chain) {
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(chain.sequence.size()));
    for (const auto& link : chain.sequence.links()) {
        w.u32(static_cast<std::uint32_t>(link.message.size()));
        w.raw(link.message);
        w.raw(link.key.to_wire());
    }
    w.raw(chain.signature.to_wire());
    return std::move(w).bytes();
}

SignedChain decode_chain(ByteView bytes) {
    ByteReader r(bytes);
    auto count = r.u32();
    std::vector<ChainLink> links;
    for (std::uint32_t i = 0; i < count; ++i) {
        auto len = r.u32();
        auto msg = r.raw(len);
        ChainLink link{Bytes(msg.begin(), msg.end()), {}};
        try {
            link.key = PublicKey::from_wire(r.raw(bilinear::kDualPointBytes));
        } catch (const bilinear::BackendError& e) {
            throw DecodeError(e.what());
        }
        links.push_back(std::move(link));
    }
    SignedChain chain{ChainSequence(std::move(links)), {}};
    try {
        chain.signature = EcsSignature::from_wire(r);
    } catch (const bilinear::BackendError& e) {
        throw DecodeError(e.what());
    }
    r.expect_done();
    return chain;
}

}  // namespace ssbgp::ecs
