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
 * Enhanced chain signatures.
 *
 * A chain is an ordered sequence of (message, public key) links. The chain
 * signature is a single G1 element
 *
 *     sigma_n = prod_{j=1..n} H(<link_1, ..., link_j>)^{x_j}
 *
 * and verifies iff e(sigma_n, g) == prod_j e(H(<link_1..link_j>), Y_j) with
 * all Y_j distinct. Because every factor hashes its whole prefix, a signature
 * on a chain cannot be turned into one on a strict prefix without the private
 * keys of the dropped links.
 */

#ifndef SSBGP_ECS_HPP
#define SSBGP_ECS_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "ssbgp/bilinear.hpp"
#include "ssbgp/bytes.hpp"

namespace ssbgp::ecs {

using bilinear::G1Element;
using bilinear::Scalar;

inline constexpr std::string_view kPrefixTag = "ECS-PREFIX-v1";
/// Wire marker for the empty-chain signature.
inline constexpr std::uint8_t kUnitMarker = 0x00;
inline constexpr std::uint8_t kPointMarker = 0x01;

/// Public key kept in both source groups. Identity and ordering are by the
/// 48-byte G1 encoding.
class PublicKey {
public:
    PublicKey() = default;
    explicit PublicKey(bilinear::DualElement point);

    const bilinear::DualElement& point() const { return point_; }
    const std::array<std::uint8_t, bilinear::kPointBytes>& canonical_bytes() const { return id_; }

    /// 144-byte encoding (both halves).
    std::array<std::uint8_t, bilinear::kDualPointBytes> to_wire() const { return point_.to_bytes(); }
    static PublicKey from_wire(ByteView bytes);

    friend bool operator==(const PublicKey& a, const PublicKey& b) { return a.id_ == b.id_; }
    friend auto operator<=>(const PublicKey& a, const PublicKey& b) { return a.id_ <=> b.id_; }

private:
    bilinear::DualElement point_;
    std::array<std::uint8_t, bilinear::kPointBytes> id_{};
};

struct ChainLink {
    Bytes message;
    PublicKey key;

    friend bool operator==(const ChainLink&, const ChainLink&) = default;
    friend auto operator<=>(const ChainLink& a, const ChainLink& b) {
        if (auto c = a.message <=> b.message; c != 0) return c;
        return a.key <=> b.key;
    }
};

using LinkSet = std::set<ChainLink>;

/// Ordered links; the empty sequence is the empty chain. Nested sequences are
/// not representable, so appending is always flat.
class ChainSequence {
public:
    ChainSequence() = default;
    explicit ChainSequence(std::vector<ChainLink> links) : links_(std::move(links)) {}

    const std::vector<ChainLink>& links() const { return links_; }
    std::size_t size() const { return links_.size(); }
    bool empty() const { return links_.empty(); }
    const ChainLink& operator[](std::size_t i) const { return links_[i]; }
    const ChainLink& back() const { return links_.back(); }

    /// First n links.
    ChainSequence prefix(std::size_t n) const;
    bool has_key(const PublicKey& key) const;
    bool has_repeated_key() const;

    friend bool operator==(const ChainSequence&, const ChainSequence&) = default;

private:
    std::vector<ChainLink> links_;
};

/// True iff `candidate` equals the first |candidate| links of `seq`
/// (the empty sequence is a prefix of everything).
bool is_prefix(const ChainSequence& seq, const ChainSequence& candidate);
/// True iff the two sequences share a non-empty common prefix.
bool overlap(const ChainSequence& a, const ChainSequence& b);
/// Element set of the longest common prefix.
LinkSet common_prefix_set(const ChainSequence& a, const ChainSequence& b);
LinkSet link_union(const ChainSequence& a, const ChainSequence& b);
LinkSet link_intersection(const ChainSequence& a, const ChainSequence& b);
ChainSequence append(const ChainSequence& seq, ChainLink link);

/// Input to the hash for the first `length` links:
/// tag || u32 length || per link (u32 |m| || m || 48-byte key).
Bytes encode_prefix(const ChainSequence& seq, std::size_t length);
/// hash_to_g1 over encode_prefix(prefix, |prefix|). Throws on empty input.
G1Element prefix_digest(const ChainSequence& prefix);

class EcsSignature {
public:
    /// The unit signature of the empty chain.
    EcsSignature() = default;
    explicit EcsSignature(G1Element value) : value_(value) {}

    static EcsSignature unit() { return {}; }

    const G1Element& value() const { return value_; }
    bool is_unit() const { return value_.is_identity(); }

    /// 0x00 for the unit, otherwise 0x01 || 48-byte point.
    Bytes to_wire() const;
    static EcsSignature from_wire(ByteReader& reader);

    friend bool operator==(const EcsSignature&, const EcsSignature&) = default;

private:
    G1Element value_;
};

class KeyPair {
public:
    /// Throws std::invalid_argument unless `pub` = g^priv.
    KeyPair(Scalar priv, PublicKey pub);

    static KeyPair generate(const bilinear::GroupContext& ctx, ByteView seed);
    static KeyPair from_private(Scalar priv);

    const Scalar& private_key() const { return private_; }
    const PublicKey& public_key() const { return public_; }

private:
    Scalar private_;
    PublicKey public_;
};

class SignError : public std::runtime_error {
public:
    enum class Kind { kDuplicateKey, kInvalidPriorSignature };

    SignError(Kind kind, const char* what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Extends (prior_seq, prior_sig) by (msg, kp.public_key()). Fails with
/// kDuplicateKey if the signer already appears and kInvalidPriorSignature if
/// the prior pair does not verify.
EcsSignature sign(const KeyPair& kp, ByteView msg, const ChainSequence& prior_seq,
                  const EcsSignature& prior_sig);

/// Same as sign() but trusts that prior_sig already verified on prior_seq.
/// Still refuses a duplicate signer key.
EcsSignature extend_verified(const KeyPair& kp, ByteView msg, const ChainSequence& prior_seq,
                             const EcsSignature& prior_sig);

bool verify(const ChainSequence& seq, const EcsSignature& sig);

/// Divides the contributions of the last |suffix_keys| links out of sig.
/// The keys are given in link order and must match those links. Returns a
/// signature on the remaining prefix.
EcsSignature strip(const ChainSequence& seq, const EcsSignature& sig,
                   std::span<const Scalar> suffix_keys);

struct SignedChain {
    ChainSequence sequence;
    EcsSignature signature;
};

/// Batch verification with per-chain 128-bit randomizers derived from the
/// whole batch. Accepts iff every chain verifies individually (except with
/// probability about 2^-128). Throws std::invalid_argument on an empty batch.
bool aggregate_verify(std::span<const SignedChain> chains);

/// u32 link count || per link (u32 |m| || m || 144-byte key) || signature wire.
Bytes encode_chain(const SignedChain& chain);
SignedChain decode_chain(ByteView bytes);

}  // namespace ssbgp::ecs

#endif  // SSBGP_ECS_HPP
