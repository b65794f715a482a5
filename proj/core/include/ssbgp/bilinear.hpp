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
 * Pairing-friendly group triple behind a symmetric-looking interface.
 *
 * The concrete curve is BLS12-381. It is asymmetric, so "points that can sit
 * on the right-hand side of a pairing" (the generator and public keys) are
 * carried as a DualElement: the same discrete log in both source groups. Any
 * other G1 point (hash outputs, signatures) is a plain G1Element. All
 * operations are multiplicative to match the usual signature-scheme notation.
 */

#ifndef SSBGP_BILINEAR_HPP
#define SSBGP_BILINEAR_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>

#include "ssbgp/bytes.hpp"

namespace ssbgp::bilinear {

inline constexpr std::size_t kScalarBytes = 32;
/// Compressed G1 encoding length (L_pt).
inline constexpr std::size_t kPointBytes = 48;
inline constexpr std::size_t kG2PointBytes = 96;
inline constexpr std::size_t kDualPointBytes = kPointBytes + kG2PointBytes;

/// Domain-separation tag for hash-to-curve (RFC 9380 SSWU, SHA-256).
inline constexpr std::string_view kHashToCurveTag = "ECS-SSBGP-v1";

class BackendError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integer modulo the group order q. Stored as 32-byte big-endian, always < q.
class Scalar {
public:
    Scalar() = default;

    static Scalar from_u64(std::uint64_t v);
    /// Exactly 32 big-endian bytes, rejected unless < q.
    static Scalar from_bytes(ByteView be);
    /// Any-length big-endian integer reduced modulo q.
    static Scalar reduce(ByteView be);

    const std::array<std::uint8_t, kScalarBytes>& to_bytes() const { return be_; }
    bool is_zero() const;

    Scalar operator+(const Scalar& rhs) const;
    Scalar operator-(const Scalar& rhs) const;
    Scalar operator*(const Scalar& rhs) const;
    Scalar operator-() const;

    friend bool operator==(const Scalar&, const Scalar&) = default;

private:
    std::array<std::uint8_t, kScalarBytes> be_{};
};

class G1Element {
public:
    /// Group identity.
    G1Element();

    static G1Element identity() { return {}; }
    static G1Element generator();
    static G1Element from_bytes(ByteView compressed);

    G1Element pow(const Scalar& e) const;
    G1Element operator*(const G1Element& rhs) const;
    G1Element& operator*=(const G1Element& rhs);
    G1Element inverse() const;

    bool is_identity() const;
    bool in_subgroup() const;
    std::array<std::uint8_t, kPointBytes> to_bytes() const;

    friend bool operator==(const G1Element& a, const G1Element& b);

private:
    friend class DualElement;
    friend class Internal;
    alignas(8) std::array<std::uint64_t, 18> raw_{};
};

/// A G1 point together with its twin in the second source group
/// (g^x in G1 and h^x in G2 for the same x).
class DualElement {
public:
    /// Identity in both groups.
    DualElement();

    static DualElement generator();
    static DualElement from_exponent(const Scalar& x);
    /// 144 bytes: compressed G1 half followed by compressed G2 half. Rejects
    /// off-curve or out-of-subgroup halves and halves with different logs.
    static DualElement from_bytes(ByteView encoded);

    DualElement pow(const Scalar& e) const;
    DualElement operator*(const DualElement& rhs) const;

    const G1Element& g1() const { return g1_; }
    bool is_identity() const { return g1_.is_identity(); }
    /// Pairing check that both halves share a discrete log.
    bool is_consistent() const;
    std::array<std::uint8_t, kDualPointBytes> to_bytes() const;

    friend bool operator==(const DualElement& a, const DualElement& b);

private:
    friend class Internal;
    G1Element g1_;
    alignas(8) std::array<std::uint64_t, 36> g2_raw_{};
};

/// Element of the order-q subgroup of the target field.
class GtElement {
public:
    GtElement();

    static GtElement one() { return {}; }

    GtElement operator*(const GtElement& rhs) const;
    GtElement& operator*=(const GtElement& rhs);
    GtElement pow(const Scalar& e) const;

    bool is_one() const;
    bool in_group() const;

    friend bool operator==(const GtElement& a, const GtElement& b);

private:
    friend class Internal;
    alignas(8) std::array<std::uint64_t, 72> raw_{};
};

struct PairingTerm {
    G1Element lhs;
    DualElement rhs;
};

/// Bilinear, non-degenerate: pairing(g^a, g^b) == pairing(g, g)^(ab).
GtElement pairing(const G1Element& lhs, const DualElement& rhs);

/// Product of pairings with one shared final exponentiation.
GtElement pairing_product(std::span<const PairingTerm> terms);

G1Element hash_to_g1(ByteView msg);

/// SHA-256 expand_message_xmd; used for seeded scalar derivation and
/// batch-verification randomizers.
Bytes expand_message(ByteView msg, std::string_view dst, std::size_t out_len);

/// Common public parameters: order q, generator g, security level.
class GroupContext {
public:
    static const GroupContext& bls12_381();

    const std::array<std::uint8_t, kScalarBytes>& order() const { return order_; }
    const DualElement& generator() const { return generator_; }
    unsigned security_bits() const { return 128; }
    std::string_view curve_name() const { return "BLS12-381"; }

private:
    GroupContext();

    std::array<std::uint8_t, kScalarBytes> order_{};
    DualElement generator_;
};

/// Deterministic scalar in [1, q-1] derived from a non-empty seed.
Scalar random_scalar(const GroupContext& ctx, ByteView seed);

}  // namespace ssbgp::bilinear

#endif  // SSBGP_BILINEAR_HPP
