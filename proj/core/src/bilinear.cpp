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

#include "ssbgp/bilinear.hpp"

#include <algorithm>
#include <cstring>

#include <blst.h>

namespace ssbgp::bilinear {

static_assert(sizeof(blst_p1) == sizeof(std::array<std::uint64_t, 18>));
static_assert(sizeof(blst_p2) == sizeof(std::array<std::uint64_t, 36>));
static_assert(sizeof(blst_fp12) == sizeof(std::array<std::uint64_t, 72>));

// Bridges the opaque storage in the header to blst structs.
class Internal {
public:
    static blst_p1* p1(G1Element& e) { return reinterpret_cast<blst_p1*>(e.raw_.data()); }
    static const blst_p1* p1(const G1Element& e) {
        return reinterpret_cast<const blst_p1*>(e.raw_.data());
    }
    static blst_p2* p2(DualElement& e) { return reinterpret_cast<blst_p2*>(e.g2_raw_.data()); }
    static const blst_p2* p2(const DualElement& e) {
        return reinterpret_cast<const blst_p2*>(e.g2_raw_.data());
    }
    static G1Element& g1(DualElement& e) { return e.g1_; }
    static blst_fp12* fp12(GtElement& e) { return reinterpret_cast<blst_fp12*>(e.raw_.data()); }
    static const blst_fp12* fp12(const GtElement& e) {
        return reinterpret_cast<const blst_fp12*>(e.raw_.data());
    }
};

namespace {

constexpr std::string_view kScalarTag = "ECS-SSBGP-v1-SCALAR";
constexpr std::size_t kScalarBits = 255;

blst_fr to_fr(const Scalar& s) {
    blst_scalar raw;
    blst_scalar_from_bendian(&raw, s.to_bytes().data());
    blst_fr fr;
    blst_fr_from_scalar(&fr, &raw);
    return fr;
}

blst_scalar to_blst_scalar(const Scalar& s) {
    blst_scalar raw;
    blst_scalar_from_bendian(&raw, s.to_bytes().data());
    return raw;
}

Scalar from_fr(const blst_fr& fr) {
    blst_scalar raw;
    blst_scalar_from_fr(&raw, &fr);
    std::array<std::uint8_t, kScalarBytes> be{};
    blst_bendian_from_scalar(be.data(), &raw);
    return Scalar::from_bytes(be);
}

void miller(blst_fp12* out, const blst_p1* lhs, const blst_p2* rhs) {
    blst_p1_affine p;
    blst_p2_affine q;
    blst_p1_to_affine(&p, lhs);
    blst_p2_to_affine(&q, rhs);
    blst_miller_loop(out, &q, &p);
}

}  // namespace

// --- Scalar -----------------------------------------------------------------

Scalar Scalar::from_u64(std::uint64_t v) {
    std::array<std::uint8_t, kScalarBytes> be{};
    for (int i = 0; i < 8; ++i) be[kScalarBytes - 1 - i] = static_cast<std::uint8_t>(v >> (8 * i));
    return reduce(be);
}

Scalar Scalar::from_bytes(ByteView be) {
    if (be.size() != kScalarBytes) throw BackendError("scalar must be 32 bytes");
    blst_scalar raw;
    blst_scalar_from_bendian(&raw, be.data());
    if (!blst_scalar_fr_check(&raw)) throw BackendError("scalar not reduced modulo q");
    Scalar s;
    std::copy(be.begin(), be.end(), s.be_.begin());
    return s;
}

Scalar Scalar::reduce(ByteView be) {
    blst_scalar raw{};
    if (!be.empty()) blst_scalar_from_be_bytes(&raw, be.data(), be.size());
    Scalar s;
    blst_bendian_from_scalar(s.be_.data(), &raw);
    return s;
}

bool Scalar::is_zero() const {
    return std::all_of(be_.begin(), be_.end(), [](std::uint8_t b) { return b == 0; });
}

Scalar Scalar::operator+(const Scalar& rhs) const {
    blst_fr a = to_fr(*this), b = to_fr(rhs), r;
    blst_fr_add(&r, &a, &b);
    return from_fr(r);
}

Scalar Scalar::operator-(const Scalar& rhs) const {
    blst_fr a = to_fr(*this), b = to_fr(rhs), r;
    blst_fr_sub(&r, &a, &b);
    return from_fr(r);
}

Scalar Scalar::operator*(const Scalar& rhs) const {
    blst_fr a = to_fr(*this), b = to_fr(rhs), r;
    blst_fr_mul(&r, &a, &b);
    return from_fr(r);
}

Scalar Scalar::operator-() const {
    blst_fr a = to_fr(*this), r;
    blst_fr_cneg(&r, &a, true);
    return from_fr(r);
}

// --- G1Element ----------------------------------------------------------------

G1Element::G1Element() {
    // all-zero projective coordinates are blst's point at infinity
}

G1Element G1Element::generator() {
    G1Element e;
    *Internal::p1(e) = *blst_p1_generator();
    return e;
}

G1Element G1Element::from_bytes(ByteView compressed) {
    if (compressed.size() != kPointBytes) throw BackendError("G1 encoding must be 48 bytes");
    blst_p1_affine aff;
    if (blst_p1_uncompress(&aff, compressed.data()) != BLST_SUCCESS)
        throw BackendError("G1 encoding is not a curve point");
    if (!blst_p1_affine_in_g1(&aff)) throw BackendError("G1 point outside the prime-order subgroup");
    G1Element e;
    blst_p1_from_affine(Internal::p1(e), &aff);
    return e;
}

G1Element G1Element::pow(const Scalar& e) const {
    auto raw = to_blst_scalar(e);
    G1Element out;
    blst_p1_mult(Internal::p1(out), Internal::p1(*this), raw.b, kScalarBits);
    return out;
}

G1Element G1Element::operator*(const G1Element& rhs) const {
    G1Element out;
    blst_p1_add_or_double(Internal::p1(out), Internal::p1(*this), Internal::p1(rhs));
    return out;
}

G1Element& G1Element::operator*=(const G1Element& rhs) {
    blst_p1_add_or_double(Internal::p1(*this), Internal::p1(*this), Internal::p1(rhs));
    return *this;
}

G1Element G1Element::inverse() const {
    G1Element out = *this;
    blst_p1_cneg(Internal::p1(out), true);
    return out;
}

bool G1Element::is_identity() const { return blst_p1_is_inf(Internal::p1(*this)); }

bool G1Element::in_subgroup() const { return blst_p1_in_g1(Internal::p1(*this)); }

std::array<std::uint8_t, kPointBytes> G1Element::to_bytes() const {
    std::array<std::uint8_t, kPointBytes> out{};
    blst_p1_compress(out.data(), Internal::p1(*this));
    return out;
}

bool operator==(const G1Element& a, const G1Element& b) {
    return blst_p1_is_equal(Internal::p1(a), Internal::p1(b));
}

// --- DualElement --------------------------------------------------------------

DualElement::DualElement() = default;

DualElement DualElement::generator() {
    DualElement e;
    Internal::g1(e) = G1Element::generator();
    *Internal::p2(e) = *blst_p2_generator();
    return e;
}

DualElement DualElement::from_exponent(const Scalar& x) { return generator().pow(x); }

DualElement DualElement::from_bytes(ByteView encoded) {
    if (encoded.size() != kDualPointBytes) throw BackendError("dual encoding must be 144 bytes");
    DualElement e;
    Internal::g1(e) = G1Element::from_bytes(encoded.first(kPointBytes));
    blst_p2_affine aff;
    if (blst_p2_uncompress(&aff, encoded.data() + kPointBytes) != BLST_SUCCESS)
        throw BackendError("G2 encoding is not a curve point");
    if (!blst_p2_affine_in_g2(&aff)) throw BackendError("G2 point outside the prime-order subgroup");
    blst_p2_from_affine(Internal::p2(e), &aff);
    if (!e.is_consistent()) throw BackendError("dual element halves have different logarithms");
    return e;
}

DualElement DualElement::pow(const Scalar& e) const {
    auto raw = to_blst_scalar(e);
    DualElement out;
    Internal::g1(out) = g1_.pow(e);
    blst_p2_mult(Internal::p2(out), Internal::p2(*this), raw.b, kScalarBits);
    return out;
}

DualElement DualElement::operator*(const DualElement& rhs) const {
    DualElement out;
    Internal::g1(out) = g1_ * rhs.g1_;
    blst_p2_add_or_double(Internal::p2(out), Internal::p2(*this), Internal::p2(rhs));
    return out;
}

bool DualElement::is_consistent() const {
    // e(a1, h) == e(g, a2)
    blst_fp12 lhs, rhs;
    miller(&lhs, Internal::p1(g1_), blst_p2_generator());
    miller(&rhs, blst_p1_generator(), Internal::p2(*this));
    return blst_fp12_finalverify(&lhs, &rhs);
}

std::array<std::uint8_t, kDualPointBytes> DualElement::to_bytes() const {
    std::array<std::uint8_t, kDualPointBytes> out{};
    auto first = g1_.to_bytes();
    std::copy(first.begin(), first.end(), out.begin());
    blst_p2_compress(out.data() + kPointBytes, Internal::p2(*this));
    return out;
}

bool operator==(const DualElement& a, const DualElement& b) {
    return a.g1_ == b.g1_ && blst_p2_is_equal(Internal::p2(a), Internal::p2(b));
}

// --- GtElement ----------------------------------------------------------------

GtElement::GtElement() { *Internal::fp12(*this) = *blst_fp12_one(); }

GtElement GtElement::operator*(const GtElement& rhs) const {
    GtElement out;
    blst_fp12_mul(Internal::fp12(out), Internal::fp12(*this), Internal::fp12(rhs));
    return out;
}

GtElement& GtElement::operator*=(const GtElement& rhs) {
    blst_fp12_mul(Internal::fp12(*this), Internal::fp12(*this), Internal::fp12(rhs));
    return *this;
}

GtElement GtElement::pow(const Scalar& e) const {
    const auto& be = e.to_bytes();
    GtElement acc;
    for (auto byte : be) {
        for (int bit = 7; bit >= 0; --bit) {
            blst_fp12_sqr(Internal::fp12(acc), Internal::fp12(acc));
            if ((byte >> bit) & 1) acc *= *this;
        }
    }
    return acc;
}

bool GtElement::is_one() const { return blst_fp12_is_one(Internal::fp12(*this)); }

bool GtElement::in_group() const { return blst_fp12_in_group(Internal::fp12(*this)); }

bool operator==(const GtElement& a, const GtElement& b) {
    return blst_fp12_is_equal(Internal::fp12(a), Internal::fp12(b));
}

// --- free functions -----------------------------------------------------------

GtElement pairing(const G1Element& lhs, const DualElement& rhs) {
    PairingTerm term{lhs, rhs};
    return pairing_product(std::span<const PairingTerm>(&term, 1));
}

GtElement pairing_product(std::span<const PairingTerm> terms) {
    blst_fp12 acc = *blst_fp12_one();
    for (const auto& t : terms) {
        if (t.lhs.is_identity() || t.rhs.is_identity()) continue;
        blst_fp12 ml;
        miller(&ml, Internal::p1(t.lhs), Internal::p2(t.rhs));
        blst_fp12_mul(&acc, &acc, &ml);
    }
    GtElement out;
    blst_final_exp(Internal::fp12(out), &acc);
    return out;
}

G1Element hash_to_g1(ByteView msg) {
    G1Element out;
    auto dst = as_bytes(kHashToCurveTag);
    blst_hash_to_g1(Internal::p1(out), msg.data(), msg.size(), dst.data(), dst.size(), nullptr, 0);
    return out;
}

Bytes expand_message(ByteView msg, std::string_view dst, std::size_t out_len) {
    if (out_len == 0 || out_len > 255 * 32) throw BackendError("expand_message length out of range");
    Bytes out(out_len);
    auto tag = as_bytes(dst);
    blst_expand_message_xmd(out.data(), out.size(), msg.data(), msg.size(), tag.data(), tag.size());
    return out;
}

GroupContext::GroupContext()
    : order_{0x73, 0xed, 0xa7, 0x53, 0x29, 0x9d, 0x7d, 0x48, 0x33, 0x39, 0xd8,
             0x08, 0x09, 0xa1, 0xd8, 0x05, 0x53, 0xbd, 0xa4, 0x02, 0xff, 0xfe,
             0x5b, 0xfe, 0xff, 0xff, 0xff, 0xff, 0x00, 0x00, 0x00, 0x01},
      generator_(DualElement::generator()) {}

const GroupContext& GroupContext::bls12_381() {
    static const GroupContext ctx;
    return ctx;
}

Scalar random_scalar(const GroupContext&, ByteView seed) {
    if (seed.empty()) throw std::invalid_argument("scalar seed must be non-empty");
    Bytes input(seed.begin(), seed.end());
    input.resize(seed.size() + 4);
    for (std::uint32_t counter = 0;; ++counter) {
        for (int i = 0; i < 4; ++i)
            input[seed.size() + i] = static_cast<std::uint8_t>(counter >> (24 - 8 * i));
        // 48 bytes keeps the modular bias below 2^-128.
        auto wide = expand_message(input, kScalarTag, 48);
        auto s = Scalar::reduce(wide);
        if (!s.is_zero()) return s;
    }
}

}  // namespace ssbgp::bilinear
