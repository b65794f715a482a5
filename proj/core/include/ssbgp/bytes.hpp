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

#ifndef SSBGP_BYTES_HPP
#define SSBGP_BYTES_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ssbgp {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Thrown by ByteReader when a buffer ends early or a field is malformed.
class DecodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline ByteView as_bytes(std::string_view s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

inline Bytes to_bytes(std::string_view s) {
    auto v = as_bytes(s);
    return {v.begin(), v.end()};
}

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);

// Big-endian append-only writer used by every wire format in the project.
class ByteWriter {
public:
    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void raw(ByteView data) { out_.insert(out_.end(), data.begin(), data.end()); }
    void raw(std::string_view s) { raw(as_bytes(s)); }

    // 1-byte length then the string; throws std::length_error beyond 255.
    void short_string(std::string_view s);

    const Bytes& bytes() const& { return out_; }
    Bytes bytes() && { return std::move(out_); }
    std::size_t size() const { return out_.size(); }

private:
    Bytes out_;
};

class ByteReader {
public:
    explicit ByteReader(ByteView data) : data_(data) {}

    std::uint8_t u8();
    std::uint16_t u16();
    std::uint32_t u32();
    std::uint64_t u64();
    ByteView raw(std::size_t n);
    std::string short_string();

    std::size_t remaining() const { return data_.size() - pos_; }
    bool done() const { return remaining() == 0; }
    void expect_done() const;

private:
    ByteView data_;
    std::size_t pos_ = 0;
};

}  // namespace ssbgp

#endif  // SSBGP_BYTES_HPP
