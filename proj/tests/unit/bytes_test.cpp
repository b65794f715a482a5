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

#include "ssbgp/bytes.hpp"

namespace ssbgp {
namespace {

TEST(Bytes, HexVectors) {
    EXPECT_EQ(to_hex(Bytes{}), "");
    EXPECT_EQ(to_hex(Bytes{0x00, 0xab, 0x7f}), "00ab7f");
    EXPECT_EQ(from_hex("00AB7f"), (Bytes{0x00, 0xab, 0x7f}));
    EXPECT_THROW(from_hex("abc"), DecodeError);
    EXPECT_THROW(from_hex("zz"), DecodeError);
}

TEST(Bytes, BigEndianFields) {
    ByteWriter w;
    w.u16(0x0102);
    w.u32(0x03040506);
    w.u64(0x0708090a0b0c0d0eULL);
    w.short_string("id");
    EXPECT_EQ(to_hex(w.bytes()), "0102030405060708090a0b0c0d0e026964");

    ByteReader r(w.bytes());
    EXPECT_EQ(r.u16(), 0x0102);
    EXPECT_EQ(r.u32(), 0x03040506u);
    EXPECT_EQ(r.u64(), 0x0708090a0b0c0d0eULL);
    EXPECT_EQ(r.short_string(), "id");
    EXPECT_NO_THROW(r.expect_done());
}

TEST(Bytes, ReaderRejectsTruncation) {
    Bytes two{0x00, 0x01};
    ByteReader r(two);
    EXPECT_THROW(r.u32(), DecodeError);

    Bytes trailing{0x01, 0x02};
    ByteReader t(trailing);
    t.u8();
    EXPECT_THROW(t.expect_done(), DecodeError);
}

TEST(Bytes, ShortStringLimit) {
    ByteWriter w;
    EXPECT_THROW(w.short_string(std::string(256, 'x')), std::length_error);
}

}  // namespace
}  // namespace ssbgp
