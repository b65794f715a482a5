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

#include "ssbgp/ecs.hpp"
#include "test_support.hpp"

namespace ssbgp::ecs {
namespace {

ChainLink link(const std::string& name) {
    return {to_bytes("m-" + name), testing::key_from("seq/" + name).public_key()};
}

ChainSequence seq(std::initializer_list<std::string> names) {
    std::vector<ChainLink> links;
    for (const auto& n : names) links.push_back(link(n));
    return ChainSequence(std::move(links));
}

TEST(SequenceCalculus, Prefix) {
    EXPECT_TRUE(is_prefix(seq({"y1", "y2"}), seq({"y1"})));
    EXPECT_FALSE(is_prefix(seq({"y1", "y2"}), seq({"y2"})));
    EXPECT_TRUE(is_prefix(seq({"y1", "y2"}), ChainSequence{}));
    EXPECT_TRUE(is_prefix(ChainSequence{}, ChainSequence{}));
    EXPECT_TRUE(is_prefix(seq({"y1", "y2"}), seq({"y1", "y2"})));
    EXPECT_FALSE(is_prefix(seq({"y1"}), seq({"y1", "y2"})));
}

TEST(SequenceCalculus, Overlap) {
    EXPECT_TRUE(overlap(seq({"y1", "y2"}), seq({"y1"})));
    EXPECT_FALSE(overlap(seq({"y1", "y2"}), seq({"y2"})));
    EXPECT_FALSE(overlap(ChainSequence{}, seq({"y1"})));
    EXPECT_FALSE(overlap(ChainSequence{}, ChainSequence{}));
}

TEST(SequenceCalculus, CommonPrefixSet) {
    EXPECT_EQ(common_prefix_set(seq({"p", "q", "r"}), seq({"p", "q", "s"})), (LinkSet{link("p"), link("q")}));
    EXPECT_TRUE(common_prefix_set(seq({"p", "q"}), seq({"q", "p"})).empty());
    auto a = seq({"p", "q", "r"});
    EXPECT_EQ(common_prefix_set(a, a), LinkSet(a.links().begin(), a.links().end()));
}

TEST(SequenceCalculus, UnionAndIntersection) {
    EXPECT_EQ(link_union(seq({"p"}), seq({"q"})), (LinkSet{link("p"), link("q")}));
    EXPECT_EQ(link_intersection(seq({"p", "q"}), seq({"q", "r"})), (LinkSet{link("q")}));
    EXPECT_TRUE(link_intersection(seq({"p", "q"}), ChainSequence{}).empty());
}

TEST(SequenceCalculus, AppendIsFlat) {
    EXPECT_EQ(append(ChainSequence{}, link("p")), seq({"p"}));
    EXPECT_EQ(append(seq({"p"}), link("q")), seq({"p", "q"}));
    auto a = seq({"p", "q", "r"});
    EXPECT_EQ(append(a, link("s")).size(), a.size() + 1);
    EXPECT_EQ(append(a, link("s")).prefix(3), a);
}

TEST(SequenceCalculus, LinkEqualityCoversMessageAndKey) {
    auto a = link("p");
    auto b = a;
    b.message.push_back('!');
    EXPECT_NE(a, b);
    auto c = a;
    c.key = link("q").key;
    EXPECT_NE(a, c);
}

TEST(SequenceCalculus, RepeatedKeysAreRepresentable) {
    auto a = link("p");
    auto b = a;
    b.message = to_bytes("other");
    ChainSequence s({a, b});
    EXPECT_TRUE(s.has_repeated_key());
    EXPECT_FALSE(seq({"p", "q"}).has_repeated_key());
}

// Independent re-statement of the prefix encoding.
Bytes hand_encoded_prefix(const ChainSequence& s) {
    Bytes out = to_bytes("ECS-PREFIX-v1");
    auto put32 = [&](std::uint32_t v) {
        for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    };
    put32(static_cast<std::uint32_t>(s.size()));
    for (const auto& l : s.links()) {
        put32(static_cast<std::uint32_t>(l.message.size()));
        out.insert(out.end(), l.message.begin(), l.message.end());
        auto k = l.key.point().g1().to_bytes();
        out.insert(out.end(), k.begin(), k.end());
    }
    return out;
}

TEST(PrefixDigest, EncodingLayout) {
    auto s = seq({"a", "b", "c"});
    EXPECT_EQ(encode_prefix(s, 3), hand_encoded_prefix(s));
    EXPECT_EQ(encode_prefix(s, 2), hand_encoded_prefix(s.prefix(2)));
    EXPECT_EQ(prefix_digest(s), bilinear::hash_to_g1(hand_encoded_prefix(s)));
    EXPECT_THROW(prefix_digest(ChainSequence{}), std::invalid_argument);
}

TEST(PrefixDigest, SensitiveToOrderAndBytes) {
    EXPECT_EQ(prefix_digest(seq({"a", "b"})), prefix_digest(seq({"a", "b"})));
    EXPECT_FALSE(prefix_digest(seq({"a", "b"})) == prefix_digest(seq({"b", "a"})));

    auto s = seq({"a", "b"});
    auto links = s.links();
    links[1].message.back() ^= 0x01;
    EXPECT_FALSE(prefix_digest(s) == prefix_digest(ChainSequence(links)));

    // Length prefixes keep ("ab","") and ("a","b")-style splits apart.
    auto k1 = link("a").key, k2 = link("b").key;
    ChainSequence split1({{to_bytes("ab"), k1}, {to_bytes(""), k2}});
    ChainSequence split2({{to_bytes("a"), k1}, {to_bytes("b"), k2}});
    EXPECT_NE(encode_prefix(split1, 2), encode_prefix(split2, 2));
}

}  // namespace
}  // namespace ssbgp::ecs
