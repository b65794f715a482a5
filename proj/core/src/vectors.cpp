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

#include "ssbgp/vectors.hpp"

#include "json.hpp"
#include "ssbgp/ecs.hpp"

namespace ssbgp::vectors {

using nlohmann::json;

std::string generate(std::size_t count, std::uint64_t seed) {
    if (count == 0) throw std::invalid_argument("vector count must be >= 1");
    const auto& ctx = bilinear::GroupContext::bls12_381();
    json doc;
    doc["format"] = std::string(kFormat);
    doc["seed"] = seed;
    doc["vectors"] = json::array();
    for (std::size_t i = 0; i < count; ++i) {
        ecs::SignedChain chain;
        json links = json::array();
        for (std::size_t j = 0; j <= i; ++j) {
            auto tag = std::to_string(seed) + ":" + std::to_string(i) + ":" + std::to_string(j);
            auto kp = ecs::KeyPair::generate(ctx, as_bytes("vector-key:" + tag));
            auto msg = to_bytes("vector-msg:" + tag);
            chain.signature = ecs::extend_verified(kp, msg, chain.sequence, chain.signature);
            chain.sequence = ecs::append(chain.sequence, {msg, kp.public_key()});
            links.push_back({{"message", to_hex(msg)},
                             {"public_key", to_hex(kp.public_key().to_wire())},
                             {"private_key", to_hex(kp.private_key().to_bytes())}});
        }
        doc["vectors"].push_back({{"n", i + 1},
                                  {"links", links},
                                  {"signature", to_hex(chain.signature.to_wire())},
                                  {"chain_wire", to_hex(ecs::encode_chain(chain))}});
    }
    return doc.dump(2) + "\n";
}

namespace {

// Empty string when the vector is good, otherwise the reason.
std::string check_vector(const json& v) {
    auto chain = ecs::decode_chain(from_hex(v.at("chain_wire").get<std::string>()));
    const auto& links = v.at("links");
    if (chain.sequence.size() != links.size() || v.at("n").get<std::size_t>() != links.size())
        return "link count mismatch";
    if (to_hex(chain.signature.to_wire()) != v.at("signature").get<std::string>())
        return "signature field differs from chain_wire";

    ecs::ChainSequence seq;
    ecs::EcsSignature sig;
    for (std::size_t j = 0; j < links.size(); ++j) {
        const auto& l = chain.sequence[j];
        if (to_hex(l.message) != links[j].at("message").get<std::string>() ||
            to_hex(l.key.to_wire()) != links[j].at("public_key").get<std::string>())
            return "link " + std::to_string(j) + " differs from chain_wire";
        auto priv = bilinear::Scalar::from_bytes(from_hex(links[j].at("private_key").get<std::string>()));
        ecs::KeyPair kp(priv, l.key);
        sig = ecs::extend_verified(kp, l.message, seq, sig);
        seq = ecs::append(seq, l);
    }
    if (!ecs::verify(chain.sequence, chain.signature)) return "chain signature does not verify";
    if (!(sig == chain.signature)) return "re-signing gives a different signature";
    return {};
}

}  // namespace

VerifyReport verify(std::string_view json_text) {
    VerifyReport report;
    json doc;
    try {
        doc = json::parse(json_text);
        if (doc.at("format").get<std::string>() != kFormat) {
            report.failures.push_back("unknown format");
            return report;
        }
        if (!doc.at("vectors").is_array()) throw std::invalid_argument("'vectors' is not an array");
    } catch (const std::exception& e) {
        report.failures.push_back(std::string("malformed vector file: ") + e.what());
        return report;
    }
    const auto& vs = doc.at("vectors");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        ++report.checked;
        std::string why;
        try {
            why = check_vector(vs[i]);
        } catch (const std::exception& e) {
            why = e.what();
        }
        if (!why.empty()) report.failures.push_back("vector " + std::to_string(i) + ": " + why);
    }
    return report;
}

}  // namespace ssbgp::vectors
