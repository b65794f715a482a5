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

#include "ssbgp/game.hpp"

#include <algorithm>

namespace ssbgp::game {

using ecs::ChainLink;
using ecs::ChainSequence;
using ecs::EcsSignature;
using ecs::PublicKey;

namespace {

// Membership in L over the given key universe; empty string when it holds.
std::string outside_l(const ChainSequence& seq, const std::set<PublicKey>& universe) {
    if (seq.empty()) return "sequence is empty";
    if (seq.has_repeated_key()) return "sequence repeats a key";
    for (const auto& l : seq.links())
        if (!universe.contains(l.key)) return "sequence uses a key outside the game";
    return {};
}

Bytes game_message(std::size_t j) { return to_bytes("msg-" + std::to_string(j + 1)); }

ChainSequence full_sequence(const Challenger& c) {
    std::vector<ChainLink> links;
    for (std::size_t j = 0; j < c.public_keys().size(); ++j) links.push_back({game_message(j), c.public_keys()[j]});
    return ChainSequence(std::move(links));
}

std::optional<ForgeryClaim> play_replay(Challenger& c) {
    auto seq = full_sequence(c);
    auto sig = c.sign(seq);
    return ForgeryClaim{seq, sig};
}

std::optional<ForgeryClaim> play_naive_truncate(Challenger& c) {
    auto seq = full_sequence(c);
    auto sig = c.sign(seq);
    return ForgeryClaim{seq.prefix(seq.size() - 1), sig};
}

// Signs the full sequence, then divides out the longest suffix whose private
// keys it holds (from setup or, under omega = 2, from extract queries).
std::optional<ForgeryClaim> play_strip(Challenger& c) {
    auto seq = full_sequence(c);
    auto sig = c.sign(seq);
    std::vector<bilinear::Scalar> suffix;
    for (std::size_t j = seq.size(); j-- > 1;) {
        const auto& key = seq[j].key;
        std::optional<bilinear::Scalar> secret;
        for (const auto& e : c.initial_extracted())
            if (e.key == key) secret = e.secret;
        if (!secret) secret = c.extract(key);
        if (!secret) break;
        suffix.insert(suffix.begin(), *secret);
    }
    if (suffix.empty()) return ForgeryClaim{seq.prefix(seq.size() - 1), sig};
    auto stripped = ecs::strip(seq, sig, suffix);
    return ForgeryClaim{seq.prefix(seq.size() - suffix.size()), stripped};
}

std::optional<ForgeryClaim> play_random_forge(Challenger& c) {
    std::vector<ChainLink> links;
    const auto& keys = c.public_keys();
    for (std::size_t j = keys.size(); j-- > 0;)
        links.push_back({to_bytes("forged-" + std::to_string(j)), keys[j]});
    auto junk = bilinear::hash_to_g1(as_bytes("random-forge:" + c.config().seed));
    return ForgeryClaim{ChainSequence(std::move(links)), EcsSignature(junk)};
}

}  // namespace

// --- configuration -------------------------------------------------------------

void GameConfig::validate() const {
    if (n == 0) throw std::invalid_argument("game needs at least one key");
    if (extr.size() != n) throw std::invalid_argument("extr must have exactly n bits");
    if (omega != 1 && omega != 2) throw std::invalid_argument("omega must be 1 or 2");
}

std::vector<bool> GameConfig::parse_extr(const std::string& bits) {
    std::vector<bool> out;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("extr must be a string of 0s and 1s");
        out.push_back(ch == '1');
    }
    return out;
}

// --- non-signable predicate ------------------------------------------------------

NonSignableReport evaluate_non_signable(const ChainSequence& claim, const QueryLog& log) {
    if (auto why = outside_l(claim, log.universe); !why.empty()) throw std::invalid_argument(why);

    NonSignableReport r;
    const auto& signed_seqs = log.signed_sequences;
    for (std::size_t i = 0; i < signed_seqs.size(); ++i) {
        if (signed_seqs[i] == claim) {
            r.failing_clause = 1;
            r.witness = i;
            r.explanation = "claim was itself a sign query (#" + std::to_string(i) + ")";
            return r;
        }
    }

    auto unextracted = [&](const ChainLink& l) { return !log.extracted_keys.contains(l.key); };
    if (std::none_of(claim.links().begin(), claim.links().end(), unextracted)) {
        r.failing_clause = 2;
        r.explanation = "every key of the claim is extracted";
        return r;
    }

    for (std::size_t i = 0; i < signed_seqs.size(); ++i) {
        if (!ecs::overlap(signed_seqs[i], claim)) continue;
        auto residue = ecs::link_union(signed_seqs[i], claim);
        for (const auto& l : ecs::common_prefix_set(signed_seqs[i], claim)) residue.erase(l);
        if (std::none_of(residue.begin(), residue.end(), unextracted)) {
            r.failing_clause = 3;
            r.witness = i;
            r.explanation = "links past the common prefix with sign query #" + std::to_string(i) +
                            " all have extracted keys";
            return r;
        }
    }

    r.non_signable = true;
    r.explanation = "all three clauses hold";
    return r;
}

bool non_signable(const ChainSequence& claim, const QueryLog& log) {
    return evaluate_non_signable(claim, log).non_signable;
}

// --- challenger ------------------------------------------------------------------

Challenger::Challenger(const GameConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
    const auto& ctx = bilinear::GroupContext::bls12_381();
    for (std::size_t i = 0; i < cfg_.n; ++i) {
        auto seed = "game:" + cfg_.seed + ":key:" + std::to_string(i + 1);
        pairs_.push_back(ecs::KeyPair::generate(ctx, as_bytes(seed)));
        public_.push_back(pairs_.back().public_key());
        log_.universe.insert(public_.back());
        if (cfg_.extr[i]) {
            initial_.push_back({public_.back(), pairs_.back().private_key()});
            log_.extracted_keys.insert(public_.back());
        }
    }
    std::string bits;
    for (bool b : cfg_.extr) bits.push_back(b ? '1' : '0');
    note("setup tau=" + std::to_string(cfg_.tau) + " n=" + std::to_string(cfg_.n) + " extr=" + bits +
         " omega=" + std::to_string(cfg_.omega));
    for (std::size_t i = 0; i < cfg_.n; ++i)
        note("key " + label(public_[i]) + " = " + to_hex(public_[i].canonical_bytes()).substr(0, 16) + "..." +
             (cfg_.extr[i] ? " (extracted at setup)" : ""));
}

std::string Challenger::label(const PublicKey& key) const {
    for (std::size_t i = 0; i < public_.size(); ++i)
        if (public_[i] == key) return "y" + std::to_string(i + 1);
    return "y?";
}

std::string Challenger::describe(const ChainSequence& seq) const {
    std::string out = "<";
    for (std::size_t j = 0; j < seq.size(); ++j) {
        if (j) out += ", ";
        out += "(" + std::string(seq[j].message.begin(), seq[j].message.end()) + ", " + label(seq[j].key) + ")";
    }
    return out + ">";
}

const ecs::KeyPair& Challenger::pair_for(const PublicKey& key) const {
    for (const auto& kp : pairs_)
        if (kp.public_key() == key) return kp;
    throw ProtocolViolation("query names a key outside the game");
}

std::optional<bilinear::Scalar> Challenger::extract(const PublicKey& key) {
    const auto& kp = pair_for(key);
    if (cfg_.omega == 1) {
        note("extract " + label(key) + " -> bottom");
        return std::nullopt;
    }
    log_.extracted_keys.insert(key);
    note("extract " + label(key) + " -> private key");
    return kp.private_key();
}

EcsSignature Challenger::sign(const ChainSequence& seq) {
    if (auto why = outside_l(seq, log_.universe); !why.empty()) throw ProtocolViolation("sign query: " + why);
    ChainSequence prior;
    EcsSignature sig;
    for (const auto& l : seq.links()) {
        sig = ecs::extend_verified(pair_for(l.key), l.message, prior, sig);
        prior = ecs::append(prior, l);
    }
    log_.signed_sequences.push_back(seq);
    note("sign " + describe(seq));
    return sig;
}

// --- game --------------------------------------------------------------------------

GameResult run_game(const GameConfig& cfg, const Adversary& adversary) {
    Challenger challenger(cfg);
    challenger.note("adversary " + adversary.name);
    GameResult result;
    try {
        result.claim = adversary.play(challenger);
    } catch (const ProtocolViolation& e) {
        result.diagnostic = std::string("protocol violation: ") + e.what();
    }

    auto finish = [&](GameResult& r) {
        challenger.note(std::string("result ") + (r.outcome == Outcome::kWin ? "WIN" : "LOSE") +
                        (r.diagnostic.empty() ? "" : " (" + r.diagnostic + ")"));
        r.transcript = challenger.transcript();
        return r;
    };

    if (!result.diagnostic.empty()) return finish(result);
    if (!result.claim) {
        result.diagnostic = "adversary produced no claim";
        return finish(result);
    }

    const auto& claim = *result.claim;
    challenger.note("claim " + challenger.describe(claim.sequence));
    if (auto why = outside_l(claim.sequence, challenger.log().universe); !why.empty()) {
        result.diagnostic = "claim outside L: " + why;
        return finish(result);
    }

    result.verified = ecs::verify(claim.sequence, claim.signature);
    challenger.note(std::string("verify ") + (result.verified ? "VALID" : "INVALID"));
    result.report = evaluate_non_signable(claim.sequence, challenger.log());
    challenger.note(std::string("non-signable ") + (result.report->non_signable ? "true" : "false") + ": " +
                    (result.report->failing_clause ? "clause " + std::to_string(result.report->failing_clause) +
                                                         " fails, "
                                                   : "") +
                    result.report->explanation);

    if (result.verified && result.report->non_signable) {
        const auto& ls = challenger.log().signed_sequences;
        if (std::find(ls.begin(), ls.end(), claim.sequence) != ls.end())
            throw std::logic_error("a sign-query input was classified as a win");
        result.outcome = Outcome::kWin;
    }
    return finish(result);
}

std::vector<Adversary> builtin_adversaries() {
    return {
        {"replay", play_replay},
        {"naive-truncate", play_naive_truncate},
        {"strip", play_strip},
        {"random-forge", play_random_forge},
    };
}

std::optional<Adversary> find_adversary(const std::string& name) {
    for (auto& a : builtin_adversaries())
        if (a.name == name) return a;
    return std::nullopt;
}

}  // namespace ssbgp::game
