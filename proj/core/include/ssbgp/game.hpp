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
 * Unforgeability game harness for chain signatures.
 *
 * The challenger creates n key pairs, hands out the public keys and the
 * private keys selected by `extr`, then answers extract and sign queries. The
 * adversary wins if its final claim verifies and is non-signable, i.e. it is
 * (1) not a sign-query input, (2) contains a key outside the extracted set
 * Y_X, and (3) for every signed sequence sharing a prefix with it, the links
 * outside the shared prefix include one whose key is outside Y_X.
 *
 * Clause (3) is evaluated on the key of each link in that residual set.
 *
 * This is a harness, not a proof: it shows that known strategies lose and
 * that extraction makes truncation possible without counting as a win.
 */

#ifndef SSBGP_GAME_HPP
#define SSBGP_GAME_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssbgp/ecs.hpp"

namespace ssbgp::game {

struct GameConfig {
    unsigned tau = 128;
    std::size_t n = 3;
    std::vector<bool> extr;  // extr[i] selects key i for extraction at setup
    int omega = 1;           // 1: extract answers bottom; 2: extract answers
    std::string seed = "game";

    /// Throws std::invalid_argument on |extr| != n, n == 0 or omega outside {1,2}.
    void validate() const;
    /// Parses an extr bit string such as "001".
    static std::vector<bool> parse_extr(const std::string& bits);
};

struct QueryLog {
    std::set<ecs::PublicKey> universe;        // Y
    std::set<ecs::PublicKey> extracted_keys;  // Y_X
    std::vector<ecs::ChainSequence> signed_sequences;  // L_S
};

struct ForgeryClaim {
    ecs::ChainSequence sequence;
    ecs::EcsSignature signature;
};

/// Clause numbers follow the definition: 1 fresh, 2 unextracted key,
/// 3 residue past every overlapping signed sequence.
struct NonSignableReport {
    bool non_signable = false;
    int failing_clause = 0;  // 0 when all clauses hold
    std::optional<std::size_t> witness;  // index into L_S for clauses 1 and 3
    std::string explanation;
};

/// Throws std::invalid_argument if the claim is empty, repeats a key, or
/// uses a key outside log.universe.
NonSignableReport evaluate_non_signable(const ecs::ChainSequence& claim, const QueryLog& log);
bool non_signable(const ecs::ChainSequence& claim, const QueryLog& log);

class ProtocolViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExtractedKey {
    ecs::PublicKey key;
    bilinear::Scalar secret;
};

class Challenger {
public:
    explicit Challenger(const GameConfig& cfg);

    const GameConfig& config() const { return cfg_; }
    const std::vector<ecs::PublicKey>& public_keys() const { return public_; }
    /// Private keys handed over at setup (the set X).
    const std::vector<ExtractedKey>& initial_extracted() const { return initial_; }

    /// Bottom (nullopt) when omega == 1; otherwise the key joins Y_X.
    std::optional<bilinear::Scalar> extract(const ecs::PublicKey& key);
    /// Signs any sequence in L. Throws ProtocolViolation otherwise.
    ecs::EcsSignature sign(const ecs::ChainSequence& seq);

    const QueryLog& log() const { return log_; }
    const std::vector<std::string>& transcript() const { return transcript_; }
    void note(std::string line) { transcript_.push_back(std::move(line)); }
    /// Human-readable form using y1..yn labels.
    std::string describe(const ecs::ChainSequence& seq) const;
    std::string label(const ecs::PublicKey& key) const;

private:
    const ecs::KeyPair& pair_for(const ecs::PublicKey& key) const;

    GameConfig cfg_;
    std::vector<ecs::KeyPair> pairs_;
    std::vector<ecs::PublicKey> public_;
    std::vector<ExtractedKey> initial_;
    QueryLog log_;
    std::vector<std::string> transcript_;
};

/// A strategy gets the challenger as its oracle and returns its claim, or
/// nullopt to give up.
struct Adversary {
    std::string name;
    std::function<std::optional<ForgeryClaim>(Challenger&)> play;
};

enum class Outcome { kWin, kLose };

struct GameResult {
    Outcome outcome = Outcome::kLose;
    std::optional<ForgeryClaim> claim;
    bool verified = false;
    std::optional<NonSignableReport> report;
    std::string diagnostic;
    std::vector<std::string> transcript;
};

GameResult run_game(const GameConfig& cfg, const Adversary& adversary);

/// replay, naive-truncate, strip, random-forge.
std::vector<Adversary> builtin_adversaries();
std::optional<Adversary> find_adversary(const std::string& name);

}  // namespace ssbgp::game

#endif  // SSBGP_GAME_HPP
