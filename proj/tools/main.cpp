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

// ssbgp command-line tool. Exit codes: 0 success, 1 internal error,
// 2 user or input error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ssbgp/ecs.hpp"
#include "ssbgp/game.hpp"
#include "ssbgp/perf.hpp"
#include "ssbgp/sim/simulator.hpp"
#include "ssbgp/vectors.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kInput = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw InputError("cannot write " + out);
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// --- run -------------------------------------------------------------------------

std::string metrics_csv(const ssbgp::sim::Metrics& m) {
    std::ostringstream out;
    out << "node,role,broadcasts_sent,control_bytes_sent,signature_bytes_sent,data_broadcasts,rejections,routes\n";
    for (const auto& [id, n] : m.nodes) {
        std::string routes;
        for (const auto& [dest, e] : n.table.entries()) {
            if (!routes.empty()) routes += ' ';
            routes += dest + ":" + e.next_hop + ":" + std::to_string(e.metric);
        }
        out << id << ',' << ssbgp::sim::to_string(n.role) << ',' << n.broadcasts_sent << ',' << n.control_bytes_sent
            << ',' << n.signature_bytes_sent << ',' << n.data_broadcasts << ',' << n.rejections.size() << ','
            << routes << '\n';
    }
    return out.str();
}

std::string render(const ssbgp::sim::Metrics& m, const std::string& format) {
    return format == "csv" ? metrics_csv(m) : m.to_json();
}

struct RunArgs {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "json";
    std::size_t random_nodes = 0;
    std::string protocol = "ssbgp";
};

int cmd_run(const RunArgs& a) {
    using namespace ssbgp::sim;
    if (a.random_nodes > 0) {
        auto proto = ssbgp::routing::parse_protocol(a.protocol);
        if (!proto) throw InputError("unknown protocol '" + a.protocol + "'");
        auto s = random_scenario(a.seed, a.random_nodes, *proto);
        emit(render(run_scenario(s, a.seed), a.format), a.out);
        return kOk;
    }
    if (a.scenario.empty()) throw InputError("run needs a scenario path or --random");
    fs::path path(a.scenario);
    if (!fs::exists(path)) throw InputError("no such scenario: " + a.scenario);

    if (!fs::is_directory(path)) {
        emit(render(run_scenario(load_scenario(path), a.seed), a.format), a.out);
        return kOk;
    }

    if (a.out.empty()) throw InputError("running a directory needs --out <dir>");
    fs::create_directories(a.out);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw InputError("no scenario files in " + a.scenario);
    for (const auto& f : files) {
        auto m = run_scenario(load_scenario(f), a.seed);
        auto target = fs::path(a.out) / (f.stem().string() + (a.format == "csv" ? ".csv" : ".json"));
        emit(render(m, a.format), target.string());
        std::cout << f.filename().string() << " -> " << target.string() << '\n';
    }
    return kOk;
}

// --- bench -----------------------------------------------------------------------

int cmd_bench(std::size_t max_n, std::vector<std::size_t> sizes, int iterations, int warmup,
              const std::string& format, const std::string& out) {
    if (max_n < 1) throw InputError("--max-n must be >= 1");
    ssbgp::perf::BenchOptions opt;
    const bool explicit_sizes = !sizes.empty();
    if (explicit_sizes) opt.sizes = std::move(sizes);
    std::erase_if(opt.sizes, [&](std::size_t n) { return n > max_n; });
    if (!explicit_sizes && std::find(opt.sizes.begin(), opt.sizes.end(), max_n) == opt.sizes.end())
        opt.sizes.push_back(max_n);
    if (opt.sizes.empty() || std::any_of(opt.sizes.begin(), opt.sizes.end(), [](auto n) { return n == 0; }))
        throw InputError("bench sizes must be between 1 and --max-n");
    opt.iterations = iterations;
    opt.warmup = warmup;
    auto rows = ssbgp::perf::bench_chain(opt);
    emit(format == "json" ? ssbgp::perf::to_json(rows) : ssbgp::perf::to_csv(rows), out);
    return kOk;
}

// --- vector ----------------------------------------------------------------------

int cmd_vector(std::size_t count, std::uint64_t seed, const std::string& out, const std::string& verify_path) {
    if (!verify_path.empty()) {
        auto report = ssbgp::vectors::verify(read_file(verify_path));
        for (const auto& f : report.failures) std::cerr << "FAIL " << f << '\n';
        if (!report.ok()) return kInput;
        std::cout << "OK " << report.checked << " vectors\n";
        return kOk;
    }
    if (count < 1) throw InputError("--count must be >= 1");
    emit(ssbgp::vectors::generate(count, seed), out);
    return kOk;
}

// --- game ------------------------------------------------------------------------

int cmd_game(std::size_t n, const std::string& extr, int omega, const std::string& adversary,
             const std::string& seed, const std::string& format, const std::string& out) {
    using namespace ssbgp::game;
    auto adv = find_adversary(adversary);
    if (!adv) {
        std::string names;
        for (const auto& a : builtin_adversaries()) names += " " + a.name;
        throw InputError("unknown adversary '" + adversary + "'; built-ins:" + names);
    }
    GameConfig cfg;
    cfg.n = n;
    try {
        cfg.extr = extr.empty() ? std::vector<bool>(n, false) : GameConfig::parse_extr(extr);
        cfg.omega = omega;
        cfg.seed = seed;
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    auto r = run_game(cfg, *adv);
    std::string result = r.outcome == Outcome::kWin ? "WIN" : "LOSE";
    if (format == "json") {
        nlohmann::json doc{{"adversary", adv->name}, {"transcript", r.transcript}, {"verified", r.verified},
                           {"result", result}, {"diagnostic", r.diagnostic}};
        if (r.report)
            doc["non_signable"] = {{"value", r.report->non_signable},
                                   {"failing_clause", r.report->failing_clause},
                                   {"explanation", r.report->explanation}};
        emit(doc.dump(2) + "\n", out);
    } else {
        std::string text;
        for (const auto& line : r.transcript) text += line + "\n";
        emit(text, out);
    }
    return kOk;
}

// --- keygen ----------------------------------------------------------------------

int cmd_keygen(const std::vector<std::string>& ids, std::uint64_t seed, const std::string& out) {
    const auto& ctx = ssbgp::bilinear::GroupContext::bls12_381();
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& id : ids) {
        // Same derivation as the simulator's node keys.
        auto kp = ssbgp::ecs::KeyPair::generate(ctx, ssbgp::as_bytes("node-key:" + std::to_string(seed) + ":" + id));
        doc[id] = {{"private_key", ssbgp::to_hex(kp.private_key().to_bytes())},
                   {"public_key", ssbgp::to_hex(kp.public_key().to_wire())},
                   {"public_key_g1", ssbgp::to_hex(kp.public_key().canonical_bytes())}};
    }
    emit(doc.dump(2) + "\n", out);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stateless secure BGP with chain signatures: simulator, benchmarks, vectors and game harness"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ssbgp 0.1.0");

    std::string format;  // empty: the subcommand's default
    std::string out;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App* sub, const std::string& default_format) {
        sub->add_option("--seed", seed, "Deterministic seed")->capture_default_str();
        sub->add_option("--out", out, "Output file (stdout if omitted; a directory for 'run <dir>')");
        sub->add_option("--format", format, "Output format (default " + default_format + ")")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->final_callback([&format, default_format] {
            if (format.empty()) format = default_format;
        });
    };

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario file or every scenario in a directory");
    run_cmd->add_option("scenario", run.scenario, "Scenario JSON file or directory");
    run_cmd->add_option("--random", run.random_nodes, "Generate a connected random topology with this many nodes");
    run_cmd->add_option("--protocol", run.protocol, "Protocol for --random (bgp, sbgp, ssbgp)")->capture_default_str();
    add_common(run_cmd, "json");

    std::size_t max_n = 100;
    std::vector<std::size_t> sizes;
    int iterations = 10, warmup = 2;
    auto* bench_cmd = app.add_subcommand("bench", "Time chain sign and verify");
    bench_cmd->add_option("--max-n", max_n, "Largest chain length")->capture_default_str();
    bench_cmd->add_option("--sizes", sizes, "Chain lengths (default 1,10,50,100)")->delimiter(',');
    bench_cmd->add_option("--iterations", iterations, "Timed iterations")->capture_default_str()->check(CLI::PositiveNumber);
    bench_cmd->add_option("--warmup", warmup, "Warmup iterations")->capture_default_str()->check(CLI::NonNegativeNumber);
    add_common(bench_cmd, "csv");

    std::size_t count = 3;
    std::string verify_path;
    auto* vector_cmd = app.add_subcommand("vector", "Generate or check chain-signature test vectors");
    vector_cmd->add_option("--count", count, "Number of vectors")->capture_default_str();
    vector_cmd->add_option("--verify", verify_path, "Check an existing vector file instead");
    add_common(vector_cmd, "json");

    std::size_t game_n = 3;
    std::string extr, adversary = "replay", game_seed = "game";
    int omega = 1;
    auto* game_cmd = app.add_subcommand("game", "Play the unforgeability game against a built-in adversary");
    game_cmd->add_option("--n", game_n, "Number of keys")->capture_default_str();
    game_cmd->add_option("--extr", extr, "Extraction bit string, e.g. 001 (default all zero)");
    game_cmd->add_option("--omega", omega, "Game variant (1 or 2)")->capture_default_str();
    game_cmd->add_option("--adversary", adversary, "replay, naive-truncate, strip or random-forge")->capture_default_str();
    game_cmd->add_option("--game-seed", game_seed, "Seed string for the challenger's keys")->capture_default_str();
    add_common(game_cmd, "text");

    std::vector<std::string> ids;
    auto* keygen_cmd = app.add_subcommand("keygen", "Derive node key pairs as the simulator does");
    keygen_cmd->add_option("ids", ids, "Node ids")->required();
    add_common(keygen_cmd, "json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    try {
        if (*run_cmd) {
            run.seed = seed;
            run.out = out;
            run.format = format;
            return cmd_run(run);
        }
        if (*bench_cmd) return cmd_bench(max_n, sizes, iterations, warmup, format, out);
        if (*vector_cmd) return cmd_vector(count, seed, out, verify_path);
        if (*game_cmd) return cmd_game(game_n, extr, omega, adversary, game_seed, format, out);
        if (*keygen_cmd) return cmd_keygen(ids, seed, out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const ssbgp::sim::ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << '\n';
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kInternal;
}
