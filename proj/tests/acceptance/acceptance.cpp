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


// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "../oracles/bfs_oracle.hpp"
#include "ssbgp/ecs.hpp"
#include "ssbgp/game.hpp"
#include "ssbgp/perf.hpp"
#include "ssbgp/routing.hpp"
#include "ssbgp/sim/simulator.hpp"

namespace {

using namespace ssbgp;
namespace fs = std::filesystem;

// Collects the first few mismatches so a FAIL line says why.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        if (failures_.size() < 4) failures_.push_back(what);
        ++failed_;
    }
    bool ok() const { return failed_ == 0; }
    std::string summary() const {
        if (ok()) return std::to_string(checks_) + " checks";
        std::string s = std::to_string(failed_) + "/" + std::to_string(checks_) + " failed:";
        for (const auto& f : failures_) s += " [" + f + "]";
        return s;
    }

private:
    std::size_t checks_ = 0, failed_ = 0;
    std::vector<std::string> failures_;
};

sim::Scenario bundled(const std::string& name) {
    return sim::load_scenario(fs::path(SSBGP_SCENARIO_DIR) / (name + ".json"));
}

std::string hop(const sim::Metrics& m, const std::string& at) {
    const auto* r = m.route(at, "A");
    return r ? r->next_hop : "<none>";
}

Check truncation_matrix() {
    Check c;
    auto t0 = std::chrono::steady_clock::now();

    auto bgp = sim::run_scenario(bundled("relay_bgp_truncation"));
    c.expect(hop(bgp, "D") == "F", "BGP: D next hop " + hop(bgp, "D"));
    bool d_intercepted = std::any_of(bgp.packets.begin(), bgp.packets.end(), [](const sim::PacketOutcome& p) {
        return p.src == "D" && std::count(p.intercepted_by.begin(), p.intercepted_by.end(), "F");
    });
    c.expect(d_intercepted, "BGP: no packet from D intercepted by F");

    auto sbgp = sim::run_scenario(bundled("relay_sbgp_truncation"));
    c.expect(hop(sbgp, "D") == "C", "S-BGP: D next hop " + hop(sbgp, "D"));

    auto ss = sim::run_scenario(bundled("relay_ssbgp_truncation"));
    c.expect(hop(ss, "D") == "C", "SS-BGP: D next hop " + hop(ss, "D"));
    auto bad = ss.nodes.at("D").rejections_of("BadSignature");
    c.expect(bad == 1, "SS-BGP: " + std::to_string(bad) + " BadSignature rejections at D");

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(secs < 5.0, "took " + std::to_string(secs) + " s");
    return c;
}

Check honest_equivalence() {
    Check c;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        std::size_t n = 2 + seed % 11;  // 2..12 nodes
        auto bgp_s = sim::random_scenario(seed, n, routing::Protocol::kBgp);
        auto ss_s = sim::random_scenario(seed, n, routing::Protocol::kSsbgp);
        auto adj = sim::coverage_graph(bgp_s);
        auto bgp = sim::run_scenario(bgp_s, seed);
        auto ss = sim::run_scenario(ss_s, seed);
        auto tag = "seed " + std::to_string(seed);
        for (const auto& node : bgp_s.nodes) {
            const auto& tb = bgp.nodes.at(node.id).table.entries();
            const auto& ts = ss.nodes.at(node.id).table.entries();
            c.expect(tb == ts, tag + ": tables differ at " + node.id);
        }
        for (const auto& dest : bgp_s.initiators) {
            for (const auto& [id, d] : oracle::bfs_hops(adj, dest)) {
                for (const auto* m : {&bgp, &ss}) {
                    const auto* r = m->route(id, dest);
                    c.expect(r && r->metric == d, tag + ": " + id + "->" + dest + " metric");
                    if (r && d > 0)
                        c.expect(adj.at(id).count(r->next_hop) && oracle::bfs_hops(adj, r->next_hop).at(dest) == d - 1,
                                 tag + ": " + id + "->" + dest + " next hop not on a shortest path");
                }
            }
        }
    }
    return c;
}

Check ecs_algebra() {
    Check c;
    const auto& ctx = bilinear::GroupContext::bls12_381();
    auto intruder = ecs::KeyPair::generate(ctx, as_bytes("acceptance/intruder"));
    for (std::size_t n = 1; n <= 10; ++n) {
        auto tag = "n=" + std::to_string(n);
        std::vector<ecs::KeyPair> keys;
        std::vector<ecs::ChainSequence> seqs{ecs::ChainSequence{}};
        std::vector<ecs::EcsSignature> sigs{ecs::EcsSignature::unit()};
        for (std::size_t j = 0; j < n; ++j) {
            keys.push_back(ecs::KeyPair::generate(ctx, as_bytes(tag + "/key/" + std::to_string(j))));
            auto msg = to_bytes(tag + "/msg/" + std::to_string(j));
            sigs.push_back(ecs::sign(keys.back(), msg, seqs.back(), sigs.back()));
            seqs.push_back(ecs::append(seqs.back(), {msg, keys.back().public_key()}));
        }
        const auto& full = seqs[n];
        const auto& sigma = sigs[n];
        c.expect(ecs::verify(full, sigma), tag + ": honest chain invalid");
        for (std::size_t j = 0; j < n; ++j)
            c.expect(!ecs::verify(full.prefix(j), sigma), tag + ": prefix " + std::to_string(j) + " valid");
        for (std::size_t j = 0; j < n; ++j) {
            auto links = full.links();
            links[j].message.push_back('!');
            c.expect(!ecs::verify(ecs::ChainSequence(links), sigma), tag + ": message tamper valid");
            links = full.links();
            links[j].key = intruder.public_key();
            c.expect(!ecs::verify(ecs::ChainSequence(links), sigma), tag + ": key tamper valid");
        }
        auto bumped = ecs::EcsSignature(sigma.value() * bilinear::G1Element::generator());
        c.expect(!ecs::verify(full, bumped), tag + ": signature tamper valid");
        for (std::size_t k = 1; k <= n; ++k) {
            std::vector<bilinear::Scalar> suffix;
            for (std::size_t j = n - k; j < n; ++j) suffix.push_back(keys[j].private_key());
            c.expect(ecs::strip(full, sigma, suffix).to_wire() == sigs[n - k].to_wire(),
                     tag + ": strip " + std::to_string(k) + " differs from honest prefix signature");
        }
        c.expect(!ecs::verify(ecs::ChainSequence{}, sigma), tag + ": (empty, sigma) valid");
    }
    c.expect(ecs::verify(ecs::ChainSequence{}, ecs::EcsSignature::unit()), "(empty, unit) invalid");
    c.expect(!ecs::verify(ecs::ChainSequence{}, ecs::EcsSignature(bilinear::G1Element::generator())),
             "(empty, generator) valid");
    return c;
}

Check constant_overhead() {
    Check c;
    const auto& ctx = bilinear::GroupContext::bls12_381();
    c.expect(bilinear::kPointBytes <= 64, "point size above 64 bytes");
    routing::SsbgpUpdate ss;
    routing::BgpUpdate bgp;
    ecs::ChainSequence chain;
    for (std::size_t n = 1; n <= 100; ++n) {
        auto kp = ecs::KeyPair::generate(ctx, as_bytes("acceptance/overhead/" + std::to_string(n)));
        routing::NodeId id = "N" + std::to_string(n - 1);
        ss.path.push_back({n, id, {}});
        auto msg = ss.path.back().message();
        ss.sigma = ecs::extend_verified(kp, msg, chain, ss.sigma);
        chain = ecs::append(chain, {msg, kp.public_key()});
        bgp.entries.push_back(routing::bgp_sign_entry(kp, n == 1 ? "" : "N" + std::to_string(n - 2), id, n));
        if (n != 1 && n != 10 && n != 100) continue;

        routing::KeyRegistry registry;
        routing::SsbgpRouter ss_router("observer", kp, registry, {});
        routing::BgpRouter bgp_router("observer", kp, registry, {});
        auto ss_sig = ss_router.signature_bytes(ss.to_wire());
        auto bgp_sig = bgp_router.signature_bytes(bgp.to_wire());
        c.expect(ss_sig == bilinear::kPointBytes, "SS-BGP n=" + std::to_string(n) + ": " + std::to_string(ss_sig));
        c.expect(ss.to_wire().size() - ss.path_bytes() == bilinear::kPointBytes, "SS-BGP wire overhead");
        c.expect(bgp_sig == n * bilinear::kPointBytes, "BGP n=" + std::to_string(n) + ": " + std::to_string(bgp_sig));
    }
    return c;
}

Check performance_shape() {
    Check c;
    perf::BenchOptions opt;
    opt.sizes = {1, 10, 50, 100};
    opt.iterations = 5;
    opt.warmup = 1;
    auto rows = perf::bench_chain(opt);
    const auto& r1 = rows.front();
    const auto& r100 = rows.back();
    c.expect(r100.verify_us <= 10e6, "verify n=100 took " + std::to_string(r100.verify_us) + " us");
    auto spread = perf::sign_spread({r1, r100});
    c.expect(spread <= 5.0, "sign spread " + std::to_string(spread));
    auto dev = perf::verify_linear_deviation(rows);
    c.expect(dev <= 3.0, "verify deviates " + std::to_string(dev) + "x from a linear fit");
    std::cout << "  verify_us(100)=" << r100.verify_us << " sign_spread=" << spread << " linear_dev=" << dev << '\n';
    return c;
}

Check message_complexity() {
    Check c;
    auto s = sim::run_scenario(bundled("relay_sbgp")).nodes.at("C").broadcasts_sent;
    auto ss = sim::run_scenario(bundled("relay_ssbgp")).nodes.at("C").broadcasts_sent;
    c.expect(s == 2, "S-BGP: C sent " + std::to_string(s));
    c.expect(ss == 1, "SS-BGP: C sent " + std::to_string(ss));
    return c;
}

Check security_game() {
    Check c;
    for (const auto& adv : game::builtin_adversaries()) {
        for (const char* bits : {"000", "001", "010", "100", "011", "101", "110", "111"}) {
            game::GameConfig cfg;
            cfg.n = 3;
            cfg.extr = game::GameConfig::parse_extr(bits);
            cfg.omega = 1;
            auto r = game::run_game(cfg, adv);
            c.expect(r.outcome == game::Outcome::kLose, adv.name + " wins with extr " + bits);
        }
    }
    game::GameConfig cfg;
    cfg.n = 3;
    cfg.extr = game::GameConfig::parse_extr("001");
    cfg.omega = 1;
    auto r = game::run_game(cfg, *game::find_adversary("strip"));
    c.expect(r.verified, "strip output does not verify");
    c.expect(r.report && !r.report->non_signable && r.report->failing_clause == 3, "strip not signable by clause 3");
    bool named = std::any_of(r.transcript.begin(), r.transcript.end(),
                             [](const std::string& l) { return l.find("clause 3 fails") != std::string::npos; });
    c.expect(named, "transcript does not name clause 3");
    return c;
}

Check determinism() {
    Check c;
    auto dir = fs::temp_directory_path() / "ssbgp-acceptance-determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::size_t count = 0;
    for (const auto& e : fs::directory_iterator(SSBGP_SCENARIO_DIR)) {
        if (e.path().extension() != ".json") continue;
        ++count;
        auto s = sim::load_scenario(e.path());
        std::string files[2];
        for (int run = 0; run < 2; ++run) {
            auto path = dir / (e.path().stem().string() + "." + std::to_string(run) + ".json");
            std::ofstream(path, std::ios::binary) << sim::run_scenario(s, 0).to_json();
            std::ifstream in(path, std::ios::binary);
            std::stringstream buf;
            buf << in.rdbuf();
            files[run] = buf.str();
        }
        c.expect(!files[0].empty() && files[0] == files[1], e.path().filename().string() + " differs between runs");
    }
    c.expect(count > 0, "no bundled scenarios");
    fs::remove_all(dir);
    return c;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"1 truncation attack matrix", truncation_matrix},
        {"2 honest equivalence vs BFS", honest_equivalence},
        {"3 ECS algebra suite", ecs_algebra},
        {"4 constant-size overhead", constant_overhead},
        {"5 performance shape", performance_shape},
        {"6 S-BGP message complexity", message_complexity},
        {"7 security-game harness", security_game},
        {"8 determinism", determinism},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Check c;
        try {
            c = run();
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.ok() ? "PASS " : "FAIL ") << name << " (" << c.summary() << ")" << std::endl;
        failed += !c.ok();
    }
    return failed == 0 ? 0 : 1;
}
