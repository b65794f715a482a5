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

#include "ssbgp/perf.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "ssbgp/ecs.hpp"

namespace ssbgp::perf {

namespace {

template <class F>
double median_us(int iterations, int warmup, F&& f) {
    for (int i = 0; i < warmup; ++i) f();
    std::vector<double> samples;
    for (int i = 0; i < iterations; ++i) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        auto t1 = std::chrono::steady_clock::now();
        samples.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
    }
    std::sort(samples.begin(), samples.end());
    auto mid = samples.size() / 2;
    return samples.size() % 2 ? samples[mid] : (samples[mid - 1] + samples[mid]) / 2;
}

}  // namespace

std::vector<BenchRow> bench_chain(const BenchOptions& options) {
    if (options.sizes.empty() || options.iterations < 1 || options.warmup < 0)
        throw std::invalid_argument("bench needs sizes, iterations >= 1 and warmup >= 0");
    const auto& ctx = bilinear::GroupContext::bls12_381();
    std::size_t max_n = *std::max_element(options.sizes.begin(), options.sizes.end());
    if (max_n == 0) throw std::invalid_argument("bench sizes must be >= 1");

    std::vector<ecs::KeyPair> keys;
    std::vector<ecs::ChainSequence> seqs{ecs::ChainSequence{}};
    std::vector<ecs::EcsSignature> sigs{ecs::EcsSignature::unit()};
    for (std::size_t j = 0; j < max_n; ++j) {
        keys.push_back(ecs::KeyPair::generate(ctx, as_bytes("bench-key:" + std::to_string(j))));
        auto msg = to_bytes("bench-msg:" + std::to_string(j));
        sigs.push_back(ecs::extend_verified(keys.back(), msg, seqs.back(), sigs.back()));
        seqs.push_back(ecs::append(seqs.back(), {msg, keys.back().public_key()}));
    }

    std::vector<BenchRow> rows;
    for (auto n : options.sizes) {
        if (n == 0) throw std::invalid_argument("bench sizes must be >= 1");
        BenchRow row{n, 0, 0};
        const auto& msg = seqs[n][n - 1].message;
        volatile bool sink = false;
        row.sign_us = median_us(options.iterations, options.warmup, [&] {
            auto s = ecs::extend_verified(keys[n - 1], msg, seqs[n - 1], sigs[n - 1]);
            sink = s.is_unit();
        });
        row.verify_us = median_us(options.iterations, options.warmup, [&] {
            sink = ecs::verify(seqs[n], sigs[n]);
        });
        if (!ecs::verify(seqs[n], sigs[n])) throw std::logic_error("benchmark chain does not verify");
        rows.push_back(row);
    }
    return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "n,sign_us,verify_us\n";
    for (const auto& r : rows) out << r.n << ',' << r.sign_us << ',' << r.verify_us << '\n';
    return out.str();
}

std::string to_json(const std::vector<BenchRow>& rows) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows) doc.push_back({{"n", r.n}, {"sign_us", r.sign_us}, {"verify_us", r.verify_us}});
    return doc.dump(2) + "\n";
}

double sign_spread(const std::vector<BenchRow>& rows) {
    if (rows.empty()) return 1.0;
    auto [lo, hi] = std::minmax_element(rows.begin(), rows.end(),
                                        [](const BenchRow& a, const BenchRow& b) { return a.sign_us < b.sign_us; });
    return hi->sign_us / lo->sign_us;
}

double verify_linear_deviation(const std::vector<BenchRow>& rows) {
    if (rows.size() < 2) return 1.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, k = static_cast<double>(rows.size());
    for (const auto& r : rows) {
        double x = static_cast<double>(r.n);
        sx += x;
        sy += r.verify_us;
        sxx += x * x;
        sxy += x * r.verify_us;
    }
    double b = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    double a = (sy - b * sx) / k;
    double worst = 1.0;
    for (const auto& r : rows) {
        double fit = a + b * static_cast<double>(r.n);
        if (fit <= 0) return std::numeric_limits<double>::infinity();
        worst = std::max({worst, fit / r.verify_us, r.verify_us / fit});
    }
    return worst;
}

}  // namespace ssbgp::perf
