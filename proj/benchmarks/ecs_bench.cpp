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


#include <benchmark/benchmark.h>

#include "ssbgp/ecs.hpp"
#include "ssbgp/routing.hpp"

namespace {

using namespace ssbgp;

struct Chain {
    std::vector<ecs::KeyPair> keys;
    std::vector<ecs::ChainSequence> seqs{ecs::ChainSequence{}};
    std::vector<ecs::EcsSignature> sigs{ecs::EcsSignature::unit()};
};

const Chain& chain() {
    static const Chain c = [] {
        Chain c;
        const auto& ctx = bilinear::GroupContext::bls12_381();
        for (int j = 0; j < 100; ++j) {
            c.keys.push_back(ecs::KeyPair::generate(ctx, as_bytes("bench:" + std::to_string(j))));
            auto msg = to_bytes("msg:" + std::to_string(j));
            c.sigs.push_back(ecs::extend_verified(c.keys.back(), msg, c.seqs.back(), c.sigs.back()));
            c.seqs.push_back(ecs::append(c.seqs.back(), {msg, c.keys.back().public_key()}));
        }
        return c;
    }();
    return c;
}

void BM_HashToG1(benchmark::State& state) {
    auto msg = to_bytes("hash me");
    for (auto _ : state) benchmark::DoNotOptimize(bilinear::hash_to_g1(msg));
}
BENCHMARK(BM_HashToG1);

// Appending link n to an already verified chain: constant in n.
void BM_ExtendVerified(benchmark::State& state) {
    const auto& c = chain();
    auto n = static_cast<std::size_t>(state.range(0));
    const auto& msg = c.seqs[n][n - 1].message;
    for (auto _ : state) benchmark::DoNotOptimize(ecs::extend_verified(c.keys[n - 1], msg, c.seqs[n - 1], c.sigs[n - 1]));
}
BENCHMARK(BM_ExtendVerified)->Arg(1)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

// Full sign, which re-verifies the prior chain first.
void BM_Sign(benchmark::State& state) {
    const auto& c = chain();
    auto n = static_cast<std::size_t>(state.range(0));
    const auto& msg = c.seqs[n][n - 1].message;
    for (auto _ : state) benchmark::DoNotOptimize(ecs::sign(c.keys[n - 1], msg, c.seqs[n - 1], c.sigs[n - 1]));
}
BENCHMARK(BM_Sign)->Arg(1)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
    const auto& c = chain();
    auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(ecs::verify(c.seqs[n], c.sigs[n]));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Verify)->Arg(1)->Arg(10)->Arg(50)->Arg(100)->Complexity(benchmark::oN)->Unit(benchmark::kMillisecond);

void BM_BaselineVerify(benchmark::State& state) {
    const auto& c = chain();
    auto msg = to_bytes("statement");
    auto sig = routing::baseline::sign(c.keys[0], "bench", msg);
    for (auto _ : state) benchmark::DoNotOptimize(routing::baseline::verify(c.keys[0].public_key(), "bench", msg, sig));
}
BENCHMARK(BM_BaselineVerify)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
