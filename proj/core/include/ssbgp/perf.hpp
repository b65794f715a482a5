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

// Chain sign/verify timing used by `ssbgp bench` and the acceptance suite.

#ifndef SSBGP_PERF_HPP
#define SSBGP_PERF_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace ssbgp::perf {

struct BenchOptions {
    std::vector<std::size_t> sizes{1, 10, 50, 100};
    int iterations = 10;
    int warmup = 2;
};

struct BenchRow {
    std::size_t n = 0;
    double sign_us = 0;    // median: adding link n to a verified n-1 chain
    double verify_us = 0;  // median: verifying the n-link chain
};

std::vector<BenchRow> bench_chain(const BenchOptions& options);

std::string to_csv(const std::vector<BenchRow>& rows);
std::string to_json(const std::vector<BenchRow>& rows);

/// Worst ratio max/min of sign times across rows.
double sign_spread(const std::vector<BenchRow>& rows);
/// Largest factor by which a verify time deviates from the least-squares
/// line a + b*n fitted through all rows (max of fit/actual, actual/fit).
double verify_linear_deviation(const std::vector<BenchRow>& rows);

}  // namespace ssbgp::perf

#endif  // SSBGP_PERF_HPP
