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

// Shortest-hop oracle over a plain adjacency list. Deliberately shares no
// code with the routing engines.

#ifndef SSBGP_TESTS_BFS_ORACLE_HPP
#define SSBGP_TESTS_BFS_ORACLE_HPP

#include <deque>
#include <map>
#include <set>
#include <string>

namespace ssbgp::oracle {

inline std::map<std::string, unsigned> bfs_hops(const std::map<std::string, std::set<std::string>>& adj,
                                                const std::string& from) {
    std::map<std::string, unsigned> dist{{from, 0}};
    std::deque<std::string> queue{from};
    while (!queue.empty()) {
        auto u = queue.front();
        queue.pop_front();
        for (const auto& v : adj.at(u)) {
            if (dist.count(v)) continue;
            dist[v] = dist[u] + 1;
            queue.push_back(v);
        }
    }
    return dist;
}

}  // namespace ssbgp::oracle

#endif  // SSBGP_TESTS_BFS_ORACLE_HPP
