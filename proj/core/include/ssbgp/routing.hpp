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

#ifndef SSBGP_ROUTING_HPP
#define SSBGP_ROUTING_HPP

#include <memory>

#include "ssbgp/routing/bgp.hpp"
#include "ssbgp/routing/common.hpp"
#include "ssbgp/routing/sbgp.hpp"
#include "ssbgp/routing/ssbgp.hpp"

namespace ssbgp::routing {

std::unique_ptr<Router> make_router(Protocol protocol, NodeId self, ecs::KeyPair key, const KeyRegistry& registry,
                                    Router::Options options);

}  // namespace ssbgp::routing

#endif  // SSBGP_ROUTING_HPP
