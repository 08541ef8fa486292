// Copyright 2026 The mmcoord Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MMCOORD_MMCOORD_HPP_
#define MMCOORD_MMCOORD_HPP_

// Umbrella header: the whole library except JSON I/O (which pulls in the
// vendored nlohmann/json single header).

#include "mmcoord/baselines.hpp"
#include "mmcoord/channel.hpp"
#include "mmcoord/config.hpp"
#include "mmcoord/coordinator.hpp"
#include "mmcoord/experiment.hpp"
#include "mmcoord/lbap.hpp"
#include "mmcoord/metrics.hpp"
#include "mmcoord/rng.hpp"
#include "mmcoord/topology.hpp"
#include "mmcoord/validation.hpp"

#endif  // MMCOORD_MMCOORD_HPP_
