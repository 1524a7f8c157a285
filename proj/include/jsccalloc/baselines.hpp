// Copyright 2026 The jsccalloc Authors
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

#ifndef JSCCALLOC_BASELINES_HPP_
#define JSCCALLOC_BASELINES_HPP_

#include <cstdint>

#include "jsccalloc/capacity.hpp"

namespace jscc {

// Full Hungarian matching on the pair power matrix, then greedy admission
// in ascending power until the budget runs out.
AllocationResult hungarian_greedy(const Scenario& scenario, const PsnrModel& model);
AllocationResult hungarian_greedy_with_matrix(const Scenario& scenario, const PowerMatrix& pm,
                                              const PsnrModel& model);

// Seeded uniform random injective user->RB pairing (all RBs drawn when
// K > M), per-pair minimum powers, greedy admission by ascending power.
AllocationResult random_pairing(const Scenario& scenario, const PsnrModel& model,
                                std::uint64_t seed);
AllocationResult random_pairing_with_matrix(const Scenario& scenario, const PowerMatrix& pm,
                                            const PsnrModel& model, std::uint64_t seed);

enum class UniformShare { kPerUser, kPerRb };  // budget / K vs budget / M

// Same random pairing, but every paired user just receives an equal budget
// share; a user is served iff its share covers the pair's minimum power.
AllocationResult uniform_power(const Scenario& scenario, const PsnrModel& model,
                               std::uint64_t seed, UniformShare share = UniformShare::kPerUser);
AllocationResult uniform_power_with_matrix(const Scenario& scenario, const PowerMatrix& pm,
                                           const PsnrModel& model, std::uint64_t seed,
                                           UniformShare share = UniformShare::kPerUser);

// The adaptive pipeline with the compression ratio pinned to `cr` (must be
// one of config.cr_set). Pairs whose delay bound or quality target cannot
// be met at that ratio drop out.
AllocationResult fixed_cr(const Scenario& scenario, const PsnrModel& model, double cr,
                          Backend backend = Backend::kFlow);

}  // namespace jscc

#endif  // JSCCALLOC_BASELINES_HPP_
