// Copyright 2026 The fgx Authors
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

#ifndef FGX_INFERENCE_HPP_
#define FGX_INFERENCE_HPP_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fgx/graph.hpp"

namespace fgx {

// The normalized joint distribution as one dense table over ALL variables,
// axes in declaration order, evidence variables clamped to point mass.
// Variables outside every function scope enter uniformly. Raises zero_mass
// when nothing is left after clamping and enumeration_too_large beyond the
// configuration cap.
FactorTable joint_enumerate(const FactorGraph& graph,
                            const Evidence& evidence = {});

enum class MarginalMethod { kEnumeration, kSumProduct };

struct MarginalOptions {
  MarginalMethod method = MarginalMethod::kEnumeration;
  // Message passing on a cyclic skeleton needs the loopy flag; results are
  // then approximate.
  bool loopy = false;
  int max_iters = 200;
  double damping = 0.5;
};

// P(var | evidence) as a normalized vector. The enumeration method reads the
// joint table; message passing gives the same answer on acyclic skeletons
// (not_a_tree on cyclic ones unless loopy is set).
std::vector<double> marginal(const FactorGraph& graph, const std::string& var,
                             const Evidence& evidence = {},
                             const MarginalOptions& options = {});

// Largest |P(x,y|g) - P(x|g)P(y|g)| over all configurations, skipping
// conditioning events with probability <= 1e-12. Pairwise disjoint sets
// required; an empty x or y gives deviation 0.
double ci_worst_deviation(const FactorGraph& graph,
                          const std::set<std::string>& x_set,
                          const std::set<std::string>& y_set,
                          const std::set<std::string>& given_set);

// True iff the worst deviation above stays within tol: numeric conditional
// independence by brute force.
bool numeric_ci(const FactorGraph& graph, const std::set<std::string>& x_set,
                const std::set<std::string>& y_set,
                const std::set<std::string>& given_set, double tol = 1e-9);

enum class Schedule { kTree, kLoopy };

struct SumProductOptions {
  Schedule schedule = Schedule::kTree;
  int max_iters = 200;
  // Weight kept on the previous message each loopy sweep.
  double damping = 0.5;
  // Loopy sweeps stop once no message entry moves more than this.
  double message_tol = 1e-10;
};

struct SumProductResult {
  // Per-variable normalized beliefs, keyed by variable name.
  std::map<std::string, std::vector<double>> beliefs;
  bool converged = false;
  int iterations = 0;
  // Set for the loopy schedule: beliefs are estimates, not exact marginals.
  bool approximate = false;
};

// Sum-product message passing over the scope edges (directions and dashed
// edges play no role). The tree schedule runs two exact passes and requires
// an acyclic skeleton (not_a_tree otherwise); the loopy schedule floods
// synchronously with damping until messages settle or max_iters pass.
// Failing to settle is reported through `converged`, not an error.
SumProductResult sum_product(const FactorGraph& graph,
                             const Evidence& evidence = {},
                             const SumProductOptions& options = {});

// Whether the variable/function skeleton over scope edges is acyclic.
bool skeleton_is_forest(const FactorGraph& graph);

}  // namespace fgx

#endif  // FGX_INFERENCE_HPP_
