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
//
// Reference implementations the tests compare against. Everything here is
// deliberately written the slow, obvious way and shares no machinery with the
// library internals.

#ifndef FGX_TESTS_SUPPORT_ORACLES_HPP_
#define FGX_TESTS_SUPPORT_ORACLES_HPP_

#include <set>
#include <string>
#include <vector>

#include "fgx/bayesnet.hpp"
#include "fgx/graph.hpp"
#include "fgx/markovnet.hpp"

namespace fgx::testing {

// Classic d-separation: restrict to the ancestral set of x, y, and z, marry
// co-parents, drop directions, delete z, and test connectivity.
bool bn_dsep_oracle(const BayesNet& net, const std::set<std::string>& x,
                    const std::set<std::string>& y,
                    const std::set<std::string>& z);

// Graph separation: delete the observed vertices and test connectivity.
bool mrf_sep_oracle(const MarkovNet& net, const std::set<std::string>& x,
                    const std::set<std::string>& y,
                    const std::set<std::string>& z);

// A normalized joint computed with nested loops and explicit stride
// arithmetic, row-major with the last variable fastest.
struct BruteJoint {
  std::vector<std::string> vars;
  std::vector<int> cards;
  std::vector<double> p;

  std::size_t index(const std::vector<int>& assignment) const;
};

BruteJoint brute_joint_bn(const BayesNet& net);
BruteJoint brute_joint_mrf(const MarkovNet& net);
BruteJoint brute_joint_fg(const FactorGraph& graph);

// All maximal cliques by checking every vertex subset, sorted like the
// library output.
std::vector<std::vector<std::string>> brute_maximal_cliques(
    const MarkovNet& net);

// Re-judges a witness walk node by node: consecutive nodes must share a
// non-dashed edge and every interior node must let the walk through under
// the observed-variable and collider rules.
bool walk_is_unblocked(const FactorGraph& graph,
                       const std::vector<std::string>& walk,
                       const std::set<std::string>& observed);

}  // namespace fgx::testing

#endif  // FGX_TESTS_SUPPORT_ORACLES_HPP_
