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

#ifndef FGX_INDEPENDENCE_HPP_
#define FGX_INDEPENDENCE_HPP_

#include <set>
#include <string>
#include <vector>

#include "fgx/graph.hpp"

namespace fgx {

// Are the x variables independent of the y variables given the observed set?
// The three sets must be pairwise disjoint; x and y nonempty.
struct IndependenceQuery {
  std::set<std::string> x_set;
  std::set<std::string> y_set;
  std::set<std::string> given_set;
};

// `witness` is one unblocked path (alternating variable and function names,
// x first, y last) when the sets are not separated; empty otherwise.
struct Verdict {
  bool separated = false;
  std::vector<std::string> witness;
};

// Path-blocking test over the non-dashed edges. A path is blocked at an
// interior node when
//   (1) the node is an observed variable, or
//   (2) the node is a collider on the path (neither path edge leaves the
//       node, at least one points into it; an undirected edge counts as
//       neither) and neither it nor any of its descendants is observed.
// Separated iff every x-y path is blocked somewhere. Descendants follow
// directed edges including the dashed ones; function nodes are never
// observed.
Verdict separated(const FactorGraph& graph, const IndependenceQuery& query);

// All nodes (variables and functions) reachable from the sources through
// unblocked passage under the rules above. The frontier underlying
// `separated`: sets are separated iff no y is reachable from x.
std::set<std::string> reachable_set(const FactorGraph& graph,
                                    const std::set<std::string>& sources,
                                    const std::set<std::string>& observed);

// Variables sharing a function with v, excluding v itself. Defined only for
// fully undirected graphs (not_undirected otherwise).
std::set<std::string> markov_blanket_undirected(const FactorGraph& graph,
                                                const std::string& v);

}  // namespace fgx

#endif  // FGX_INDEPENDENCE_HPP_
