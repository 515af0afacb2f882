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

#ifndef FGX_CONVERT_HPP_
#define FGX_CONVERT_HPP_

#include "fgx/bayesnet.hpp"
#include "fgx/graph.hpp"
#include "fgx/markovnet.hpp"

namespace fgx {

// One function node per variable holding its conditional table; parents
// arrive on directed-in edges, the child leaves on a directed-out edge.
// A net with E parent links and N variables yields a graph with E+N edges.
// The joint distribution is unchanged.
FactorGraph bn_to_fg(const BayesNet& net);

// Inverse direction. Requires a fully directed graph: no undirected edges
// (undirected_edge_present), at most one child per non-normalizer function
// (multi_child_function), every variable the child of some function
// (orphan_variable). A function with no children absorbs into the
// conditionals of its dashed targets; one with neither children nor dashed
// targets has no home (unanchored_function). Each variable's conditional is
// the product of its incoming functions and dash-connected normalizers and
// must sum to one over the variable (normalization_failure).
// Applied right after bn_to_fg this returns the original net exactly.
BayesNet fg_to_bn(const FactorGraph& graph);

// One function per maximal clique, all edges undirected. Tables come from
// the potentials when present (each maximal clique must then have exactly
// one: potential_not_on_maximal_clique, duplicate_potential,
// missing_potential), all-ones otherwise. Joint preserved up to the global
// constant.
FactorGraph mrf_to_fg(const MarkovNet& net);

// Drops directions: each function couples its scope plus dashed targets into
// a clique; each function's table multiplies into the lexicographically
// first maximal clique containing that set, padded with ones to the full
// clique. Scalar functions fold into the first clique. The normalized joint
// is preserved; potentials are returned as-is, so the overall scale rides on
// the net's own normalization.
MarkovNet fg_to_mrf(const FactorGraph& graph);

}  // namespace fgx

#endif  // FGX_CONVERT_HPP_
