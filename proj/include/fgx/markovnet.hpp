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

#ifndef FGX_MARKOVNET_HPP_
#define FGX_MARKOVNET_HPP_

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fgx/graph.hpp"
#include "fgx/table.hpp"

namespace fgx {

// Clique potential: a nonnegative table over a set of variables that must be
// pairwise adjacent in the graph.
struct Potential {
  std::vector<std::string> scope;
  FactorTable table;
};

// Discrete undirected model: named variables, undirected edges, and optional
// clique potentials. Potentials need not be normalized.
class MarkovNet {
 public:
  MarkovNet(std::vector<Variable> variables,
            std::vector<std::pair<std::string, std::string>> edges,
            std::vector<Potential> potentials);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<std::pair<std::string, std::string>>& edges() const {
    return edges_;
  }
  const std::vector<Potential>& potentials() const { return potentials_; }
  int variable_count() const { return static_cast<int>(variables_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  int variable_index(const std::string& name) const;
  const Variable& variable(const std::string& name) const;
  bool adjacent(const std::string& a, const std::string& b) const;

  // Neighbour sets, indexed like variables().
  const std::vector<std::set<int>>& neighbours() const { return neighbours_; }

 private:
  std::vector<Variable> variables_;
  std::vector<std::pair<std::string, std::string>> edges_;
  std::vector<Potential> potentials_;
  std::vector<std::set<int>> neighbours_;
  std::map<std::string, int> variable_index_;
};

// All maximal cliques of the edge graph, each clique sorted by variable name,
// the list of cliques in lexicographic order. Isolated variables count as
// singleton cliques.
std::vector<std::vector<std::string>> maximal_cliques(const MarkovNet& net);

}  // namespace fgx

#endif  // FGX_MARKOVNET_HPP_
