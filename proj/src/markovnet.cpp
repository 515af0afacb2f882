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

#include "fgx/markovnet.hpp"

#include <algorithm>

#include "fgx/errors.hpp"

namespace fgx {

MarkovNet::MarkovNet(std::vector<Variable> variables,
                     std::vector<std::pair<std::string, std::string>> edges,
                     std::vector<Potential> potentials)
    : variables_(std::move(variables)),
      edges_(std::move(edges)),
      potentials_(std::move(potentials)) {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const Variable& v = variables_[i];
    if (v.name.empty()) fail(errc::invalid_name, "variable with empty name");
    if (v.cardinality < 1) {
      fail(errc::bad_cardinality, "variable '" + v.name + "' has cardinality " +
                                      std::to_string(v.cardinality));
    }
    if (!variable_index_.emplace(v.name, static_cast<int>(i)).second) {
      fail(errc::duplicate_name, "duplicate variable name '" + v.name + "'");
    }
  }

  neighbours_.assign(variables_.size(), {});
  for (const auto& [a, b] : edges_) {
    const int ia = variable_index(a);
    const int ib = variable_index(b);
    if (ia < 0) fail(errc::unknown_variable, "edge endpoint '" + a + "' unknown");
    if (ib < 0) fail(errc::unknown_variable, "edge endpoint '" + b + "' unknown");
    if (ia == ib) fail(errc::invalid_edge, "self-loop on '" + a + "'");
    if (neighbours_[static_cast<std::size_t>(ia)].count(ib)) {
      fail(errc::invalid_edge, "duplicate edge '" + a + "' -- '" + b + "'");
    }
    neighbours_[static_cast<std::size_t>(ia)].insert(ib);
    neighbours_[static_cast<std::size_t>(ib)].insert(ia);
  }

  for (const Potential& pot : potentials_) {
    if (pot.scope.empty()) fail(errc::empty_set, "potential with empty scope");
    std::string label = "potential over {";
    for (std::size_t i = 0; i < pot.scope.size(); ++i) {
      if (i > 0) label += ", ";
      label += pot.scope[i];
    }
    label += "}: ";
    for (const std::string& name : pot.scope) {
      if (variable_index(name) < 0) {
        fail(errc::unknown_variable, label + "unknown variable '" + name + "'");
      }
    }
    for (std::size_t a = 0; a < pot.scope.size(); ++a) {
      for (std::size_t b = a + 1; b < pot.scope.size(); ++b) {
        if (pot.scope[a] == pot.scope[b]) {
          fail(errc::partition_violation,
               label + "'" + pot.scope[a] + "' listed twice");
        }
        if (!adjacent(pot.scope[a], pot.scope[b])) {
          fail(errc::potential_not_on_clique,
               label + "'" + pot.scope[a] + "' and '" + pot.scope[b] +
                   "' are not adjacent");
        }
      }
    }

    const std::vector<Axis>& axes = pot.table.axes();
    if (axes.size() != pot.scope.size()) {
      fail(errc::table_shape_mismatch,
           label + "table has " + std::to_string(axes.size()) +
               " axes, scope has " + std::to_string(pot.scope.size()));
    }
    for (std::size_t i = 0; i < axes.size(); ++i) {
      if (axes[i].name != pot.scope[i]) {
        fail(errc::table_shape_mismatch,
             label + "axis " + std::to_string(i) + " is '" + axes[i].name +
                 "', scope has '" + pot.scope[i] + "'");
      }
      const int card = variables_[static_cast<std::size_t>(
                           variable_index(axes[i].name))].cardinality;
      if (axes[i].cardinality != card) {
        fail(errc::table_shape_mismatch,
             label + "axis '" + axes[i].name + "' has cardinality " +
                 std::to_string(axes[i].cardinality) + ", variable has " +
                 std::to_string(card));
      }
    }
  }
}

int MarkovNet::variable_index(const std::string& name) const {
  auto it = variable_index_.find(name);
  return it == variable_index_.end() ? -1 : it->second;
}

const Variable& MarkovNet::variable(const std::string& name) const {
  const int idx = variable_index(name);
  if (idx < 0) fail(errc::unknown_variable, "unknown variable '" + name + "'");
  return variables_[static_cast<std::size_t>(idx)];
}

bool MarkovNet::adjacent(const std::string& a, const std::string& b) const {
  const int ia = variable_index(a);
  const int ib = variable_index(b);
  if (ia < 0 || ib < 0) return false;
  return neighbours_[static_cast<std::size_t>(ia)].count(ib) > 0;
}

namespace {

// Bron-Kerbosch with pivoting. r is the growing clique, p the candidates,
// x the excluded set (already covered by an earlier branch).
void bron_kerbosch(std::set<int> r, std::set<int> p, std::set<int> x,
                   const std::vector<std::set<int>>& adj,
                   std::vector<std::set<int>>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(std::move(r));
    return;
  }
  // Pivot: candidate or excluded vertex with the most neighbours in p.
  int pivot = -1;
  std::size_t best = 0;
  for (const std::set<int>* side : {&p, &x}) {
    for (int u : *side) {
      std::size_t count = 0;
      for (int v : p) {
        if (adj[static_cast<std::size_t>(u)].count(v)) ++count;
      }
      if (pivot < 0 || count > best) {
        pivot = u;
        best = count;
      }
    }
  }
  std::vector<int> expand;
  for (int v : p) {
    if (adj[static_cast<std::size_t>(pivot)].count(v) == 0) expand.push_back(v);
  }
  for (int v : expand) {
    std::set<int> r2 = r;
    r2.insert(v);
    std::set<int> p2;
    std::set<int> x2;
    for (int u : p) {
      if (adj[static_cast<std::size_t>(v)].count(u)) p2.insert(u);
    }
    for (int u : x) {
      if (adj[static_cast<std::size_t>(v)].count(u)) x2.insert(u);
    }
    bron_kerbosch(std::move(r2), std::move(p2), std::move(x2), adj, out);
    p.erase(v);
    x.insert(v);
  }
}

}  // namespace

std::vector<std::vector<std::string>> maximal_cliques(const MarkovNet& net) {
  std::set<int> p;
  for (int v = 0; v < net.variable_count(); ++v) p.insert(v);
  std::vector<std::set<int>> found;
  bron_kerbosch({}, std::move(p), {}, net.neighbours(), found);

  std::vector<std::vector<std::string>> cliques;
  cliques.reserve(found.size());
  for (const std::set<int>& clique : found) {
    std::vector<std::string> names;
    names.reserve(clique.size());
    for (int v : clique) {
      names.push_back(net.variables()[static_cast<std::size_t>(v)].name);
    }
    std::sort(names.begin(), names.end());
    cliques.push_back(std::move(names));
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

}  // namespace fgx
