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

#include "fgx/convert.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fgx/errors.hpp"

namespace fgx {

namespace {

// Derives a function name from `stem` that collides with nothing in `taken`,
// then reserves it.
std::string fresh_name(const std::string& stem, std::set<std::string>& taken) {
  std::string name = stem;
  while (taken.count(name)) name += "_";
  taken.insert(name);
  return name;
}

std::vector<std::string> sorted_copy(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

FactorGraph bn_to_fg(const BayesNet& net) {
  std::set<std::string> taken;
  for (const Variable& v : net.variables()) taken.insert(v.name);

  std::vector<FunctionSpec> functions;
  functions.reserve(net.cpds().size());
  for (const Variable& v : net.variables()) {
    const Cpd& cpd = net.cpd_for(v.name);
    FunctionSpec spec;
    spec.name = fresh_name("f_" + v.name, taken);
    spec.scope = cpd.parents;
    spec.scope.push_back(v.name);
    spec.parent_vars = cpd.parents;
    spec.child_vars = {v.name};
    spec.table = cpd.table;
    functions.push_back(std::move(spec));
  }
  return build_and_validate(net.variables(), std::move(functions));
}

BayesNet fg_to_bn(const FactorGraph& graph) {
  for (const FunctionNode& fn : graph.functions()) {
    if (!fn.undirected_vars.empty()) {
      fail(errc::undirected_edge_present,
           "function '" + fn.name + "' has undirected edges");
    }
    if (fn.child_vars.size() > 1) {
      fail(errc::multi_child_function,
           "function '" + fn.name + "' has " +
               std::to_string(fn.child_vars.size()) +
               " children; a conditional has exactly one");
    }
    if (fn.child_vars.empty() && fn.dashed_targets.empty()) {
      fail(errc::unanchored_function,
           "function '" + fn.name +
               "' has no child and normalizes nothing; it belongs to no "
               "conditional");
    }
  }
  for (int v = 0; v < graph.variable_count(); ++v) {
    if (graph.adjacency(v).child_of.empty()) {
      fail(errc::orphan_variable,
           "variable '" + graph.variables()[static_cast<std::size_t>(v)].name +
               "' is the child of no function");
    }
  }

  std::vector<Cpd> cpds;
  cpds.reserve(graph.variables().size());
  for (int v = 0; v < graph.variable_count(); ++v) {
    const std::string& name =
        graph.variables()[static_cast<std::size_t>(v)].name;
    const VarAdjacency& adj = graph.adjacency(v);
    std::vector<FactorTable> parts;
    for (int f : adj.child_of) {
      parts.push_back(graph.functions()[static_cast<std::size_t>(f)].table);
    }
    for (int f : adj.dashed_from) {
      parts.push_back(graph.functions()[static_cast<std::size_t>(f)].table);
    }
    FactorTable table = product(parts);

    // Axes to parents-then-child order; parents keep product order.
    std::vector<std::string> order;
    for (const Axis& axis : table.axes()) {
      if (axis.name != name) order.push_back(axis.name);
    }
    Cpd cpd;
    cpd.child = name;
    cpd.parents = order;
    order.push_back(name);
    cpd.table = reorder_axes(table, order);

    const NormalizationCheck check = is_normalized_over(
        cpd.table, {name}, FactorGraph::kDefaultNormalizationTol);
    if (!check.normalized) {
      fail(errc::normalization_failure,
           "conditional for '" + name + "' sums to 1 " +
               std::to_string(check.worst_deviation) +
               " off; the graph is not locally normalized");
    }
    cpds.push_back(std::move(cpd));
  }
  return BayesNet(graph.variables(), std::move(cpds));
}

FactorGraph mrf_to_fg(const MarkovNet& net) {
  const std::vector<std::vector<std::string>> cliques = maximal_cliques(net);

  // Potentials keyed by sorted scope; each must sit on a maximal clique.
  std::map<std::vector<std::string>, int> by_clique;
  if (!net.potentials().empty()) {
    std::set<std::vector<std::string>> clique_set(cliques.begin(),
                                                  cliques.end());
    for (std::size_t i = 0; i < net.potentials().size(); ++i) {
      const Potential& pot = net.potentials()[i];
      std::vector<std::string> key = sorted_copy(pot.scope);
      if (clique_set.count(key) == 0) {
        fail(errc::potential_not_on_maximal_clique,
             "potential over '" + pot.scope.front() +
                 "...' does not sit on a maximal clique");
      }
      if (!by_clique.emplace(std::move(key), static_cast<int>(i)).second) {
        fail(errc::duplicate_potential,
             "two potentials on the same maximal clique");
      }
    }
    for (const std::vector<std::string>& clique : cliques) {
      if (by_clique.count(clique) == 0) {
        std::string label;
        for (const std::string& v : clique) {
          if (!label.empty()) label += ", ";
          label += v;
        }
        fail(errc::missing_potential,
             "maximal clique {" + label + "} has no potential");
      }
    }
  }

  std::set<std::string> taken;
  for (const Variable& v : net.variables()) taken.insert(v.name);

  std::vector<FunctionSpec> functions;
  functions.reserve(cliques.size());
  for (const std::vector<std::string>& clique : cliques) {
    FunctionSpec spec;
    std::string stem = "phi";
    for (const std::string& v : clique) stem += "_" + v;
    spec.name = fresh_name(stem, taken);
    auto it = by_clique.find(clique);
    if (it != by_clique.end()) {
      const Potential& pot =
          net.potentials()[static_cast<std::size_t>(it->second)];
      spec.scope = pot.scope;
      spec.table = pot.table;
    } else {
      std::vector<Axis> axes;
      for (const std::string& v : clique) {
        axes.push_back({v, net.variable(v).cardinality});
      }
      spec.scope = clique;
      spec.table = FactorTable::constant(std::move(axes), 1.0);
    }
    spec.undirected_vars = spec.scope;
    functions.push_back(std::move(spec));
  }
  return build_and_validate(net.variables(), std::move(functions));
}

MarkovNet fg_to_mrf(const FactorGraph& graph) {
  // Couple each function's scope and dashed targets pairwise.
  std::set<std::pair<std::string, std::string>> edge_set;
  for (const FunctionNode& fn : graph.functions()) {
    std::vector<std::string> coupled = fn.scope;
    coupled.insert(coupled.end(), fn.dashed_targets.begin(),
                   fn.dashed_targets.end());
    for (std::size_t i = 0; i < coupled.size(); ++i) {
      for (std::size_t j = i + 1; j < coupled.size(); ++j) {
        std::string a = coupled[i];
        std::string b = coupled[j];
        if (b < a) std::swap(a, b);
        edge_set.insert({std::move(a), std::move(b)});
      }
    }
  }
  std::vector<std::pair<std::string, std::string>> edges(edge_set.begin(),
                                                         edge_set.end());

  const MarkovNet skeleton(graph.variables(), edges, {});
  const std::vector<std::vector<std::string>> cliques =
      maximal_cliques(skeleton);

  // Function index -> index of the first maximal clique containing its
  // coupled set. Scalar functions land in clique 0.
  std::vector<std::vector<int>> assigned(cliques.size());
  for (int f = 0; f < graph.function_count(); ++f) {
    const FunctionNode& fn = graph.functions()[static_cast<std::size_t>(f)];
    std::vector<std::string> coupled = fn.scope;
    coupled.insert(coupled.end(), fn.dashed_targets.begin(),
                   fn.dashed_targets.end());
    std::sort(coupled.begin(), coupled.end());
    bool placed = false;
    for (std::size_t c = 0; c < cliques.size(); ++c) {
      if (std::includes(cliques[c].begin(), cliques[c].end(), coupled.begin(),
                        coupled.end())) {
        assigned[c].push_back(f);
        placed = true;
        break;
      }
    }
    if (!placed) {
      // Unreachable: the coupled set is a clique of the skeleton, hence
      // contained in some maximal clique.
      fail(errc::potential_not_on_clique,
           "function '" + fn.name + "' fits no maximal clique");
    }
  }

  std::vector<Potential> potentials;
  potentials.reserve(cliques.size());
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    std::vector<FactorTable> parts;
    for (int f : assigned[c]) {
      parts.push_back(graph.functions()[static_cast<std::size_t>(f)].table);
    }
    // Pad with ones so the potential spans the whole clique.
    std::vector<Axis> pad;
    for (const std::string& v : cliques[c]) {
      pad.push_back({v, graph.variable(v).cardinality});
    }
    parts.push_back(FactorTable::constant(std::move(pad), 1.0));
    Potential pot;
    pot.table = product(parts);
    for (const Axis& axis : pot.table.axes()) pot.scope.push_back(axis.name);
    potentials.push_back(std::move(pot));
  }

  return MarkovNet(graph.variables(), std::move(edges), std::move(potentials));
}

}  // namespace fgx
