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

#include "fgx/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

namespace fgx {

namespace {

bool contains(const std::vector<std::string>& list, const std::string& name) {
  return std::find(list.begin(), list.end(), name) != list.end();
}

void check_distinct(const std::vector<std::string>& list, const std::string& what,
                    errc code) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      if (list[i] == list[j]) {
        fail(code, what + " lists '" + list[i] + "' twice");
      }
    }
  }
}

}  // namespace

bool FunctionNode::has_child(const std::string& var) const {
  return contains(child_vars, var);
}
bool FunctionNode::has_parent(const std::string& var) const {
  return contains(parent_vars, var);
}
bool FunctionNode::has_undirected(const std::string& var) const {
  return contains(undirected_vars, var);
}
bool FunctionNode::has_dashed(const std::string& var) const {
  return contains(dashed_targets, var);
}

int FactorGraph::variable_index(const std::string& name) const {
  auto it = variable_index_.find(name);
  return it == variable_index_.end() ? -1 : it->second;
}

int FactorGraph::function_index(const std::string& name) const {
  auto it = function_index_.find(name);
  return it == function_index_.end() ? -1 : it->second;
}

const Variable& FactorGraph::variable(const std::string& name) const {
  const int idx = variable_index(name);
  if (idx < 0) fail(errc::unknown_variable, "unknown variable '" + name + "'");
  return variables_[static_cast<std::size_t>(idx)];
}

bool FactorGraph::has_undirected_edges() const {
  for (const FunctionNode& fn : functions_) {
    if (!fn.undirected_vars.empty()) return true;
  }
  return false;
}

bool FactorGraph::has_directed_edges() const {
  for (const FunctionNode& fn : functions_) {
    if (!fn.parent_vars.empty() || !fn.child_vars.empty() ||
        !fn.dashed_targets.empty()) {
      return true;
    }
  }
  return false;
}

std::vector<std::string> FactorGraph::isolated_variables() const {
  std::vector<std::string> isolated;
  for (int v = 0; v < variable_count(); ++v) {
    const VarAdjacency& adj = adjacency_[static_cast<std::size_t>(v)];
    if (adj.scope_degree() == 0 && adj.dashed_from.empty()) {
      isolated.push_back(variables_[static_cast<std::size_t>(v)].name);
    }
  }
  return isolated;
}

std::size_t FactorGraph::joint_size() const {
  std::size_t n = 1;
  for (const Variable& v : variables_) {
    n *= static_cast<std::size_t>(v.cardinality);
    if (n > kMaxJointConfigurations) return n;
  }
  return n;
}

void FactorGraph::ensure_enumerable() const {
  if (joint_size() > kMaxJointConfigurations) {
    fail(errc::enumeration_too_large,
         "joint has more than " + std::to_string(kMaxJointConfigurations) +
             " configurations; exact enumeration refused");
  }
}

FactorTable FactorGraph::factor_product() const {
  ensure_enumerable();
  std::vector<FactorTable> tables;
  tables.reserve(functions_.size());
  for (const FunctionNode& fn : functions_) tables.push_back(fn.table);
  return product(tables);
}

std::set<std::string> FactorGraph::descendants(const std::string& node) const {
  const int var = variable_index(node);
  const int fn = function_index(node);
  if (var < 0 && fn < 0) fail(errc::unknown_node, "unknown node '" + node + "'");

  // Node ids: variables in [0, V), functions in [V, V+F).
  const int nvars = variable_count();
  const auto fn_id = [nvars](int f) { return nvars + f; };

  std::vector<char> seen(static_cast<std::size_t>(nvars + function_count()), 0);
  std::deque<int> frontier;
  frontier.push_back(var >= 0 ? var : fn_id(fn));

  std::set<std::string> result;
  while (!frontier.empty()) {
    const int id = frontier.front();
    frontier.pop_front();
    if (id < nvars) {
      // variable -> function via parent-in edges
      for (int f : adjacency_[static_cast<std::size_t>(id)].parent_of) {
        const int next = fn_id(f);
        if (!seen[static_cast<std::size_t>(next)]) {
          seen[static_cast<std::size_t>(next)] = 1;
          result.insert(functions_[static_cast<std::size_t>(f)].name);
          frontier.push_back(next);
        }
      }
    } else {
      // function -> variable via child-out and dashed edges
      const FunctionNode& f = functions_[static_cast<std::size_t>(id - nvars)];
      for (const auto* targets : {&f.child_vars, &f.dashed_targets}) {
        for (const std::string& name : *targets) {
          const int v = variable_index(name);
          if (!seen[static_cast<std::size_t>(v)]) {
            seen[static_cast<std::size_t>(v)] = 1;
            result.insert(name);
            frontier.push_back(v);
          }
        }
      }
    }
  }
  return result;
}

NormalizationReport FactorGraph::check_local_normalization(double tol) const {
  // Union-find over nodes of the child-out subgraph. Ids as in descendants().
  const int nvars = variable_count();
  const int nnodes = nvars + function_count();
  std::vector<int> parent(static_cast<std::size_t>(nnodes));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  const auto unite = [&](int a, int b) {
    parent[static_cast<std::size_t>(find(a))] = find(b);
  };

  for (int f = 0; f < function_count(); ++f) {
    for (const std::string& child : functions_[static_cast<std::size_t>(f)].child_vars) {
      unite(nvars + f, variable_index(child));
    }
  }

  // Gather components keyed by root; only functions with children belong.
  std::map<int, ComponentReport> components;
  std::map<int, std::vector<int>> component_fns;
  for (int f = 0; f < function_count(); ++f) {
    if (functions_[static_cast<std::size_t>(f)].child_vars.empty()) continue;
    component_fns[find(nvars + f)].push_back(f);
  }

  NormalizationReport report;
  for (const auto& [root, fns] : component_fns) {
    ComponentReport comp;
    std::set<std::string> child_set;
    for (int f : fns) {
      const FunctionNode& fn = functions_[static_cast<std::size_t>(f)];
      comp.functions.push_back(fn.name);
      for (const std::string& child : fn.child_vars) child_set.insert(child);
    }
    // Child variables in declaration order.
    for (const Variable& v : variables_) {
      if (child_set.count(v.name)) comp.child_vars.push_back(v.name);
    }
    // Normalization functions: any function with a dashed edge into the
    // component's child set, beyond the component's own functions.
    std::vector<FactorTable> tables;
    for (int f : fns) tables.push_back(functions_[static_cast<std::size_t>(f)].table);
    for (int f = 0; f < function_count(); ++f) {
      const FunctionNode& fn = functions_[static_cast<std::size_t>(f)];
      if (std::find(fns.begin(), fns.end(), f) != fns.end()) continue;
      const bool dashes_in = std::any_of(
          fn.dashed_targets.begin(), fn.dashed_targets.end(),
          [&](const std::string& t) { return child_set.count(t) > 0; });
      if (dashes_in) {
        comp.normalizers.push_back(fn.name);
        tables.push_back(fn.table);
      }
    }

    const FactorTable prod = product(tables);
    if (prod.size() > kMaxJointConfigurations) {
      fail(errc::enumeration_too_large,
           "normalization component too large to check exactly");
    }
    const NormalizationCheck check =
        is_normalized_over(prod, comp.child_vars, tol);
    comp.normalized = check.normalized;
    comp.worst_deviation = check.worst_deviation;

    report.all_normalized = report.all_normalized && comp.normalized;
    report.worst_deviation = std::max(report.worst_deviation, comp.worst_deviation);
    report.components.push_back(std::move(comp));
  }
  return report;
}

StructureStats FactorGraph::structure_stats() const {
  StructureStats stats;
  stats.variables = variable_count();
  stats.functions = function_count();
  for (const FunctionNode& fn : functions_) {
    stats.parent_in_edges += static_cast<int>(fn.parent_vars.size());
    stats.child_out_edges += static_cast<int>(fn.child_vars.size());
    stats.undirected_edges += static_cast<int>(fn.undirected_vars.size());
    stats.dashed_edges += static_cast<int>(fn.dashed_targets.size());
    stats.scope_size_histogram[static_cast<int>(fn.scope.size())] += 1;
  }
  return stats;
}

FactorGraph build_and_validate(std::vector<Variable> variables,
                               std::vector<FunctionSpec> functions) {
  FactorGraph graph;
  graph.variables_ = std::move(variables);

  for (std::size_t i = 0; i < graph.variables_.size(); ++i) {
    const Variable& v = graph.variables_[i];
    if (v.name.empty()) fail(errc::invalid_name, "variable with empty name");
    if (v.cardinality < 1) {
      fail(errc::bad_cardinality, "variable '" + v.name + "' has cardinality " +
                                      std::to_string(v.cardinality));
    }
    if (!graph.variable_index_.emplace(v.name, static_cast<int>(i)).second) {
      fail(errc::duplicate_name, "duplicate variable name '" + v.name + "'");
    }
  }

  for (FunctionSpec& spec : functions) {
    if (spec.name.empty()) fail(errc::invalid_name, "function with empty name");
    if (graph.variable_index_.count(spec.name)) {
      fail(errc::duplicate_name,
           "function '" + spec.name + "' clashes with a variable name");
    }
    if (!graph.function_index_
             .emplace(spec.name, static_cast<int>(graph.functions_.size()))
             .second) {
      fail(errc::duplicate_name, "duplicate function name '" + spec.name + "'");
    }

    const std::string where = "function '" + spec.name + "': ";
    check_distinct(spec.scope, where + "scope", errc::partition_violation);
    check_distinct(spec.dashed_targets, where + "normalizes",
                   errc::dashed_overlap);
    for (const std::string& name : spec.scope) {
      if (graph.variable_index_.count(name) == 0) {
        fail(errc::unknown_variable, where + "unknown variable '" + name + "'");
      }
    }
    for (const std::string& name : spec.dashed_targets) {
      if (graph.variable_index_.count(name) == 0) {
        fail(errc::unknown_variable,
             where + "unknown dashed target '" + name + "'");
      }
      if (contains(spec.scope, name)) {
        fail(errc::dashed_overlap,
             where + "dashed target '" + name + "' is part of the scope");
      }
    }

    // Scope variables not classified default to undirected.
    FunctionNode fn;
    fn.name = spec.name;
    fn.scope = spec.scope;
    fn.parent_vars = spec.parent_vars;
    fn.child_vars = spec.child_vars;
    fn.undirected_vars = spec.undirected_vars;
    fn.dashed_targets = spec.dashed_targets;
    for (const std::string& name : spec.scope) {
      if (!contains(fn.parent_vars, name) && !contains(fn.child_vars, name) &&
          !contains(fn.undirected_vars, name)) {
        fn.undirected_vars.push_back(name);
      }
    }

    // The three lists must now partition the scope exactly.
    std::size_t classified = fn.parent_vars.size() + fn.child_vars.size() +
                             fn.undirected_vars.size();
    if (classified != fn.scope.size()) {
      fail(errc::partition_violation,
           where + "parents/children/undirected must partition the scope");
    }
    for (const auto* list : {&fn.parent_vars, &fn.child_vars, &fn.undirected_vars}) {
      check_distinct(*list, where + "edge class", errc::partition_violation);
      for (const std::string& name : *list) {
        if (!contains(fn.scope, name)) {
          fail(errc::partition_violation,
               where + "'" + name + "' classified but not in scope");
        }
      }
    }
    for (const std::string& name : fn.parent_vars) {
      if (contains(fn.child_vars, name) || contains(fn.undirected_vars, name)) {
        fail(errc::partition_violation,
             where + "'" + name + "' has more than one edge class");
      }
    }
    for (const std::string& name : fn.child_vars) {
      if (contains(fn.undirected_vars, name)) {
        fail(errc::partition_violation,
             where + "'" + name + "' has more than one edge class");
      }
    }

    // Table axes must equal the scope, in order, with matching cardinalities.
    const std::vector<Axis>& axes = spec.table.axes();
    if (axes.size() != fn.scope.size()) {
      fail(errc::table_shape_mismatch,
           where + "table has " + std::to_string(axes.size()) +
               " axes, scope has " + std::to_string(fn.scope.size()));
    }
    for (std::size_t i = 0; i < axes.size(); ++i) {
      if (axes[i].name != fn.scope[i]) {
        fail(errc::table_shape_mismatch,
             where + "table axis " + std::to_string(i) + " is '" + axes[i].name +
                 "', scope has '" + fn.scope[i] + "'");
      }
      const Variable& v = graph.variables_[static_cast<std::size_t>(
          graph.variable_index_.at(axes[i].name))];
      if (axes[i].cardinality != v.cardinality) {
        fail(errc::table_shape_mismatch,
             where + "axis '" + axes[i].name + "' has cardinality " +
                 std::to_string(axes[i].cardinality) + ", variable has " +
                 std::to_string(v.cardinality));
      }
    }

    fn.table = std::move(spec.table);
    graph.functions_.push_back(std::move(fn));
  }

  // Adjacency.
  graph.adjacency_.assign(graph.variables_.size(), VarAdjacency{});
  for (int f = 0; f < graph.function_count(); ++f) {
    const FunctionNode& fn = graph.functions_[static_cast<std::size_t>(f)];
    for (const std::string& name : fn.parent_vars) {
      graph.adjacency_[static_cast<std::size_t>(graph.variable_index(name))]
          .parent_of.push_back(f);
    }
    for (const std::string& name : fn.child_vars) {
      graph.adjacency_[static_cast<std::size_t>(graph.variable_index(name))]
          .child_of.push_back(f);
    }
    for (const std::string& name : fn.undirected_vars) {
      graph.adjacency_[static_cast<std::size_t>(graph.variable_index(name))]
          .undirected.push_back(f);
    }
    for (const std::string& name : fn.dashed_targets) {
      graph.adjacency_[static_cast<std::size_t>(graph.variable_index(name))]
          .dashed_from.push_back(f);
    }
  }

  // Acyclicity over directed edges: parent-in (var -> fn), child-out and
  // dashed (fn -> var). Kahn's algorithm; leftovers form cycles.
  const int nvars = graph.variable_count();
  const int nnodes = nvars + graph.function_count();
  std::vector<int> indegree(static_cast<std::size_t>(nnodes), 0);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(nnodes));
  for (int f = 0; f < graph.function_count(); ++f) {
    const FunctionNode& fn = graph.functions_[static_cast<std::size_t>(f)];
    for (const std::string& name : fn.parent_vars) {
      out[static_cast<std::size_t>(graph.variable_index(name))].push_back(nvars + f);
      ++indegree[static_cast<std::size_t>(nvars + f)];
    }
    for (const auto* targets : {&fn.child_vars, &fn.dashed_targets}) {
      for (const std::string& name : *targets) {
        out[static_cast<std::size_t>(nvars + f)].push_back(graph.variable_index(name));
        ++indegree[static_cast<std::size_t>(graph.variable_index(name))];
      }
    }
  }
  std::deque<int> ready;
  for (int id = 0; id < nnodes; ++id) {
    if (indegree[static_cast<std::size_t>(id)] == 0) ready.push_back(id);
  }
  int visited = 0;
  while (!ready.empty()) {
    const int id = ready.front();
    ready.pop_front();
    ++visited;
    for (int next : out[static_cast<std::size_t>(id)]) {
      if (--indegree[static_cast<std::size_t>(next)] == 0) ready.push_back(next);
    }
  }
  if (visited != nnodes) {
    std::string cycle_nodes;
    for (int id = 0; id < nnodes; ++id) {
      if (indegree[static_cast<std::size_t>(id)] > 0) {
        if (!cycle_nodes.empty()) cycle_nodes += ", ";
        cycle_nodes += id < nvars
                           ? graph.variables_[static_cast<std::size_t>(id)].name
                           : graph.functions_[static_cast<std::size_t>(id - nvars)].name;
      }
    }
    fail(errc::directed_cycle, "directed cycle involving: " + cycle_nodes);
  }

  return graph;
}

void validate_evidence(const FactorGraph& graph, const Evidence& evidence) {
  for (const auto& [name, state] : evidence.assignments) {
    const Variable& v = graph.variable(name);
    if (state < 0 || state >= v.cardinality) {
      fail(errc::invalid_evidence,
           "evidence state " + std::to_string(state) + " out of range for '" +
               name + "' (cardinality " + std::to_string(v.cardinality) + ")");
    }
  }
}

}  // namespace fgx
