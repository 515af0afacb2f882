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

#ifndef FGX_GRAPH_HPP
#define FGX_GRAPH_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fgx/table.hpp"

namespace fgx {

// Discrete random variable: a name and a finite number of states.
struct Variable {
  std::string name;
  int cardinality = 0;

  bool operator==(const Variable& other) const = default;
};

// Raw description of a function node, as handed to build_and_validate.
//
// `scope` is the ordered list of variables the function depends on; the table
// axes must match it exactly. Each scope variable is connected by one edge
// whose kind is given by membership in parent_vars (variable -> function),
// child_vars (function -> variable) or undirected_vars (plain edge). Scope
// variables listed in none of the three default to undirected.
//
// dashed_targets are function -> variable normalization annotations; they are
// disjoint from scope and carry no table dependency.
struct FunctionSpec {
  std::string name;
  std::vector<std::string> scope;
  std::vector<std::string> parent_vars;
  std::vector<std::string> child_vars;
  std::vector<std::string> undirected_vars;
  std::vector<std::string> dashed_targets;
  FactorTable table;
};

// Validated function node. parent/child/undirected partition scope exactly.
struct FunctionNode {
  std::string name;
  std::vector<std::string> scope;
  std::vector<std::string> parent_vars;
  std::vector<std::string> child_vars;
  std::vector<std::string> undirected_vars;
  std::vector<std::string> dashed_targets;
  FactorTable table;

  bool has_child(const std::string& var) const;
  bool has_parent(const std::string& var) const;
  bool has_undirected(const std::string& var) const;
  bool has_dashed(const std::string& var) const;
};

// Incident functions of one variable, by edge kind, as function indices.
struct VarAdjacency {
  std::vector<int> parent_of;    // var -> fn edges (this variable is a parent)
  std::vector<int> child_of;     // fn -> var edges (this variable is a child)
  std::vector<int> undirected;   // plain edges
  std::vector<int> dashed_from;  // fn -> var dashed edges

  // Incident scope edges; dashed edges are annotations, not scope edges.
  int scope_degree() const {
    return static_cast<int>(parent_of.size() + child_of.size() +
                            undirected.size());
  }
};

// One maximal child-out component and its normalization result: the product
// of its functions and dash-connected normalizers must sum to 1 over the
// child variables for every configuration of the remaining variables.
struct ComponentReport {
  std::vector<std::string> functions;
  std::vector<std::string> child_vars;
  std::vector<std::string> normalizers;
  bool normalized = false;
  double worst_deviation = 0.0;
};

struct NormalizationReport {
  std::vector<ComponentReport> components;
  bool all_normalized = true;
  double worst_deviation = 0.0;
};

struct StructureStats {
  int variables = 0;
  int functions = 0;
  int parent_in_edges = 0;
  int child_out_edges = 0;
  int undirected_edges = 0;
  int dashed_edges = 0;
  std::map<int, int> scope_size_histogram;

  int non_dashed_edges() const {
    return parent_in_edges + child_out_edges + undirected_edges;
  }
  int total_edges() const { return non_dashed_edges() + dashed_edges; }
};

// Partial assignment of observed variables to state indices.
struct Evidence {
  std::map<std::string, int> assignments;

  bool empty() const { return assignments.empty(); }
};

// Bipartite graph of variables and function nodes with typed edges.
// Instances are immutable once built; all read operations are const and safe
// to run concurrently.
class FactorGraph {
 public:
  static constexpr double kDefaultNormalizationTol = 1e-9;
  static constexpr std::size_t kMaxJointConfigurations = 10'000'000;

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<FunctionNode>& functions() const { return functions_; }
  int variable_count() const { return static_cast<int>(variables_.size()); }
  int function_count() const { return static_cast<int>(functions_.size()); }

  // Index lookups return -1 when the name is absent.
  int variable_index(const std::string& name) const;
  int function_index(const std::string& name) const;
  const Variable& variable(const std::string& name) const;  // unknown_variable

  const VarAdjacency& adjacency(int var_index) const {
    return adjacency_[static_cast<std::size_t>(var_index)];
  }

  bool has_undirected_edges() const;
  bool has_directed_edges() const;  // any parent-in, child-out or dashed edge
  std::vector<std::string> isolated_variables() const;

  // Product of all variable cardinalities.
  std::size_t joint_size() const;
  // Raises enumeration_too_large beyond kMaxJointConfigurations.
  void ensure_enumerable() const;
  // Product of every function table (cap-checked). Variables outside all
  // scopes do not appear as axes.
  FactorTable factor_product() const;

  // Transitive closure over directed edges leaving `node` (a variable or
  // function name): variable -> function via parent-in edges, function ->
  // variable via child-out and dashed edges. Raises unknown_node.
  std::set<std::string> descendants(const std::string& node) const;

  // Checks the local normalization condition: each maximal connected
  // component of the child-out subgraph, multiplied by its dash-connected
  // normalization functions, must sum to 1 over the component's child
  // variables for every configuration of the remaining variables.
  NormalizationReport check_local_normalization(
      double tol = kDefaultNormalizationTol) const;

  StructureStats structure_stats() const;

 private:
  friend FactorGraph build_and_validate(std::vector<Variable> variables,
                                        std::vector<FunctionSpec> functions);
  FactorGraph() = default;

  std::vector<Variable> variables_;
  std::vector<FunctionNode> functions_;
  std::vector<VarAdjacency> adjacency_;
  std::map<std::string, int> variable_index_;
  std::map<std::string, int> function_index_;
};

// Validates and freezes a factor graph. Rejects duplicate or empty names,
// unknown variables, scope partition violations, dashed targets inside the
// scope, table/scope mismatches, negative or non-finite values, and directed
// cycles over {parent-in, child-out, dashed} edges.
FactorGraph build_and_validate(std::vector<Variable> variables,
                               std::vector<FunctionSpec> functions);

// Raises invalid_evidence / unknown_variable when the assignment does not fit
// the graph.
void validate_evidence(const FactorGraph& graph, const Evidence& evidence);

}  // namespace fgx

#endif  // FGX_GRAPH_HPP
