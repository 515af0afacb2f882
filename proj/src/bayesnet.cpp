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

#include "fgx/bayesnet.hpp"

#include <algorithm>
#include <deque>

#include "fgx/errors.hpp"

namespace fgx {

BayesNet::BayesNet(std::vector<Variable> variables, std::vector<Cpd> cpds)
    : variables_(std::move(variables)), cpds_(std::move(cpds)) {
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

  parents_.assign(variables_.size(), {});
  for (std::size_t i = 0; i < cpds_.size(); ++i) {
    const Cpd& cpd = cpds_[i];
    const std::string where = "conditional for '" + cpd.child + "': ";
    const int child = variable_index(cpd.child);
    if (child < 0) {
      fail(errc::unknown_variable, where + "unknown variable");
    }
    if (!cpd_index_.emplace(cpd.child, static_cast<int>(i)).second) {
      fail(errc::invalid_cpd, where + "more than one conditional");
    }
    for (const std::string& parent : cpd.parents) {
      if (variable_index(parent) < 0) {
        fail(errc::unknown_variable, where + "unknown parent '" + parent + "'");
      }
      if (parent == cpd.child) {
        fail(errc::invalid_cpd, where + "variable listed as its own parent");
      }
    }
    for (std::size_t a = 0; a < cpd.parents.size(); ++a) {
      for (std::size_t b = a + 1; b < cpd.parents.size(); ++b) {
        if (cpd.parents[a] == cpd.parents[b]) {
          fail(errc::invalid_cpd,
               where + "parent '" + cpd.parents[a] + "' listed twice");
        }
      }
    }

    // Axes must be the parents in order, then the child.
    const std::vector<Axis>& axes = cpd.table.axes();
    if (axes.size() != cpd.parents.size() + 1) {
      fail(errc::table_shape_mismatch,
           where + "table has " + std::to_string(axes.size()) +
               " axes, expected " + std::to_string(cpd.parents.size() + 1));
    }
    for (std::size_t a = 0; a < cpd.parents.size(); ++a) {
      if (axes[a].name != cpd.parents[a]) {
        fail(errc::table_shape_mismatch,
             where + "axis " + std::to_string(a) + " is '" + axes[a].name +
                 "', expected parent '" + cpd.parents[a] + "'");
      }
    }
    if (axes.back().name != cpd.child) {
      fail(errc::table_shape_mismatch, where + "last axis must be the child");
    }
    for (const Axis& axis : axes) {
      const int card = variables_[static_cast<std::size_t>(
                           variable_index(axis.name))].cardinality;
      if (axis.cardinality != card) {
        fail(errc::table_shape_mismatch,
             where + "axis '" + axis.name + "' has cardinality " +
                 std::to_string(axis.cardinality) + ", variable has " +
                 std::to_string(card));
      }
    }

    const NormalizationCheck check =
        is_normalized_over(cpd.table, {cpd.child}, kCpdTol);
    if (!check.normalized) {
      fail(errc::invalid_cpd,
           where + "does not sum to one over the child (worst deviation " +
               std::to_string(check.worst_deviation) + ")");
    }

    parents_[static_cast<std::size_t>(child)] = cpd.parents;
  }

  for (const Variable& v : variables_) {
    if (cpd_index_.count(v.name) == 0) {
      fail(errc::invalid_cpd, "variable '" + v.name + "' has no conditional");
    }
  }

  // Acyclicity via Kahn's algorithm over parent -> child edges.
  const int n = variable_count();
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  for (int child = 0; child < n; ++child) {
    for (const std::string& parent : parents_[static_cast<std::size_t>(child)]) {
      out[static_cast<std::size_t>(variable_index(parent))].push_back(child);
      ++indegree[static_cast<std::size_t>(child)];
    }
  }
  std::deque<int> ready;
  for (int v = 0; v < n; ++v) {
    if (indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  int visited = 0;
  while (!ready.empty()) {
    const int v = ready.front();
    ready.pop_front();
    ++visited;
    for (int next : out[static_cast<std::size_t>(v)]) {
      if (--indegree[static_cast<std::size_t>(next)] == 0) ready.push_back(next);
    }
  }
  if (visited != n) {
    std::string cycle_nodes;
    for (int v = 0; v < n; ++v) {
      if (indegree[static_cast<std::size_t>(v)] > 0) {
        if (!cycle_nodes.empty()) cycle_nodes += ", ";
        cycle_nodes += variables_[static_cast<std::size_t>(v)].name;
      }
    }
    fail(errc::directed_cycle, "directed cycle involving: " + cycle_nodes);
  }
}

int BayesNet::variable_index(const std::string& name) const {
  auto it = variable_index_.find(name);
  return it == variable_index_.end() ? -1 : it->second;
}

const Variable& BayesNet::variable(const std::string& name) const {
  const int idx = variable_index(name);
  if (idx < 0) fail(errc::unknown_variable, "unknown variable '" + name + "'");
  return variables_[static_cast<std::size_t>(idx)];
}

const Cpd& BayesNet::cpd_for(const std::string& child) const {
  auto it = cpd_index_.find(child);
  if (it == cpd_index_.end()) {
    fail(errc::unknown_variable, "unknown variable '" + child + "'");
  }
  return cpds_[static_cast<std::size_t>(it->second)];
}

}  // namespace fgx
