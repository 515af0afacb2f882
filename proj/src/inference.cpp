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

#include "fgx/inference.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <span>

#include "fgx/errors.hpp"

namespace fgx {

FactorTable joint_enumerate(const FactorGraph& graph, const Evidence& evidence) {
  validate_evidence(graph, evidence);
  graph.ensure_enumerable();

  // Multiplying into an all-ones table over every variable pins the axis
  // order to declaration order and covers unscoped variables uniformly.
  std::vector<Axis> all_axes;
  all_axes.reserve(graph.variables().size());
  for (const Variable& v : graph.variables()) {
    all_axes.push_back({v.name, v.cardinality});
  }
  FactorTable joint = product(FactorTable::constant(std::move(all_axes), 1.0),
                              graph.factor_product());

  std::vector<double> values = joint.values();
  if (!evidence.empty()) {
    std::vector<int> assignment(joint.axes().size(), 0);
    std::vector<std::pair<int, int>> clamps;  // (axis position, state)
    for (const auto& [name, state] : evidence.assignments) {
      clamps.push_back({joint.axis_index(name), state});
    }
    std::size_t flat = 0;
    do {
      for (const auto& [pos, state] : clamps) {
        if (assignment[static_cast<std::size_t>(pos)] != state) {
          values[flat] = 0.0;
          break;
        }
      }
      ++flat;
    } while (next_assignment(assignment, joint.axes()));
  }

  const double mass = pairwise_sum(values);
  if (!(mass > 0.0)) {
    fail(errc::zero_mass, "zero total mass; no distribution under this evidence");
  }
  for (double& v : values) v /= mass;
  return FactorTable(joint.axes(), std::move(values));
}

bool skeleton_is_forest(const FactorGraph& graph) {
  // Acyclic iff every connected component has one fewer scope edge than
  // nodes. Union-find over variables and functions.
  const int nvars = graph.variable_count();
  const int nnodes = nvars + graph.function_count();
  std::vector<int> parent(static_cast<std::size_t>(nnodes));
  for (int i = 0; i < nnodes; ++i) parent[static_cast<std::size_t>(i)] = i;
  const auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  for (int f = 0; f < graph.function_count(); ++f) {
    for (const std::string& v :
         graph.functions()[static_cast<std::size_t>(f)].scope) {
      const int a = find(graph.variable_index(v));
      const int b = find(nvars + f);
      if (a == b) return false;
      parent[static_cast<std::size_t>(a)] = b;
    }
  }
  return true;
}

namespace {

// Message-passing state over the scope-edge skeleton. Edge e joins variable
// var(e) and function fn(e); two directed messages per edge, both vectors
// over the variable's states.
class Propagator {
 public:
  Propagator(const FactorGraph& graph, const Evidence& evidence)
      : graph_(graph) {
    validate_evidence(graph, evidence);
    const int nvars = graph.variable_count();
    var_edges_.resize(static_cast<std::size_t>(nvars));
    fn_edges_.resize(static_cast<std::size_t>(graph.function_count()));
    for (int f = 0; f < graph.function_count(); ++f) {
      const FunctionNode& fn = graph.functions()[static_cast<std::size_t>(f)];
      for (std::size_t slot = 0; slot < fn.scope.size(); ++slot) {
        const int v = graph.variable_index(fn.scope[slot]);
        var_edges_[static_cast<std::size_t>(v)].push_back(
            static_cast<int>(edge_var_.size()));
        fn_edges_[static_cast<std::size_t>(f)].push_back(
            static_cast<int>(edge_var_.size()));
        edge_var_.push_back(v);
        edge_fn_.push_back(f);
        edge_slot_.push_back(static_cast<int>(slot));
      }
    }

    indicator_.resize(static_cast<std::size_t>(nvars));
    for (int v = 0; v < nvars; ++v) {
      const Variable& var = graph.variables()[static_cast<std::size_t>(v)];
      auto it = evidence.assignments.find(var.name);
      std::vector<double> ind(static_cast<std::size_t>(var.cardinality), 1.0);
      if (it != evidence.assignments.end()) {
        ind.assign(static_cast<std::size_t>(var.cardinality), 0.0);
        ind[static_cast<std::size_t>(it->second)] = 1.0;
      }
      indicator_[static_cast<std::size_t>(v)] = std::move(ind);
    }

    to_fn_.resize(edge_var_.size());
    to_var_.resize(edge_var_.size());
    for (std::size_t e = 0; e < edge_var_.size(); ++e) {
      const int card = cardinality(edge_var_[e]);
      to_fn_[e].assign(static_cast<std::size_t>(card), 1.0 / card);
      to_var_[e].assign(static_cast<std::size_t>(card), 1.0 / card);
    }
  }

  // Exact two-pass schedule; assumes an acyclic skeleton.
  void run_tree() {
    const int nvars = graph_.variable_count();
    const int nnodes = nvars + graph_.function_count();
    std::vector<int> up_edge(static_cast<std::size_t>(nnodes), -1);
    std::vector<char> visited(static_cast<std::size_t>(nnodes), 0);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(nnodes));

    for (int root = 0; root < nnodes; ++root) {
      if (visited[static_cast<std::size_t>(root)]) continue;
      visited[static_cast<std::size_t>(root)] = 1;
      std::deque<int> frontier{root};
      while (!frontier.empty()) {
        const int node = frontier.front();
        frontier.pop_front();
        order.push_back(node);
        for (int e : edges_of(node)) {
          const int next = other_end(node, e);
          if (visited[static_cast<std::size_t>(next)]) continue;
          visited[static_cast<std::size_t>(next)] = 1;
          up_edge[static_cast<std::size_t>(next)] = e;
          frontier.push_back(next);
        }
      }
    }

    // Leaves first: each node sends along its upward edge.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int e = up_edge[static_cast<std::size_t>(*it)];
      if (e >= 0) send(*it, e);
    }
    // Root down: each node sends to everything below it.
    for (int node : order) {
      const int up = up_edge[static_cast<std::size_t>(node)];
      for (int e : edges_of(node)) {
        if (e != up) send(node, e);
      }
    }
  }

  // Synchronous flooding with damping. Returns (converged, sweeps run).
  std::pair<bool, int> run_loopy(int max_iters, double damping, double tol) {
    for (int sweep = 1; sweep <= max_iters; ++sweep) {
      std::vector<std::vector<double>> next_to_fn(to_fn_.size());
      std::vector<std::vector<double>> next_to_var(to_var_.size());
      for (std::size_t e = 0; e < edge_var_.size(); ++e) {
        next_to_fn[e] = fresh_var_message(static_cast<int>(e));
        next_to_var[e] = fresh_fn_message(static_cast<int>(e));
      }
      double worst = 0.0;
      for (std::size_t e = 0; e < edge_var_.size(); ++e) {
        worst = std::max(worst, blend(to_fn_[e], next_to_fn[e], damping));
        worst = std::max(worst, blend(to_var_[e], next_to_var[e], damping));
      }
      if (worst < tol) return {true, sweep};
    }
    return {false, max_iters};
  }

  std::map<std::string, std::vector<double>> beliefs() const {
    std::map<std::string, std::vector<double>> result;
    for (int v = 0; v < graph_.variable_count(); ++v) {
      const Variable& var = graph_.variables()[static_cast<std::size_t>(v)];
      std::vector<double> belief = indicator_[static_cast<std::size_t>(v)];
      for (int e : var_edges_[static_cast<std::size_t>(v)]) {
        for (std::size_t i = 0; i < belief.size(); ++i) {
          belief[i] *= to_var_[static_cast<std::size_t>(e)][i];
        }
      }
      const double mass = pairwise_sum(belief);
      if (!(mass > 0.0)) {
        fail(errc::zero_mass,
             "belief for '" + var.name + "' has zero mass under the evidence");
      }
      for (double& b : belief) b /= mass;
      result.emplace(var.name, std::move(belief));
    }
    return result;
  }

 private:
  int cardinality(int v) const {
    return graph_.variables()[static_cast<std::size_t>(v)].cardinality;
  }

  std::span<const int> edges_of(int node) const {
    const int nvars = graph_.variable_count();
    return node < nvars
               ? std::span<const int>(var_edges_[static_cast<std::size_t>(node)])
               : std::span<const int>(
                     fn_edges_[static_cast<std::size_t>(node - nvars)]);
  }

  int other_end(int node, int e) const {
    const int nvars = graph_.variable_count();
    return node < nvars ? nvars + edge_fn_[static_cast<std::size_t>(e)]
                        : edge_var_[static_cast<std::size_t>(e)];
  }

  void send(int node, int e) {
    const int nvars = graph_.variable_count();
    if (node < nvars) {
      to_fn_[static_cast<std::size_t>(e)] = fresh_var_message(e);
    } else {
      to_var_[static_cast<std::size_t>(e)] = fresh_fn_message(e);
    }
  }

  // Message var(e) -> fn(e): the indicator times every other incoming
  // function message.
  std::vector<double> fresh_var_message(int e) const {
    const int v = edge_var_[static_cast<std::size_t>(e)];
    std::vector<double> msg = indicator_[static_cast<std::size_t>(v)];
    for (int other : var_edges_[static_cast<std::size_t>(v)]) {
      if (other == e) continue;
      for (std::size_t i = 0; i < msg.size(); ++i) {
        msg[i] *= to_var_[static_cast<std::size_t>(other)][i];
      }
    }
    normalize(msg);
    return msg;
  }

  // Message fn(e) -> var(e): the table summed against every other incoming
  // variable message.
  std::vector<double> fresh_fn_message(int e) const {
    const int f = edge_fn_[static_cast<std::size_t>(e)];
    const int slot = edge_slot_[static_cast<std::size_t>(e)];
    const FunctionNode& fn = graph_.functions()[static_cast<std::size_t>(f)];
    const FactorTable& table = fn.table;
    const std::vector<int>& edges = fn_edges_[static_cast<std::size_t>(f)];

    std::vector<double> msg(
        static_cast<std::size_t>(cardinality(edge_var_[static_cast<std::size_t>(e)])),
        0.0);
    std::vector<int> assignment(table.axes().size(), 0);
    std::size_t flat = 0;
    do {
      double term = table.value_at(flat);
      for (std::size_t s = 0; s < edges.size(); ++s) {
        if (static_cast<int>(s) == slot) continue;
        term *= to_fn_[static_cast<std::size_t>(edges[s])]
                      [static_cast<std::size_t>(assignment[s])];
      }
      msg[static_cast<std::size_t>(assignment[static_cast<std::size_t>(slot)])] +=
          term;
      ++flat;
    } while (next_assignment(assignment, table.axes()));
    normalize(msg);
    return msg;
  }

  static void normalize(std::vector<double>& msg) {
    const double mass = pairwise_sum(msg);
    if (mass > 0.0) {
      for (double& m : msg) m /= mass;
    }
  }

  // Damped update in place; returns the largest entry change.
  static double blend(std::vector<double>& old_msg,
                      const std::vector<double>& fresh, double damping) {
    double worst = 0.0;
    for (std::size_t i = 0; i < old_msg.size(); ++i) {
      const double next = damping * old_msg[i] + (1.0 - damping) * fresh[i];
      worst = std::max(worst, std::abs(next - old_msg[i]));
      old_msg[i] = next;
    }
    return worst;
  }

  const FactorGraph& graph_;
  std::vector<int> edge_var_;
  std::vector<int> edge_fn_;
  std::vector<int> edge_slot_;  // position of var(e) in fn(e)'s scope
  std::vector<std::vector<int>> var_edges_;
  std::vector<std::vector<int>> fn_edges_;
  std::vector<std::vector<double>> indicator_;
  std::vector<std::vector<double>> to_fn_;   // messages var(e) -> fn(e)
  std::vector<std::vector<double>> to_var_;  // messages fn(e) -> var(e)
};

}  // namespace

SumProductResult sum_product(const FactorGraph& graph, const Evidence& evidence,
                             const SumProductOptions& options) {
  SumProductResult result;
  Propagator prop(graph, evidence);
  if (options.schedule == Schedule::kTree) {
    if (!skeleton_is_forest(graph)) {
      fail(errc::not_a_tree,
           "the scope skeleton has a cycle; use the loopy schedule");
    }
    prop.run_tree();
    result.converged = true;
    result.iterations = 2;
  } else {
    const auto [converged, sweeps] =
        prop.run_loopy(options.max_iters, options.damping, options.message_tol);
    result.converged = converged;
    result.iterations = sweeps;
    result.approximate = true;
  }
  result.beliefs = prop.beliefs();
  return result;
}

std::vector<double> marginal(const FactorGraph& graph, const std::string& var,
                             const Evidence& evidence,
                             const MarginalOptions& options) {
  graph.variable(var);
  if (options.method == MarginalMethod::kEnumeration) {
    const FactorTable joint = joint_enumerate(graph, evidence);
    std::vector<std::string> out;
    for (const Axis& axis : joint.axes()) {
      if (axis.name != var) out.push_back(axis.name);
    }
    return marginalize(joint, out).values();
  }

  SumProductOptions sp;
  sp.max_iters = options.max_iters;
  sp.damping = options.damping;
  if (options.loopy) {
    sp.schedule = Schedule::kLoopy;
  } else if (!skeleton_is_forest(graph)) {
    fail(errc::not_a_tree,
         "the scope skeleton has a cycle; pass the loopy option");
  }
  return sum_product(graph, evidence, sp).beliefs.at(var);
}

double ci_worst_deviation(const FactorGraph& graph,
                          const std::set<std::string>& x_set,
                          const std::set<std::string>& y_set,
                          const std::set<std::string>& given_set) {
  for (const std::set<std::string>* s : {&x_set, &y_set, &given_set}) {
    for (const std::string& name : *s) graph.variable(name);
  }
  for (const std::string& name : x_set) {
    if (y_set.count(name) || given_set.count(name)) {
      fail(errc::overlapping_sets, "'" + name + "' appears in two sets");
    }
  }
  for (const std::string& name : y_set) {
    if (given_set.count(name)) {
      fail(errc::overlapping_sets, "'" + name + "' appears in two sets");
    }
  }
  if (x_set.empty() || y_set.empty()) return 0.0;

  const FactorTable joint = joint_enumerate(graph);
  std::vector<std::string> drop;
  for (const Axis& axis : joint.axes()) {
    if (!x_set.count(axis.name) && !y_set.count(axis.name) &&
        !given_set.count(axis.name)) {
      drop.push_back(axis.name);
    }
  }
  const FactorTable p_xyg = marginalize(joint, drop);
  const FactorTable p_xg = marginalize(
      p_xyg, std::vector<std::string>(y_set.begin(), y_set.end()));
  const FactorTable p_yg = marginalize(
      p_xyg, std::vector<std::string>(x_set.begin(), x_set.end()));
  const FactorTable p_g = marginalize(
      p_xg, std::vector<std::string>(x_set.begin(), x_set.end()));

  // Positions of each smaller table's axes within p_xyg's assignment.
  const auto positions = [&](const FactorTable& t) {
    std::vector<int> pos;
    for (const Axis& axis : t.axes()) pos.push_back(p_xyg.axis_index(axis.name));
    return pos;
  };
  const std::vector<int> xg_pos = positions(p_xg);
  const std::vector<int> yg_pos = positions(p_yg);
  const std::vector<int> g_pos = positions(p_g);
  const auto gather = [](const std::vector<int>& pos,
                         const std::vector<int>& assignment) {
    std::vector<int> sub;
    sub.reserve(pos.size());
    for (int p : pos) sub.push_back(assignment[static_cast<std::size_t>(p)]);
    return sub;
  };

  double worst = 0.0;
  std::vector<int> assignment(p_xyg.axes().size(), 0);
  std::size_t flat = 0;
  do {
    const double pg = p_g.at(gather(g_pos, assignment));
    if (pg > 1e-12) {
      const double lhs = p_xyg.value_at(flat) / pg;
      const double rhs = (p_xg.at(gather(xg_pos, assignment)) / pg) *
                         (p_yg.at(gather(yg_pos, assignment)) / pg);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    ++flat;
  } while (next_assignment(assignment, p_xyg.axes()));
  return worst;
}

bool numeric_ci(const FactorGraph& graph, const std::set<std::string>& x_set,
                const std::set<std::string>& y_set,
                const std::set<std::string>& given_set, double tol) {
  return ci_worst_deviation(graph, x_set, y_set, given_set) <= tol;
}

}  // namespace fgx
