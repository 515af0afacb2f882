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

#include "fgx/independence.hpp"

#include <algorithm>
#include <deque>

#include "fgx/errors.hpp"

namespace fgx {

namespace {

// How a path edge meets a node: pointing out of it, into it, or undirected.
enum class EdgeClass { kTail = 0, kHead = 1, kLateral = 2 };

struct Hop {
  int to;               // node id of the neighbor
  EdgeClass here;       // class of the edge at the current node
  EdgeClass there;      // class of the same edge at the neighbor
};

// Node ids: variables in [0, V), functions in [V, V+F).
class Search {
 public:
  explicit Search(const FactorGraph& graph) : graph_(graph) {
    nvars_ = graph.variable_count();
    nnodes_ = nvars_ + graph.function_count();
  }

  void mark_observed(const std::set<std::string>& observed) {
    observed_.assign(static_cast<std::size_t>(nnodes_), 0);
    for (const std::string& name : observed) {
      graph_.variable(name);
      observed_[static_cast<std::size_t>(graph_.variable_index(name))] = 1;
    }
    flag_observed_ancestry();
  }

  // Unblocked reachability from the sources; returns every reached state's
  // node. `found` stops the search early when a listed variable is reached
  // and records the walk leading to it.
  std::set<std::string> run(const std::set<std::string>& sources,
                            const std::set<int>& stop_at,
                            std::vector<std::string>* walk) {
    seen_.assign(static_cast<std::size_t>(nnodes_) * 3, 0);
    prev_.assign(static_cast<std::size_t>(nnodes_) * 3, -1);
    std::deque<int> frontier;

    std::set<std::string> reached;
    for (const std::string& name : sources) {
      graph_.variable(name);
      const int v = graph_.variable_index(name);
      reached.insert(name);
      for (EdgeClass c : {EdgeClass::kTail, EdgeClass::kHead,
                          EdgeClass::kLateral}) {
        const int s = state(v, c);
        if (!seen_[static_cast<std::size_t>(s)]) {
          seen_[static_cast<std::size_t>(s)] = 1;
          frontier.push_back(s);
        }
      }
    }

    while (!frontier.empty()) {
      const int s = frontier.front();
      frontier.pop_front();
      const int node = s / 3;
      const EdgeClass arrival = static_cast<EdgeClass>(s % 3);
      for (const Hop& hop : hops(node)) {
        if (!passes(node, arrival, hop.here)) continue;
        const int next = state(hop.to, hop.there);
        if (seen_[static_cast<std::size_t>(next)]) continue;
        seen_[static_cast<std::size_t>(next)] = 1;
        prev_[static_cast<std::size_t>(next)] = s;
        reached.insert(node_name(hop.to));
        if (stop_at.count(hop.to)) {
          if (walk) *walk = backtrack(next);
          return reached;
        }
        frontier.push_back(next);
      }
    }
    return reached;
  }

 private:
  int state(int node, EdgeClass c) const {
    return node * 3 + static_cast<int>(c);
  }

  std::string node_name(int id) const {
    return id < nvars_
               ? graph_.variables()[static_cast<std::size_t>(id)].name
               : graph_.functions()[static_cast<std::size_t>(id - nvars_)].name;
  }

  std::vector<Hop> hops(int node) const {
    std::vector<Hop> result;
    if (node < nvars_) {
      const VarAdjacency& adj = graph_.adjacency(node);
      for (int f : adj.parent_of) {
        result.push_back({nvars_ + f, EdgeClass::kTail, EdgeClass::kHead});
      }
      for (int f : adj.child_of) {
        result.push_back({nvars_ + f, EdgeClass::kHead, EdgeClass::kTail});
      }
      for (int f : adj.undirected) {
        result.push_back({nvars_ + f, EdgeClass::kLateral, EdgeClass::kLateral});
      }
    } else {
      const FunctionNode& fn =
          graph_.functions()[static_cast<std::size_t>(node - nvars_)];
      for (const std::string& v : fn.parent_vars) {
        result.push_back({graph_.variable_index(v), EdgeClass::kHead,
                          EdgeClass::kTail});
      }
      for (const std::string& v : fn.child_vars) {
        result.push_back({graph_.variable_index(v), EdgeClass::kTail,
                          EdgeClass::kHead});
      }
      for (const std::string& v : fn.undirected_vars) {
        result.push_back({graph_.variable_index(v), EdgeClass::kLateral,
                          EdgeClass::kLateral});
      }
    }
    return result;
  }

  // Whether the path may continue through `node`, arriving and leaving with
  // the given edge classes.
  bool passes(int node, EdgeClass in, EdgeClass out) const {
    if (node < nvars_ && observed_[static_cast<std::size_t>(node)]) {
      return false;
    }
    const bool collider = in != EdgeClass::kTail && out != EdgeClass::kTail &&
                          (in == EdgeClass::kHead || out == EdgeClass::kHead);
    if (collider) return observed_below_[static_cast<std::size_t>(node)];
    return true;
  }

  // Marks every node that is an observed variable or has one among its
  // descendants (directed edges, dashed included): one traversal from the
  // observed variables along reversed directed edges.
  void flag_observed_ancestry() {
    observed_below_.assign(static_cast<std::size_t>(nnodes_), 0);
    std::deque<int> frontier;
    for (int v = 0; v < nvars_; ++v) {
      if (observed_[static_cast<std::size_t>(v)]) {
        observed_below_[static_cast<std::size_t>(v)] = 1;
        frontier.push_back(v);
      }
    }
    while (!frontier.empty()) {
      const int id = frontier.front();
      frontier.pop_front();
      if (id < nvars_) {
        const VarAdjacency& adj = graph_.adjacency(id);
        for (const std::vector<int>* fns : {&adj.child_of, &adj.dashed_from}) {
          for (int f : *fns) {
            const int fid = nvars_ + f;
            if (!observed_below_[static_cast<std::size_t>(fid)]) {
              observed_below_[static_cast<std::size_t>(fid)] = 1;
              frontier.push_back(fid);
            }
          }
        }
      } else {
        const FunctionNode& fn =
            graph_.functions()[static_cast<std::size_t>(id - nvars_)];
        for (const std::string& v : fn.parent_vars) {
          const int vid = graph_.variable_index(v);
          if (!observed_below_[static_cast<std::size_t>(vid)]) {
            observed_below_[static_cast<std::size_t>(vid)] = 1;
            frontier.push_back(vid);
          }
        }
      }
    }
  }

  std::vector<std::string> backtrack(int last_state) const {
    std::vector<std::string> walk;
    for (int s = last_state; s >= 0; s = prev_[static_cast<std::size_t>(s)]) {
      walk.push_back(node_name(s / 3));
    }
    std::reverse(walk.begin(), walk.end());
    return walk;
  }

  const FactorGraph& graph_;
  int nvars_ = 0;
  int nnodes_ = 0;
  std::vector<char> observed_;
  std::vector<char> observed_below_;
  std::vector<char> seen_;
  std::vector<int> prev_;
};

void require_disjoint(const std::set<std::string>& a,
                      const std::set<std::string>& b, const std::string& what) {
  for (const std::string& name : a) {
    if (b.count(name)) {
      fail(errc::overlapping_sets, "'" + name + "' appears in " + what);
    }
  }
}

}  // namespace

Verdict separated(const FactorGraph& graph, const IndependenceQuery& query) {
  if (query.x_set.empty() || query.y_set.empty()) {
    fail(errc::empty_set, "both query sets must be nonempty");
  }
  require_disjoint(query.x_set, query.y_set, "both query sets");
  require_disjoint(query.x_set, query.given_set, "a query set and the given set");
  require_disjoint(query.y_set, query.given_set, "a query set and the given set");
  for (const std::set<std::string>* s :
       {&query.x_set, &query.y_set, &query.given_set}) {
    for (const std::string& name : *s) graph.variable(name);
  }

  Search search(graph);
  search.mark_observed(query.given_set);
  std::set<int> targets;
  for (const std::string& name : query.y_set) {
    targets.insert(graph.variable_index(name));
  }
  Verdict verdict;
  search.run(query.x_set, targets, &verdict.witness);
  verdict.separated = verdict.witness.empty();
  return verdict;
}

std::set<std::string> reachable_set(const FactorGraph& graph,
                                    const std::set<std::string>& sources,
                                    const std::set<std::string>& observed) {
  Search search(graph);
  search.mark_observed(observed);
  return search.run(sources, {}, nullptr);
}

std::set<std::string> markov_blanket_undirected(const FactorGraph& graph,
                                                const std::string& v) {
  if (graph.has_directed_edges()) {
    fail(errc::not_undirected,
         "blankets are defined on fully undirected graphs only");
  }
  graph.variable(v);
  std::set<std::string> blanket;
  for (int f : graph.adjacency(graph.variable_index(v)).undirected) {
    for (const std::string& other :
         graph.functions()[static_cast<std::size_t>(f)].scope) {
      if (other != v) blanket.insert(other);
    }
  }
  return blanket;
}

}  // namespace fgx
