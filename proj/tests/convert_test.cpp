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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fgx/convert.hpp"
#include "fgx/inference.hpp"
#include "support/checks.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace fgx;
using fgx::testing::bns_equal;
using fgx::testing::brute_joint_bn;
using fgx::testing::brute_joint_fg;
using fgx::testing::brute_joint_mrf;
using fgx::testing::brute_maximal_cliques;
using fgx::testing::BruteJoint;
using fgx::testing::mrfs_equal;
using fgx::testing::random_bn;
using fgx::testing::random_mrf;
using fgx::testing::thrown_code;

namespace {

bool joints_close(const BruteJoint& a, const BruteJoint& b, double tol) {
  if (a.vars != b.vars || a.cards != b.cards) return false;
  for (std::size_t i = 0; i < a.p.size(); ++i) {
    if (std::fabs(a.p[i] - b.p[i]) > tol) return false;
  }
  return true;
}

BayesNet chain_bn() {
  std::vector<Variable> vars{{"x", 2}, {"y", 2}, {"z", 2}};
  std::vector<Cpd> cpds;
  cpds.push_back({"x", {}, FactorTable({{"x", 2}}, {0.3, 0.7})});
  cpds.push_back(
      {"y", {"x"}, FactorTable({{"x", 2}, {"y", 2}}, {0.9, 0.1, 0.2, 0.8})});
  cpds.push_back(
      {"z", {"y"}, FactorTable({{"y", 2}, {"z", 2}}, {0.6, 0.4, 0.25, 0.75})});
  return BayesNet(std::move(vars), std::move(cpds));
}

FactorTable ones(std::vector<Axis> axes) {
  return FactorTable::constant(std::move(axes), 1.0);
}

}  // namespace

TEST_CASE("a chain net becomes one function per conditional") {
  FactorGraph g = bn_to_fg(chain_bn());
  REQUIRE(g.function_count() == 3);
  StructureStats stats = g.structure_stats();
  CHECK(stats.parent_in_edges == 2);
  CHECK(stats.child_out_edges == 3);
  CHECK(stats.undirected_edges == 0);
  CHECK(stats.total_edges() == 5);  // one per parent link plus one per variable
  const FunctionNode& fy = g.functions()[1];
  CHECK(fy.parent_vars == std::vector<std::string>{"x"});
  CHECK(fy.child_vars == std::vector<std::string>{"y"});
}

TEST_CASE("directed conversion preserves the joint") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    BayesNet net = random_bn(rng, 5, 3);
    CHECK(joints_close(brute_joint_bn(net), brute_joint_fg(bn_to_fg(net)),
                       1e-12));
  }
}

TEST_CASE("directed round trip returns the identical net") {
  std::mt19937 rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    BayesNet net = random_bn(rng, 6, 3);
    CHECK(bns_equal(net, fg_to_bn(bn_to_fg(net))));
  }
}

TEST_CASE("function names avoid the variable namespace") {
  std::vector<Variable> vars{{"x", 2}, {"f_x", 2}};
  std::vector<Cpd> cpds;
  cpds.push_back({"x", {}, FactorTable({{"x", 2}}, {0.5, 0.5})});
  cpds.push_back({"f_x", {}, FactorTable({{"f_x", 2}}, {0.5, 0.5})});
  FactorGraph g = bn_to_fg(BayesNet(std::move(vars), std::move(cpds)));
  CHECK(g.function_index("f_x_") >= 0);  // renamed around the variable
}

TEST_CASE("only fully directed graphs convert to a net") {
  std::vector<Variable> vars{{"x", 2}, {"y", 2}};

  FunctionSpec undirected;
  undirected.name = "f";
  undirected.scope = {"x", "y"};
  undirected.undirected_vars = undirected.scope;
  undirected.table = ones({{"x", 2}, {"y", 2}});
  CHECK(thrown_code([&] {
          fg_to_bn(build_and_validate(vars, {undirected}));
        }) == errc::undirected_edge_present);

  FunctionSpec two_children;
  two_children.name = "f";
  two_children.scope = {"x", "y"};
  two_children.child_vars = two_children.scope;
  two_children.table =
      FactorTable({{"x", 2}, {"y", 2}}, {0.25, 0.25, 0.25, 0.25});
  CHECK(thrown_code([&] {
          fg_to_bn(build_and_validate(vars, {two_children}));
        }) == errc::multi_child_function);

  FunctionSpec px;
  px.name = "P_x";
  px.scope = {"x"};
  px.child_vars = {"x"};
  px.table = FactorTable({{"x", 2}}, {0.5, 0.5});
  CHECK(thrown_code([&] { fg_to_bn(build_and_validate(vars, {px})); }) ==
        errc::orphan_variable);

  FunctionSpec dangling;
  dangling.name = "g";
  dangling.scope = {"x"};
  dangling.parent_vars = {"x"};
  dangling.table = ones({{"x", 2}});
  FunctionSpec py = px;
  py.name = "P_y";
  py.scope = {"y"};
  py.child_vars = {"y"};
  py.table = FactorTable({{"y", 2}}, {0.5, 0.5});
  CHECK(thrown_code([&] {
          fg_to_bn(build_and_validate(vars, {px, py, dangling}));
        }) == errc::unanchored_function);

  FunctionSpec skewed = px;
  skewed.table = FactorTable({{"x", 2}}, {0.5, 0.6});
  CHECK(thrown_code([&] {
          fg_to_bn(build_and_validate(vars, {skewed, py}));
        }) == errc::normalization_failure);
}

TEST_CASE("a dashed normalizer folds into its target conditional") {
  // f(x,z) g(y,z) n(x,y) with n dashed into z: the conditional for z is the
  // three-way product.
  std::vector<Variable> vars{{"x", 2}, {"y", 2}, {"z", 2}};
  std::vector<FunctionSpec> fns;

  FunctionSpec px;
  px.name = "P_x";
  px.scope = {"x"};
  px.child_vars = {"x"};
  px.table = FactorTable({{"x", 2}}, {0.625, 0.375});
  fns.push_back(px);

  FunctionSpec py;
  py.name = "P_y";
  py.scope = {"y"};
  py.child_vars = {"y"};
  py.table = FactorTable({{"y", 2}}, {0.25, 0.75});
  fns.push_back(py);

  FunctionSpec f;
  f.name = "f";
  f.scope = {"x", "z"};
  f.parent_vars = {"x"};
  f.child_vars = {"z"};
  f.table = FactorTable({{"x", 2}, {"z", 2}}, {0.5, 0.25, 0.125, 0.75});
  fns.push_back(f);

  FunctionSpec g;
  g.name = "g";
  g.scope = {"y", "z"};
  g.parent_vars = {"y"};
  g.child_vars = {"z"};
  g.table = FactorTable({{"y", 2}, {"z", 2}}, {0.375, 0.5, 0.625, 0.25});
  fns.push_back(g);

  FunctionSpec n;
  n.name = "n";
  n.scope = {"x", "y"};
  n.parent_vars = {"x", "y"};
  n.dashed_targets = {"z"};
  std::vector<double> inv(4);
  for (int ix = 0; ix < 2; ++ix) {
    for (int iy = 0; iy < 2; ++iy) {
      double sum = 0.0;
      for (int iz = 0; iz < 2; ++iz) {
        sum += f.table.values()[static_cast<std::size_t>(ix * 2 + iz)] *
               g.table.values()[static_cast<std::size_t>(iy * 2 + iz)];
      }
      inv[static_cast<std::size_t>(ix * 2 + iy)] = 1.0 / sum;
    }
  }
  n.table = FactorTable({{"x", 2}, {"y", 2}}, std::move(inv));
  fns.push_back(n);

  BayesNet net = fg_to_bn(build_and_validate(vars, fns));
  const Cpd& cz = net.cpd_for("z");
  CHECK(cz.parents == std::vector<std::string>{"x", "y"});
  for (int ix = 0; ix < 2; ++ix) {
    for (int iy = 0; iy < 2; ++iy) {
      for (int iz = 0; iz < 2; ++iz) {
        double expected =
            f.table.values()[static_cast<std::size_t>(ix * 2 + iz)] *
            g.table.values()[static_cast<std::size_t>(iy * 2 + iz)] *
            n.table.values()[static_cast<std::size_t>(ix * 2 + iy)];
        CHECK(cz.table.at(std::vector<int>{ix, iy, iz}) ==
              doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
  CHECK(joints_close(brute_joint_fg(build_and_validate(vars, fns)),
                     brute_joint_bn(net), 1e-12));
}

TEST_CASE("clique enumeration matches subset search") {
  std::mt19937 rng(107);
  for (int trial = 0; trial < 30; ++trial) {
    MarkovNet net = random_mrf(rng, 7, 2);
    CHECK(maximal_cliques(net) == brute_maximal_cliques(net));
  }
}

TEST_CASE("a fully connected net collapses to one function") {
  MarkovNet net = fgx::testing::complete_mrf(6);
  CHECK(net.edge_count() == 15);
  FactorGraph g = mrf_to_fg(net);
  CHECK(g.function_count() == 1);
  StructureStats stats = g.structure_stats();
  CHECK(stats.undirected_edges == 6);
  CHECK(stats.total_edges() == 6);
}

TEST_CASE("undirected conversion preserves the joint") {
  std::mt19937 rng(109);
  for (int trial = 0; trial < 20; ++trial) {
    MarkovNet net = random_mrf(rng, 5, 3);
    CHECK(joints_close(brute_joint_mrf(net), brute_joint_fg(mrf_to_fg(net)),
                       1e-12));
  }
}

TEST_CASE("undirected round trip returns the identical net") {
  std::mt19937 rng(113);
  for (int trial = 0; trial < 20; ++trial) {
    MarkovNet net = random_mrf(rng, 6, 3);
    CHECK(mrfs_equal(net, fg_to_mrf(mrf_to_fg(net))));
  }
}

TEST_CASE("potentials without a maximal clique home are rejected") {
  std::vector<Variable> vars{{"x", 2}, {"y", 2}, {"z", 2}};
  std::vector<std::pair<std::string, std::string>> triangle{
      {"x", "y"}, {"y", "z"}, {"x", "z"}};
  Potential on_edge{{"x", "y"}, ones({{"x", 2}, {"y", 2}})};
  CHECK(thrown_code([&] {
          mrf_to_fg(MarkovNet(vars, triangle, {on_edge}));
        }) == errc::potential_not_on_maximal_clique);

  std::vector<std::pair<std::string, std::string>> path{{"x", "y"},
                                                        {"y", "z"}};
  Potential second{{"y", "x"}, ones({{"y", 2}, {"x", 2}})};
  CHECK(thrown_code([&] {
          mrf_to_fg(MarkovNet(vars, path, {on_edge, second}));
        }) == errc::duplicate_potential);
  CHECK(thrown_code([&] {
          mrf_to_fg(MarkovNet(vars, path, {on_edge}));
        }) == errc::missing_potential);
}

TEST_CASE("nets without potentials get unit tables") {
  std::vector<Variable> vars{{"x", 2}, {"y", 2}, {"z", 2}};
  std::vector<std::pair<std::string, std::string>> path{{"x", "y"},
                                                        {"y", "z"}};
  FactorGraph g = mrf_to_fg(MarkovNet(vars, path, {}));
  REQUIRE(g.function_count() == 2);
  for (const FunctionNode& fn : g.functions()) {
    for (double v : fn.table.values()) CHECK(v == 1.0);
  }
}

TEST_CASE("dropping directions couples scopes and dashed targets") {
  // Two directed chains with an undirected tie and a dashed normalizer: the
  // normalizer's scope and target couple into edges too.
  std::vector<Variable> vars{{"a", 2}, {"b", 2}, {"c", 2}};
  std::vector<FunctionSpec> fns;
  FunctionSpec f;
  f.name = "f";
  f.scope = {"a", "b"};
  f.parent_vars = {"a"};
  f.child_vars = {"b"};
  f.table = FactorTable({{"a", 2}, {"b", 2}}, {0.5, 0.5, 0.25, 0.75});
  fns.push_back(f);
  FunctionSpec n;
  n.name = "n";
  n.scope = {"a"};
  n.parent_vars = {"a"};
  n.dashed_targets = {"c"};
  n.table = FactorTable({{"a", 2}}, {1.5, 2.0});
  fns.push_back(n);

  MarkovNet net = fg_to_mrf(build_and_validate(vars, fns));
  CHECK(net.edges() == std::vector<std::pair<std::string, std::string>>{
                           {"a", "b"}, {"a", "c"}});
}

TEST_CASE("each function multiplies into the first containing clique") {
  // Triangle skeleton: three pairwise functions all land in the single
  // maximal clique, padded with ones.
  std::vector<Variable> vars{{"x", 2}, {"y", 2}, {"z", 2}};
  std::vector<FunctionSpec> fns;
  auto pairwise = [&](const std::string& name, const std::string& a,
                      const std::string& b, std::vector<double> values) {
    FunctionSpec spec;
    spec.name = name;
    spec.scope = {a, b};
    spec.undirected_vars = spec.scope;
    spec.table = FactorTable({{a, 2}, {b, 2}}, std::move(values));
    fns.push_back(std::move(spec));
  };
  pairwise("f", "x", "y", {1, 2, 3, 4});
  pairwise("g", "y", "z", {0.5, 1, 1.5, 2});
  pairwise("h", "x", "z", {2, 1, 1, 2});

  FactorGraph graph = build_and_validate(vars, fns);
  MarkovNet net = fg_to_mrf(graph);
  REQUIRE(net.potentials().size() == 1);
  const Potential& pot = net.potentials()[0];
  CHECK(pot.scope == std::vector<std::string>{"x", "y", "z"});
  for (int ix = 0; ix < 2; ++ix) {
    for (int iy = 0; iy < 2; ++iy) {
      for (int iz = 0; iz < 2; ++iz) {
        double expected =
            fns[0].table.at(std::vector<int>{ix, iy}) *
            fns[1].table.at(std::vector<int>{iy, iz}) *
            fns[2].table.at(std::vector<int>{ix, iz});
        CHECK(pot.table.at(std::vector<int>{ix, iy, iz}) ==
              doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
  CHECK(joints_close(brute_joint_fg(graph), brute_joint_mrf(net), 1e-12));
}

TEST_CASE("hybrid graphs keep their joint when directions drop") {
  std::mt19937 rng(127);
  for (int trial = 0; trial < 20; ++trial) {
    FactorGraph g = fgx::testing::random_hybrid_fg(rng, 5, 3);
    CHECK(joints_close(brute_joint_fg(g), brute_joint_mrf(fg_to_mrf(g)),
                       1e-12));
  }
}

TEST_CASE("an edgeless net yields singleton cliques") {
  std::vector<Variable> vars{{"x", 2}, {"y", 3}};
  FactorGraph g = mrf_to_fg(MarkovNet(vars, {}, {}));
  REQUIRE(g.function_count() == 2);
  CHECK(g.functions()[0].scope == std::vector<std::string>{"x"});
  CHECK(g.functions()[1].scope == std::vector<std::string>{"y"});
}

TEST_CASE("conversion chain through every representation keeps the joint") {
  std::mt19937 rng(131);
  for (int trial = 0; trial < 10; ++trial) {
    BayesNet net = random_bn(rng, 5, 2);
    FactorGraph fg = bn_to_fg(net);
    MarkovNet mrf = fg_to_mrf(fg);
    FactorGraph back = mrf_to_fg(mrf);
    CHECK(joints_close(brute_joint_bn(net), brute_joint_fg(back), 1e-12));
  }
}
