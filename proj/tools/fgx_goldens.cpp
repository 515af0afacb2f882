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
//
// Regenerates the canonical example models under models/. Hand-picked tables
// use dyadic fractions so sums of conditionals are exact in binary floating
// point; derived normalization tables are computed here with plain loops.
//
// Usage: fgx_goldens [OUTPUT_DIR]

#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "fgx/convert.hpp"
#include "fgx/graph.hpp"
#include "fgx/io.hpp"

namespace {

using fgx::Axis;
using fgx::BayesNet;
using fgx::Cpd;
using fgx::FactorGraph;
using fgx::FactorTable;
using fgx::FunctionSpec;
using fgx::MarkovNet;
using fgx::ModelFile;
using fgx::ModelKind;
using fgx::Potential;
using fgx::Variable;

void write_file(const std::string& dir, const std::string& name,
                const ModelFile& model) {
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open " << path << "\n";
    std::exit(1);
  }
  out << fgx::serialize_model(model);
  std::cout << "wrote " << path << "\n";
}

FactorTable t(std::vector<Axis> axes, std::vector<double> values) {
  return FactorTable(std::move(axes), std::move(values));
}

// Five-variable chain-and-collider net: u drives v and x, v drives y,
// x and y drive z.
BayesNet chain_collider_bn() {
  std::vector<Variable> vars{{"u", 2}, {"v", 2}, {"x", 2}, {"y", 2}, {"z", 2}};
  std::vector<Cpd> cpds;
  cpds.push_back({"u", {}, t({{"u", 2}}, {0.5, 0.5})});
  cpds.push_back({"v", {"u"}, t({{"u", 2}, {"v", 2}}, {0.75, 0.25, 0.25, 0.75})});
  cpds.push_back({"x", {"u"}, t({{"u", 2}, {"x", 2}}, {0.625, 0.375, 0.125, 0.875})});
  cpds.push_back({"y", {"v"}, t({{"v", 2}, {"y", 2}}, {0.875, 0.125, 0.375, 0.625})});
  cpds.push_back({"z",
                  {"x", "y"},
                  t({{"x", 2}, {"y", 2}, {"z", 2}},
                    {0.75, 0.25, 0.5, 0.5, 0.25, 0.75, 0.125, 0.875})});
  return BayesNet(std::move(vars), std::move(cpds));
}

// The same joint written as an undirected factor graph, one function per
// conditional.
FactorGraph undirected_chain_collider_fg() {
  const BayesNet net = chain_collider_bn();
  std::vector<Variable> vars = net.variables();
  std::vector<FunctionSpec> fns;
  auto add = [&](const std::string& name, const std::string& child) {
    FunctionSpec spec;
    spec.name = name;
    const Cpd& cpd = net.cpd_for(child);
    for (const Axis& axis : cpd.table.axes()) spec.scope.push_back(axis.name);
    spec.undirected_vars = spec.scope;
    spec.table = cpd.table;
    fns.push_back(std::move(spec));
  };
  add("f_u", "u");
  add("f_uv", "v");
  add("f_ux", "x");
  add("f_vy", "y");
  add("f_xyz", "z");
  return build_and_validate(std::move(vars), std::move(fns));
}

// Hybrid form: the (u, v) pair keeps an undirected joint table, the rest
// stays directed.
FactorGraph hybrid_chain_collider_fg() {
  const BayesNet net = chain_collider_bn();
  std::vector<Variable> vars = net.variables();
  std::vector<FunctionSpec> fns;

  // P(u, v) = P(u) P(v|u), exact with the dyadic entries above.
  const FactorTable& pu = net.cpd_for("u").table;
  const FactorTable& pvu = net.cpd_for("v").table;
  std::vector<double> joint_uv(4);
  for (int iu = 0; iu < 2; ++iu) {
    for (int iv = 0; iv < 2; ++iv) {
      joint_uv[static_cast<std::size_t>(iu * 2 + iv)] =
          pu.values()[static_cast<std::size_t>(iu)] *
          pvu.values()[static_cast<std::size_t>(iu * 2 + iv)];
    }
  }
  FunctionSpec uv;
  uv.name = "f_uv";
  uv.scope = {"u", "v"};
  uv.undirected_vars = uv.scope;
  uv.table = t({{"u", 2}, {"v", 2}}, std::move(joint_uv));
  fns.push_back(std::move(uv));

  auto directed = [&](const std::string& name, const std::string& child) {
    FunctionSpec spec;
    spec.name = name;
    const Cpd& cpd = net.cpd_for(child);
    for (const Axis& axis : cpd.table.axes()) spec.scope.push_back(axis.name);
    spec.parent_vars = cpd.parents;
    spec.child_vars = {child};
    spec.table = cpd.table;
    fns.push_back(std::move(spec));
  };
  directed("f_x", "x");
  directed("f_y", "y");
  directed("f_z", "z");
  return build_and_validate(std::move(vars), std::move(fns));
}

// Pairwise grid with one triangle closed by z.
MarkovNet grid_mrf() {
  std::vector<Variable> vars{{"u", 2}, {"v", 2}, {"x", 2}, {"y", 2}, {"z", 2}};
  std::vector<std::pair<std::string, std::string>> edges{
      {"u", "v"}, {"u", "x"}, {"v", "y"}, {"x", "y"}, {"x", "z"}, {"y", "z"}};
  std::vector<Potential> pots;
  pots.push_back({{"u", "v"}, t({{"u", 2}, {"v", 2}}, {1.5, 0.5, 0.5, 1.5})});
  pots.push_back({{"u", "x"}, t({{"u", 2}, {"x", 2}}, {1.25, 0.75, 0.25, 1.75})});
  pots.push_back({{"v", "y"}, t({{"v", 2}, {"y", 2}}, {2.0, 0.5, 1.0, 1.5})});
  pots.push_back({{"x", "y", "z"},
                  t({{"x", 2}, {"y", 2}, {"z", 2}},
                    {0.75, 1.25, 0.5, 1.0, 1.5, 0.25, 0.625, 1.375})});
  return MarkovNet(std::move(vars), std::move(edges), std::move(pots));
}

// One function with two child variables: its table is a joint conditional
// over the pair, normalized per parent configuration.
FactorGraph two_child_fg() {
  std::vector<Variable> vars{{"x", 2}, {"y", 2}, {"z", 2}};
  std::vector<FunctionSpec> fns;

  FunctionSpec px;
  px.name = "P_x";
  px.scope = {"x"};
  px.child_vars = {"x"};
  px.table = t({{"x", 2}}, {0.625, 0.375});
  fns.push_back(std::move(px));

  FunctionSpec pair;
  pair.name = "F";
  pair.scope = {"x", "y", "z"};
  pair.parent_vars = {"x"};
  pair.child_vars = {"y", "z"};
  pair.table = t({{"x", 2}, {"y", 2}, {"z", 2}},
                 {0.25, 0.125, 0.5, 0.125, 0.0625, 0.1875, 0.25, 0.5});
  fns.push_back(std::move(pair));
  return build_and_validate(std::move(vars), std::move(fns));
}

// Two tables share the child z; a dashed function over the parents carries
// the inverse of their partial sum so the trio is locally normalized.
FactorGraph shared_child_fg() {
  std::vector<Variable> vars{{"x", 2}, {"y", 2}, {"z", 2}};
  std::vector<FunctionSpec> fns;

  FunctionSpec px;
  px.name = "P_x";
  px.scope = {"x"};
  px.child_vars = {"x"};
  px.table = t({{"x", 2}}, {0.625, 0.375});
  fns.push_back(std::move(px));

  FunctionSpec py;
  py.name = "P_y";
  py.scope = {"y"};
  py.child_vars = {"y"};
  py.table = t({{"y", 2}}, {0.25, 0.75});
  fns.push_back(std::move(py));

  FunctionSpec f;
  f.name = "f";
  f.scope = {"x", "z"};
  f.parent_vars = {"x"};
  f.child_vars = {"z"};
  f.table = t({{"x", 2}, {"z", 2}}, {0.5, 0.25, 0.125, 0.75});

  FunctionSpec g;
  g.name = "g";
  g.scope = {"y", "z"};
  g.parent_vars = {"y"};
  g.child_vars = {"z"};
  g.table = t({{"y", 2}, {"z", 2}}, {0.375, 0.5, 0.625, 0.25});

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
  n.table = t({{"x", 2}, {"y", 2}}, std::move(inv));

  fns.push_back(std::move(f));
  fns.push_back(std::move(g));
  fns.push_back(std::move(n));
  return build_and_validate(std::move(vars), std::move(fns));
}

// Plain undirected triangle with unit tables.
FactorGraph triangle_fg() {
  std::vector<Variable> vars{{"x", 2}, {"y", 2}, {"z", 2}};
  std::vector<FunctionSpec> fns;
  auto pairwise = [&](const std::string& name, const std::string& a,
                      const std::string& b) {
    FunctionSpec spec;
    spec.name = name;
    spec.scope = {a, b};
    spec.undirected_vars = spec.scope;
    spec.table = t({{a, 2}, {b, 2}}, {1.0, 1.0, 1.0, 1.0});
    fns.push_back(std::move(spec));
  };
  pairwise("f", "x", "y");
  pairwise("g", "y", "z");
  pairwise("h", "x", "z");
  return build_and_validate(std::move(vars), std::move(fns));
}

// Gated mixture: the selector m raises one expert's conditional to the power
// m and the other to 1-m, so exactly one of the two tables is live per m.
FactorGraph mixture_gate_fg() {
  std::vector<Variable> vars{{"c1", 2}, {"m", 2}, {"c0", 2}, {"z", 2}};
  std::vector<FunctionSpec> fns;

  auto prior = [&](const std::string& name, double p0, double p1) {
    FunctionSpec spec;
    spec.name = "P_" + name;
    spec.scope = {name};
    spec.child_vars = {name};
    spec.table = t({{name, 2}}, {p0, p1});
    fns.push_back(std::move(spec));
  };
  prior("c1", 0.5, 0.5);
  prior("m", 0.25, 0.75);
  prior("c0", 0.375, 0.625);

  auto expert = [&](const std::string& cls, bool live_when_m_is_one,
                    std::vector<double> q) {
    std::vector<double> values(8);
    for (int im = 0; im < 2; ++im) {
      for (int ic = 0; ic < 2; ++ic) {
        for (int iz = 0; iz < 2; ++iz) {
          const bool live = live_when_m_is_one ? im == 1 : im == 0;
          values[static_cast<std::size_t>(im * 4 + ic * 2 + iz)] =
              live ? q[static_cast<std::size_t>(ic * 2 + iz)] : 1.0;
        }
      }
    }
    FunctionSpec spec;
    spec.name = "f_" + cls;
    spec.scope = {"m", cls, "z"};
    spec.parent_vars = {"m", cls};
    spec.child_vars = {"z"};
    spec.table = t({{"m", 2}, {cls, 2}, {"z", 2}}, std::move(values));
    fns.push_back(std::move(spec));
  };
  expert("c1", true, {0.75, 0.25, 0.125, 0.875});
  expert("c0", false, {0.625, 0.375, 0.5, 0.5});
  return build_and_validate(std::move(vars), std::move(fns));
}

// Two directed chains tied by an undirected coupling; a single dashed
// function over the roots carries the inverse of the coupled mass. The joint
// is globally normalized even though no single child component is.
FactorGraph coupled_chains_fg() {
  std::vector<Variable> vars{{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}};
  std::vector<FunctionSpec> fns;

  FunctionSpec pa;
  pa.name = "P_a";
  pa.scope = {"a"};
  pa.child_vars = {"a"};
  pa.table = t({{"a", 2}}, {0.375, 0.625});
  fns.push_back(std::move(pa));

  FunctionSpec pb;
  pb.name = "P_b";
  pb.scope = {"b"};
  pb.child_vars = {"b"};
  pb.table = t({{"b", 2}}, {0.75, 0.25});
  fns.push_back(std::move(pb));

  FunctionSpec f;
  f.name = "f";
  f.scope = {"a", "c"};
  f.parent_vars = {"a"};
  f.child_vars = {"c"};
  f.table = t({{"a", 2}, {"c", 2}}, {0.5, 0.25, 0.75, 0.125});

  FunctionSpec g;
  g.name = "g";
  g.scope = {"b", "d"};
  g.parent_vars = {"b"};
  g.child_vars = {"d"};
  g.table = t({{"b", 2}, {"d", 2}}, {0.25, 0.5, 0.375, 0.625});

  FunctionSpec h;
  h.name = "h";
  h.scope = {"c", "d"};
  h.undirected_vars = h.scope;
  h.table = t({{"c", 2}, {"d", 2}}, {0.5, 0.75, 0.25, 0.5});

  FunctionSpec n;
  n.name = "n";
  n.scope = {"a", "b"};
  n.parent_vars = {"a", "b"};
  n.dashed_targets = {"c", "d"};
  std::vector<double> inv(4);
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 2; ++ib) {
      double sum = 0.0;
      for (int ic = 0; ic < 2; ++ic) {
        for (int id = 0; id < 2; ++id) {
          sum += f.table.values()[static_cast<std::size_t>(ia * 2 + ic)] *
                 g.table.values()[static_cast<std::size_t>(ib * 2 + id)] *
                 h.table.values()[static_cast<std::size_t>(ic * 2 + id)];
        }
      }
      inv[static_cast<std::size_t>(ia * 2 + ib)] = 1.0 / sum;
    }
  }
  n.table = t({{"a", 2}, {"b", 2}}, std::move(inv));

  fns.push_back(std::move(f));
  fns.push_back(std::move(g));
  fns.push_back(std::move(h));
  fns.push_back(std::move(n));
  return build_and_validate(std::move(vars), std::move(fns));
}

}  // namespace

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "models";

  const BayesNet bn = chain_collider_bn();
  const MarkovNet mrf = grid_mrf();

  write_file(dir, "fig2a.bn", ModelFile{ModelKind::kBayesNet, 1, bn});
  write_file(dir, "fig2b.fgx",
             ModelFile{ModelKind::kFactorGraph, 1, undirected_chain_collider_fg()});
  write_file(dir, "fig2c.fgx",
             ModelFile{ModelKind::kFactorGraph, 1, fgx::bn_to_fg(bn)});
  write_file(dir, "fig2d.fgx",
             ModelFile{ModelKind::kFactorGraph, 1, hybrid_chain_collider_fg()});
  write_file(dir, "fig2e.mrf", ModelFile{ModelKind::kMarkovNet, 1, mrf});
  write_file(dir, "fig2f.fgx",
             ModelFile{ModelKind::kFactorGraph, 1, fgx::mrf_to_fg(mrf)});
  write_file(dir, "fig3a.fgx",
             ModelFile{ModelKind::kFactorGraph, 1, two_child_fg()});
  write_file(dir, "fig3b.fgx",
             ModelFile{ModelKind::kFactorGraph, 1, shared_child_fg()});
  write_file(dir, "fig4a.fgx",
             ModelFile{ModelKind::kFactorGraph, 1, triangle_fg()});
  write_file(dir, "moe.fgx",
             ModelFile{ModelKind::kFactorGraph, 1, mixture_gate_fg()});
  write_file(dir, "fig6b.fgx",
             ModelFile{ModelKind::kFactorGraph, 1, coupled_chains_fg()});
  return 0;
}
