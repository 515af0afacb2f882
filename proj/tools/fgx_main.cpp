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

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fgx/convert.hpp"
#include "fgx/errors.hpp"
#include "fgx/independence.hpp"
#include "fgx/inference.hpp"
#include "fgx/io.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kSemanticError = 1;
constexpr int kUsageError = 2;

const char kUsage[] =
    "usage: fgx COMMAND ...\n"
    "  check FILE [--json]\n"
    "  stats [FILE] [--json]\n"
    "  indep FILE --x A[,B...] --y C[,...] [--given D[,...]] [--json]\n"
    "  convert FILE --to fg|bn|mrf [-o OUT] [--json]\n"
    "  joint FILE [--evidence v=k,...] [--json]\n"
    "  marginal FILE VAR [--evidence v=k,...] [--method enum|sumproduct]\n"
    "           [--loopy] [--max-iters N] [--damping R] [--json]\n"
    "  blanket FILE VAR [--json]\n"
    "FILE may be '-' for standard input.\n";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> valued;
  std::set<std::string> switches;

  bool has(const std::string& flag) const {
    return switches.count(flag) || valued.count(flag);
  }
  std::string value(const std::string& flag) const { return valued.at(flag); }
};

// Splits argv into positionals and the flags this command accepts.
Args parse_args(int argc, char** argv, int first,
                const std::set<std::string>& valued_flags,
                const std::set<std::string>& switch_flags) {
  Args args;
  for (int i = first; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.size() > 1 && arg[0] == '-' && arg != "-") {
      if (switch_flags.count(arg)) {
        args.switches.insert(arg);
      } else if (valued_flags.count(arg)) {
        if (i + 1 >= argc) {
          throw UsageError("flag '" + arg + "' needs a value");
        }
        args.valued[arg] = argv[++i];
      } else {
        throw UsageError("unknown flag '" + arg + "'");
      }
    } else {
      args.positional.push_back(arg);
    }
  }
  return args;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw fgx::Error(fgx::errc::parse_error, "cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

fgx::ModelFile load_model(const std::string& path) {
  return fgx::parse_model(read_input(path));
}

// Any model as a factor graph: fgx files directly, bn and mrf files through
// their conversions.
fgx::FactorGraph to_graph(const fgx::ModelFile& model) {
  switch (model.kind) {
    case fgx::ModelKind::kFactorGraph:
      return std::get<fgx::FactorGraph>(model.body);
    case fgx::ModelKind::kBayesNet:
      return fgx::bn_to_fg(std::get<fgx::BayesNet>(model.body));
    case fgx::ModelKind::kMarkovNet:
      return fgx::mrf_to_fg(std::get<fgx::MarkovNet>(model.body));
  }
  throw fgx::Error(fgx::errc::parse_error, "unreachable model kind");
}

std::set<std::string> split_names(const std::string& list) {
  std::set<std::string> names;
  std::string item;
  std::istringstream stream(list);
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) names.insert(item);
  }
  if (names.empty()) throw UsageError("empty variable list '" + list + "'");
  return names;
}

fgx::Evidence parse_evidence(const std::string& list) {
  fgx::Evidence evidence;
  std::string item;
  std::istringstream stream(list);
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw UsageError("evidence entry '" + item + "' is not NAME=STATE");
    }
    const std::string name = item.substr(0, eq);
    const std::string digits = item.substr(eq + 1);
    std::size_t used = 0;
    int state = 0;
    try {
      state = std::stoi(digits, &used);
    } catch (const std::exception&) {
      throw UsageError("evidence state '" + digits + "' is not an integer");
    }
    if (used != digits.size()) {
      throw UsageError("evidence state '" + digits + "' is not an integer");
    }
    evidence.assignments[name] = state;
  }
  return evidence;
}

std::string join(const std::vector<std::string>& names, const char* sep) {
  std::string out;
  for (const std::string& name : names) {
    if (!out.empty()) out += sep;
    out += name;
  }
  return out;
}

int run_check(const Args& args) {
  if (args.positional.size() != 1) throw UsageError("check takes one FILE");
  const fgx::ModelFile model = load_model(args.positional[0]);
  const bool json_mode = args.has("--json");

  if (model.kind != fgx::ModelKind::kFactorGraph) {
    // Construction already validated the model.
    const int vars =
        model.kind == fgx::ModelKind::kBayesNet
            ? std::get<fgx::BayesNet>(model.body).variable_count()
            : std::get<fgx::MarkovNet>(model.body).variable_count();
    if (json_mode) {
      json out = {{"schema", 1},
                  {"command", "check"},
                  {"kind", fgx::model_kind_token(model.kind)},
                  {"valid", true},
                  {"variables", vars}};
      std::cout << out.dump() << '\n';
    } else {
      std::cout << "valid " << fgx::model_kind_token(model.kind) << ": " << vars
                << " variables\n";
    }
    return kOk;
  }

  const fgx::FactorGraph& graph = std::get<fgx::FactorGraph>(model.body);
  const fgx::NormalizationReport report = graph.check_local_normalization();
  if (json_mode) {
    json components = json::array();
    for (const fgx::ComponentReport& comp : report.components) {
      components.push_back({{"functions", comp.functions},
                            {"children", comp.child_vars},
                            {"normalizers", comp.normalizers},
                            {"deviation", comp.worst_deviation},
                            {"normalized", comp.normalized}});
    }
    json out = {{"schema", 1},
                {"command", "check"},
                {"kind", "fgx"},
                {"valid", true},
                {"variables", graph.variable_count()},
                {"functions", graph.function_count()},
                {"components", components},
                {"normalized", report.all_normalized},
                {"worst_deviation", report.worst_deviation}};
    std::cout << out.dump() << '\n';
  } else {
    std::cout << "valid fgx: " << graph.variable_count() << " variables, "
              << graph.function_count() << " functions\n";
    int index = 0;
    for (const fgx::ComponentReport& comp : report.components) {
      std::cout << "component " << ++index << ": functions "
                << join(comp.functions, ",") << " children "
                << join(comp.child_vars, ",");
      if (!comp.normalizers.empty()) {
        std::cout << " normalizers " << join(comp.normalizers, ",");
      }
      std::cout << " deviation " << fgx::format_real(comp.worst_deviation)
                << (comp.normalized ? " pass" : " FAIL") << '\n';
    }
    std::cout << "normalization: "
              << (report.all_normalized ? "pass" : "FAIL")
              << " (worst deviation "
              << fgx::format_real(report.worst_deviation) << ")\n";
  }
  return report.all_normalized ? kOk : kSemanticError;
}

int run_stats(const Args& args) {
  if (args.positional.size() > 1) throw UsageError("stats takes at most one FILE");
  const std::string path =
      args.positional.empty() ? "-" : args.positional[0];
  const fgx::ModelFile model = load_model(path);
  const bool json_mode = args.has("--json");

  switch (model.kind) {
    case fgx::ModelKind::kFactorGraph: {
      const fgx::FactorGraph& graph = std::get<fgx::FactorGraph>(model.body);
      const fgx::StructureStats stats = graph.structure_stats();
      if (json_mode) {
        json out = {{"schema", 1},
                    {"command", "stats"},
                    {"kind", "fgx"},
                    {"variables", stats.variables},
                    {"functions", stats.functions},
                    {"parent_in_edges", stats.parent_in_edges},
                    {"child_out_edges", stats.child_out_edges},
                    {"undirected_edges", stats.undirected_edges},
                    {"dashed_edges", stats.dashed_edges},
                    {"total_edges", stats.total_edges()}};
        std::cout << out.dump() << '\n';
      } else {
        std::cout << "kind: fgx\n"
                  << "variables: " << stats.variables << '\n'
                  << "functions: " << stats.functions << '\n'
                  << "parent-in edges: " << stats.parent_in_edges << '\n'
                  << "child-out edges: " << stats.child_out_edges << '\n'
                  << "undirected edges: " << stats.undirected_edges << '\n'
                  << "dashed edges: " << stats.dashed_edges << '\n'
                  << "total edges: " << stats.total_edges() << '\n';
      }
      return kOk;
    }
    case fgx::ModelKind::kBayesNet: {
      const fgx::BayesNet& net = std::get<fgx::BayesNet>(model.body);
      int links = 0;
      for (const fgx::Cpd& cpd : net.cpds()) {
        links += static_cast<int>(cpd.parents.size());
      }
      if (json_mode) {
        json out = {{"schema", 1},
                    {"command", "stats"},
                    {"kind", "bn"},
                    {"variables", net.variable_count()},
                    {"cpds", static_cast<int>(net.cpds().size())},
                    {"parent_links", links}};
        std::cout << out.dump() << '\n';
      } else {
        std::cout << "kind: bn\n"
                  << "variables: " << net.variable_count() << '\n'
                  << "cpds: " << net.cpds().size() << '\n'
                  << "parent links: " << links << '\n';
      }
      return kOk;
    }
    case fgx::ModelKind::kMarkovNet: {
      const fgx::MarkovNet& net = std::get<fgx::MarkovNet>(model.body);
      if (json_mode) {
        json out = {{"schema", 1},
                    {"command", "stats"},
                    {"kind", "mrf"},
                    {"variables", net.variable_count()},
                    {"edges", net.edge_count()},
                    {"potentials", static_cast<int>(net.potentials().size())}};
        std::cout << out.dump() << '\n';
      } else {
        std::cout << "kind: mrf\n"
                  << "variables: " << net.variable_count() << '\n'
                  << "edges: " << net.edge_count() << '\n'
                  << "potentials: " << net.potentials().size() << '\n';
      }
      return kOk;
    }
  }
  return kSemanticError;
}

int run_indep(const Args& args) {
  if (args.positional.size() != 1) throw UsageError("indep takes one FILE");
  if (!args.has("--x") || !args.has("--y")) {
    throw UsageError("indep needs --x and --y");
  }
  const fgx::FactorGraph graph = to_graph(load_model(args.positional[0]));
  fgx::IndependenceQuery query;
  query.x_set = split_names(args.value("--x"));
  query.y_set = split_names(args.value("--y"));
  if (args.has("--given")) query.given_set = split_names(args.value("--given"));

  const fgx::Verdict verdict = fgx::separated(graph, query);
  if (args.has("--json")) {
    json out = {{"schema", 1},
                {"command", "indep"},
                {"separated", verdict.separated},
                {"witness", verdict.witness}};
    std::cout << out.dump() << '\n';
  } else {
    std::cout << (verdict.separated ? "separated" : "not-separated") << '\n';
    if (!verdict.separated) {
      std::cout << join(verdict.witness, " ") << '\n';
    }
  }
  return kOk;
}

int run_convert(const Args& args) {
  if (args.positional.size() != 1) throw UsageError("convert takes one FILE");
  if (!args.has("--to")) throw UsageError("convert needs --to fg|bn|mrf");
  const std::string target = args.value("--to");
  if (target != "fg" && target != "bn" && target != "mrf") {
    throw UsageError("--to must be fg, bn, or mrf");
  }
  const fgx::ModelFile model = load_model(args.positional[0]);

  fgx::ModelFile result = [&]() -> fgx::ModelFile {
    if (target == "fg") {
      return {fgx::ModelKind::kFactorGraph, 1, to_graph(model)};
    }
    if (target == "bn") {
      if (model.kind == fgx::ModelKind::kBayesNet) return model;
      return {fgx::ModelKind::kBayesNet, 1, fgx::fg_to_bn(to_graph(model))};
    }
    if (model.kind == fgx::ModelKind::kMarkovNet) return model;
    return {fgx::ModelKind::kMarkovNet, 1, fgx::fg_to_mrf(to_graph(model))};
  }();

  const std::string text = fgx::serialize_model(result);
  if (args.has("-o")) {
    std::ofstream file(args.value("-o"), std::ios::binary);
    if (!file) {
      throw fgx::Error(fgx::errc::parse_error,
                       "cannot write '" + args.value("-o") + "'");
    }
    file << text;
    if (args.has("--json")) {
      json out = {{"schema", 1},
                  {"command", "convert"},
                  {"to", target},
                  {"written", args.value("-o")}};
      std::cout << out.dump() << '\n';
    }
  } else if (args.has("--json")) {
    json out = {
        {"schema", 1}, {"command", "convert"}, {"to", target}, {"model", text}};
    std::cout << out.dump() << '\n';
  } else {
    std::cout << text;
  }
  return kOk;
}

int run_joint(const Args& args) {
  if (args.positional.size() != 1) throw UsageError("joint takes one FILE");
  const fgx::FactorGraph graph = to_graph(load_model(args.positional[0]));
  fgx::Evidence evidence;
  if (args.has("--evidence")) {
    evidence = parse_evidence(args.value("--evidence"));
  }
  const fgx::FactorTable joint = fgx::joint_enumerate(graph, evidence);

  if (args.has("--json")) {
    std::vector<std::string> vars;
    std::vector<int> cards;
    for (const fgx::Axis& axis : joint.axes()) {
      vars.push_back(axis.name);
      cards.push_back(axis.cardinality);
    }
    json out = {{"schema", 1},
                {"command", "joint"},
                {"vars", vars},
                {"cardinalities", cards},
                {"values", joint.values()}};
    std::cout << out.dump() << '\n';
  } else {
    std::cout << "vars:";
    for (const fgx::Axis& axis : joint.axes()) std::cout << ' ' << axis.name;
    std::cout << '\n';
    std::vector<int> assignment(joint.axes().size(), 0);
    std::size_t flat = 0;
    do {
      for (int state : assignment) std::cout << state << ' ';
      std::cout << fgx::format_real(joint.value_at(flat)) << '\n';
      ++flat;
    } while (fgx::next_assignment(assignment, joint.axes()));
  }
  return kOk;
}

int run_marginal(const Args& args) {
  if (args.positional.size() != 2) {
    throw UsageError("marginal takes FILE and VAR");
  }
  const fgx::FactorGraph graph = to_graph(load_model(args.positional[0]));
  const std::string& var = args.positional[1];
  fgx::Evidence evidence;
  if (args.has("--evidence")) {
    evidence = parse_evidence(args.value("--evidence"));
  }

  fgx::MarginalOptions options;
  if (args.has("--method")) {
    const std::string method = args.value("--method");
    if (method == "enum") {
      options.method = fgx::MarginalMethod::kEnumeration;
    } else if (method == "sumproduct") {
      options.method = fgx::MarginalMethod::kSumProduct;
    } else {
      throw UsageError("--method must be enum or sumproduct");
    }
  }
  options.loopy = args.has("--loopy");
  if (args.has("--max-iters")) {
    try {
      options.max_iters = std::stoi(args.value("--max-iters"));
    } catch (const std::exception&) {
      throw UsageError("--max-iters needs an integer");
    }
    if (options.max_iters < 1) throw UsageError("--max-iters must be positive");
  }
  if (args.has("--damping")) {
    try {
      options.damping = std::stod(args.value("--damping"));
    } catch (const std::exception&) {
      throw UsageError("--damping needs a number");
    }
    if (options.damping < 0.0 || options.damping >= 1.0) {
      throw UsageError("--damping must lie in [0, 1)");
    }
  }

  const bool loopy_run =
      options.method == fgx::MarginalMethod::kSumProduct && options.loopy;
  bool converged = true;
  int sweeps = 0;
  std::vector<double> values;
  if (loopy_run) {
    // Run message passing directly so the convergence flag survives.
    fgx::SumProductOptions sp;
    sp.schedule = fgx::Schedule::kLoopy;
    sp.max_iters = options.max_iters;
    sp.damping = options.damping;
    graph.variable(var);
    const fgx::SumProductResult result =
        fgx::sum_product(graph, evidence, sp);
    converged = result.converged;
    sweeps = result.iterations;
    values = result.beliefs.at(var);
  } else {
    values = fgx::marginal(graph, var, evidence, options);
  }

  if (args.has("--json")) {
    json out = {{"schema", 1},
                {"command", "marginal"},
                {"var", var},
                {"values", values},
                {"method", options.method == fgx::MarginalMethod::kEnumeration
                               ? "enum"
                               : "sumproduct"}};
    if (loopy_run) {
      out["loopy"] = true;
      out["approximate"] = true;
      out["converged"] = converged;
      out["sweeps"] = sweeps;
    }
    std::cout << out.dump() << '\n';
  } else {
    std::vector<std::string> formatted;
    for (double v : values) formatted.push_back(fgx::format_real(v));
    std::cout << join(formatted, " ") << '\n';
    if (loopy_run) {
      std::cout << "note: loopy beliefs are approximate ("
                << (converged ? "settled after " : "still moving after ")
                << sweeps << " sweeps)\n";
    }
  }
  return kOk;
}

int run_blanket(const Args& args) {
  if (args.positional.size() != 2) {
    throw UsageError("blanket takes FILE and VAR");
  }
  const fgx::FactorGraph graph = to_graph(load_model(args.positional[0]));
  const std::set<std::string> blanket =
      fgx::markov_blanket_undirected(graph, args.positional[1]);

  if (args.has("--json")) {
    json out = {{"schema", 1},
                {"command", "blanket"},
                {"var", args.positional[1]},
                {"blanket", blanket}};
    std::cout << out.dump() << '\n';
  } else {
    std::vector<std::string> names(blanket.begin(), blanket.end());
    std::cout << join(names, " ") << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << kUsage;
    return kUsageError;
  }
  const std::string command = argv[1];
  if (command == "help" || command == "--help" || command == "-h") {
    std::cout << kUsage;
    return kOk;
  }

  try {
    if (command == "check") {
      return run_check(parse_args(argc, argv, 2, {}, {"--json"}));
    }
    if (command == "stats") {
      return run_stats(parse_args(argc, argv, 2, {}, {"--json"}));
    }
    if (command == "indep") {
      return run_indep(parse_args(argc, argv, 2, {"--x", "--y", "--given"},
                                  {"--json"}));
    }
    if (command == "convert") {
      return run_convert(parse_args(argc, argv, 2, {"--to", "-o"}, {"--json"}));
    }
    if (command == "joint") {
      return run_joint(parse_args(argc, argv, 2, {"--evidence"}, {"--json"}));
    }
    if (command == "marginal") {
      return run_marginal(parse_args(
          argc, argv, 2, {"--evidence", "--method", "--max-iters", "--damping"},
          {"--loopy", "--json"}));
    }
    if (command == "blanket") {
      return run_blanket(parse_args(argc, argv, 2, {}, {"--json"}));
    }
    std::cerr << "unknown command '" << command << "'\n" << kUsage;
    return kUsageError;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n' << kUsage;
    return kUsageError;
  } catch (const fgx::Error& e) {
    std::cerr << "error: " << fgx::errc_name(e.code()) << ": " << e.what()
              << '\n';
    return e.code() == fgx::errc::parse_error ? kUsageError : kSemanticError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSemanticError;
  }
}
