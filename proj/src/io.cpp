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

#include "fgx/io.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <utility>

#include "fgx/errors.hpp"

namespace fgx {

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream stream(text);
  std::string raw;
  int number = 0;
  while (std::getline(stream, raw)) {
    ++number;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    Line line;
    line.number = number;
    std::istringstream words(raw);
    std::string token;
    while (words >> token) line.tokens.push_back(token);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail_parse(int line, const std::string& message) {
  fail(errc::parse_error, "line " + std::to_string(line) + ": " + message);
}

// Reruns validation failures with the line attached.
template <typename Fn>
auto at_line(int line, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == errc::parse_error) throw;
    throw Error(e.code(),
                "line " + std::to_string(line) + ": " + std::string(e.what()));
  }
}

int parse_int(const Line& line, const std::string& token) {
  int value = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    fail_parse(line.number, "expected an integer, got '" + token + "'");
  }
  return value;
}

double parse_real(const Line& line, const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    fail_parse(line.number, "expected a number, got '" + token + "'");
  }
  return value;
}

// Shared declaration bookkeeping. Blocks may only name declared variables.
class Declarations {
 public:
  void declare(const Line& line) {
    if (line.tokens.size() != 3) {
      fail_parse(line.number, "expected 'var NAME CARDINALITY'");
    }
    const int card = parse_int(line, line.tokens[2]);
    at_line(line.number, [&] {
      if (variables_.count(line.tokens[1])) {
        fail(errc::duplicate_name,
             "duplicate variable name '" + line.tokens[1] + "'");
      }
      return 0;
    });
    variables_.emplace(line.tokens[1], card);
    ordered_.push_back({line.tokens[1], card});
  }

  int cardinality(int line, const std::string& name) const {
    auto it = variables_.find(name);
    if (it == variables_.end()) {
      throw Error(errc::unknown_variable,
                  "line " + std::to_string(line) + ": variable '" + name +
                      "' is not declared");
    }
    return it->second;
  }

  std::vector<Axis> axes_for(int line,
                             const std::vector<std::string>& scope) const {
    std::vector<Axis> axes;
    axes.reserve(scope.size());
    for (const std::string& name : scope) {
      axes.push_back({name, cardinality(line, name)});
    }
    return axes;
  }

  const std::vector<Variable>& ordered() const { return ordered_; }

 private:
  std::map<std::string, int> variables_;
  std::vector<Variable> ordered_;
};

// One keyword line inside a block, recorded at most once.
struct Field {
  int line = 0;
  std::vector<std::string> tokens;  // keyword stripped
  bool present = false;
};

void record_field(Field& field, const Line& line) {
  if (field.present) {
    fail_parse(line.number, "'" + line.tokens[0] + "' given twice in one block");
  }
  if (line.tokens.size() < 2) {
    fail_parse(line.number, "'" + line.tokens[0] + "' needs at least one entry");
  }
  field.present = true;
  field.line = line.number;
  field.tokens.assign(line.tokens.begin() + 1, line.tokens.end());
}

// Builds the table for a block: axes from the scope, values from the table
// field, with the length checked against the scope cardinalities.
FactorTable build_table(const Declarations& decl,
                        const std::vector<std::string>& scope, int scope_line,
                        const Field& table) {
  const std::vector<Axis> axes = decl.axes_for(scope_line, scope);
  std::size_t expected = 1;
  for (const Axis& axis : axes) {
    expected *= static_cast<std::size_t>(axis.cardinality);
  }
  if (table.tokens.size() != expected) {
    fail_parse(table.line, "table has " + std::to_string(table.tokens.size()) +
                               " values, the scope needs " +
                               std::to_string(expected));
  }
  std::vector<double> values;
  values.reserve(table.tokens.size());
  Line value_line{table.line, {}};
  for (const std::string& token : table.tokens) {
    values.push_back(parse_real(value_line, token));
  }
  return at_line(table.line,
                 [&] { return FactorTable(axes, std::move(values)); });
}

FactorGraph parse_fgx(const std::vector<Line>& lines, std::size_t i) {
  Declarations decl;
  std::vector<FunctionSpec> functions;
  while (i < lines.size()) {
    const Line& line = lines[i];
    const std::string& head = line.tokens[0];
    if (head == "var") {
      decl.declare(line);
      ++i;
      continue;
    }
    if (head != "factor") {
      fail_parse(line.number, "expected 'var' or 'factor', got '" + head + "'");
    }
    if (line.tokens.size() != 2) {
      fail_parse(line.number, "expected 'factor NAME'");
    }

    FunctionSpec spec;
    spec.name = line.tokens[1];
    Field scope, parents, children, undirected, normalizes, table;
    ++i;
    bool closed = false;
    while (i < lines.size()) {
      const Line& body = lines[i];
      const std::string& key = body.tokens[0];
      if (key == "end") {
        if (body.tokens.size() != 1) {
          fail_parse(body.number, "'end' takes nothing after it");
        }
        closed = true;
        ++i;
        break;
      }
      if (key == "scope") {
        record_field(scope, body);
      } else if (key == "parents") {
        record_field(parents, body);
      } else if (key == "children") {
        record_field(children, body);
      } else if (key == "undirected") {
        record_field(undirected, body);
      } else if (key == "normalizes") {
        record_field(normalizes, body);
      } else if (key == "table") {
        record_field(table, body);
      } else {
        fail_parse(body.number, "unknown factor entry '" + key + "'");
      }
      ++i;
    }
    if (!closed) {
      fail_parse(lines.back().number, "factor '" + spec.name + "' never ends");
    }
    if (!scope.present) {
      fail_parse(line.number, "factor '" + spec.name + "' has no scope");
    }
    if (!table.present) {
      fail_parse(line.number, "factor '" + spec.name + "' has no table");
    }
    spec.scope = scope.tokens;
    spec.parent_vars = parents.tokens;
    spec.child_vars = children.tokens;
    spec.undirected_vars = undirected.tokens;
    spec.dashed_targets = normalizes.tokens;
    for (const std::string& name : spec.dashed_targets) {
      decl.cardinality(normalizes.line, name);
    }
    spec.table = build_table(decl, spec.scope, scope.line, table);
    functions.push_back(std::move(spec));
  }
  return build_and_validate(decl.ordered(), std::move(functions));
}

BayesNet parse_bn(const std::vector<Line>& lines, std::size_t i) {
  Declarations decl;
  std::vector<Cpd> cpds;
  while (i < lines.size()) {
    const Line& line = lines[i];
    const std::string& head = line.tokens[0];
    if (head == "var") {
      decl.declare(line);
      ++i;
      continue;
    }
    if (head != "cpd") {
      fail_parse(line.number, "expected 'var' or 'cpd', got '" + head + "'");
    }
    if (line.tokens.size() < 2) {
      fail_parse(line.number, "expected 'cpd CHILD [| PARENT...]'");
    }
    Cpd cpd;
    cpd.child = line.tokens[1];
    if (line.tokens.size() > 2) {
      if (line.tokens[2] != "|" || line.tokens.size() == 3) {
        fail_parse(line.number, "parents must follow a '|'");
      }
      cpd.parents.assign(line.tokens.begin() + 3, line.tokens.end());
    }

    Field table;
    ++i;
    bool closed = false;
    while (i < lines.size()) {
      const Line& body = lines[i];
      if (body.tokens[0] == "end") {
        if (body.tokens.size() != 1) {
          fail_parse(body.number, "'end' takes nothing after it");
        }
        closed = true;
        ++i;
        break;
      }
      if (body.tokens[0] != "table") {
        fail_parse(body.number,
                   "unknown cpd entry '" + body.tokens[0] + "'");
      }
      record_field(table, body);
      ++i;
    }
    if (!closed) {
      fail_parse(lines.back().number, "cpd '" + cpd.child + "' never ends");
    }
    if (!table.present) {
      fail_parse(line.number, "cpd '" + cpd.child + "' has no table");
    }
    std::vector<std::string> scope = cpd.parents;
    scope.push_back(cpd.child);
    cpd.table = build_table(decl, scope, line.number, table);
    cpds.push_back(std::move(cpd));
  }
  return BayesNet(decl.ordered(), std::move(cpds));
}

MarkovNet parse_mrf(const std::vector<Line>& lines, std::size_t i) {
  Declarations decl;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<Potential> potentials;
  while (i < lines.size()) {
    const Line& line = lines[i];
    const std::string& head = line.tokens[0];
    if (head == "var") {
      decl.declare(line);
      ++i;
      continue;
    }
    if (head == "edge") {
      if (line.tokens.size() != 3) {
        fail_parse(line.number, "expected 'edge A B'");
      }
      decl.cardinality(line.number, line.tokens[1]);
      decl.cardinality(line.number, line.tokens[2]);
      edges.push_back({line.tokens[1], line.tokens[2]});
      ++i;
      continue;
    }
    if (head != "potential") {
      fail_parse(line.number,
                 "expected 'var', 'edge', or 'potential', got '" + head + "'");
    }
    if (line.tokens.size() < 2) {
      fail_parse(line.number, "expected 'potential VAR...'");
    }
    Potential pot;
    pot.scope.assign(line.tokens.begin() + 1, line.tokens.end());

    Field table;
    ++i;
    bool closed = false;
    while (i < lines.size()) {
      const Line& body = lines[i];
      if (body.tokens[0] == "end") {
        if (body.tokens.size() != 1) {
          fail_parse(body.number, "'end' takes nothing after it");
        }
        closed = true;
        ++i;
        break;
      }
      if (body.tokens[0] != "table") {
        fail_parse(body.number,
                   "unknown potential entry '" + body.tokens[0] + "'");
      }
      record_field(table, body);
      ++i;
    }
    if (!closed) {
      fail_parse(lines.back().number, "potential block never ends");
    }
    if (!table.present) {
      fail_parse(line.number, "potential block has no table");
    }
    pot.table = build_table(decl, pot.scope, line.number, table);
    potentials.push_back(std::move(pot));
  }
  return MarkovNet(decl.ordered(), std::move(edges), std::move(potentials));
}

void append_names(std::string& out, const char* keyword,
                  const std::vector<std::string>& names) {
  if (names.empty()) return;
  out += "  ";
  out += keyword;
  for (const std::string& name : names) {
    out += ' ';
    out += name;
  }
  out += '\n';
}

void append_table(std::string& out, const FactorTable& table) {
  out += "  table";
  for (double value : table.values()) {
    out += ' ';
    out += format_real(value);
  }
  out += '\n';
}

void append_vars(std::string& out, const std::vector<Variable>& variables) {
  for (const Variable& v : variables) {
    out += "var " + v.name + ' ' + std::to_string(v.cardinality) + '\n';
  }
}

}  // namespace

const char* model_kind_token(ModelKind kind) {
  switch (kind) {
    case ModelKind::kFactorGraph:
      return "fgx";
    case ModelKind::kBayesNet:
      return "bn";
    case ModelKind::kMarkovNet:
      return "mrf";
  }
  return "?";
}

ModelFile parse_model(const std::string& text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) fail_parse(1, "missing header");
  const Line& header = lines[0];
  if (header.tokens.size() != 2) {
    fail_parse(header.number, "header must be 'fgx 1', 'bn 1', or 'mrf 1'");
  }
  const int version = parse_int(header, header.tokens[1]);
  if (version != 1) {
    fail_parse(header.number,
               "unsupported version " + std::to_string(version));
  }
  const std::string& kind = header.tokens[0];
  if (kind == "fgx") {
    return ModelFile{ModelKind::kFactorGraph, version, parse_fgx(lines, 1)};
  }
  if (kind == "bn") {
    return ModelFile{ModelKind::kBayesNet, version, parse_bn(lines, 1)};
  }
  if (kind == "mrf") {
    return ModelFile{ModelKind::kMarkovNet, version, parse_mrf(lines, 1)};
  }
  fail_parse(header.number, "unknown model kind '" + kind + "'");
}

std::string serialize_model(const ModelFile& model) {
  std::string out;
  out += model_kind_token(model.kind);
  out += ' ' + std::to_string(model.version) + '\n';

  switch (model.kind) {
    case ModelKind::kFactorGraph: {
      const FactorGraph& graph = std::get<FactorGraph>(model.body);
      append_vars(out, graph.variables());
      for (const FunctionNode& fn : graph.functions()) {
        out += "factor " + fn.name + '\n';
        append_names(out, "scope", fn.scope);
        append_names(out, "parents", fn.parent_vars);
        append_names(out, "children", fn.child_vars);
        append_names(out, "undirected", fn.undirected_vars);
        append_names(out, "normalizes", fn.dashed_targets);
        append_table(out, fn.table);
        out += "end\n";
      }
      break;
    }
    case ModelKind::kBayesNet: {
      const BayesNet& net = std::get<BayesNet>(model.body);
      append_vars(out, net.variables());
      for (const Cpd& cpd : net.cpds()) {
        out += "cpd " + cpd.child;
        if (!cpd.parents.empty()) {
          out += " |";
          for (const std::string& parent : cpd.parents) out += ' ' + parent;
        }
        out += '\n';
        append_table(out, cpd.table);
        out += "end\n";
      }
      break;
    }
    case ModelKind::kMarkovNet: {
      const MarkovNet& net = std::get<MarkovNet>(model.body);
      append_vars(out, net.variables());
      for (const auto& [a, b] : net.edges()) {
        out += "edge " + a + ' ' + b + '\n';
      }
      for (const Potential& pot : net.potentials()) {
        out += "potential";
        for (const std::string& name : pot.scope) out += ' ' + name;
        out += '\n';
        append_table(out, pot.table);
        out += "end\n";
      }
      break;
    }
  }
  return out;
}

std::string format_real(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace fgx
