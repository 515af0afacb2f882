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

#ifndef FGX_IO_HPP_
#define FGX_IO_HPP_

#include <string>
#include <variant>

#include "fgx/bayesnet.hpp"
#include "fgx/graph.hpp"
#include "fgx/markovnet.hpp"

namespace fgx {

enum class ModelKind { kFactorGraph, kBayesNet, kMarkovNet };

// The header token for each kind: "fgx", "bn", "mrf".
const char* model_kind_token(ModelKind kind);

struct ModelFile {
  ModelKind kind;
  int version = 1;
  std::variant<FactorGraph, BayesNet, MarkovNet> body;
};

// Parses the line-oriented text formats. `#` starts a comment, tokens are
// whitespace-separated, declaration order is preserved. Variables must be
// declared before a block refers to them. Malformed syntax (including a
// table whose length does not match its scope) raises parse_error with the
// line number; model validation errors keep their own codes, prefixed with a
// location when one is known.
ModelFile parse_model(const std::string& text);

// Canonical text: header, variables, then blocks in declaration order, one
// token group per line, block bodies indented two spaces, reals printed as
// the shortest decimal that parses back to the same double. Re-parsing
// yields a structurally equal model; serializing again is byte-identical.
std::string serialize_model(const ModelFile& model);

// Shortest round-tripping decimal form of a double.
std::string format_real(double value);

}  // namespace fgx

#endif  // FGX_IO_HPP_
