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

#include <charconv>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>

#include "doctest.h"
#include "fgx/io.hpp"
#include "support/checks.hpp"
#include "support/generators.hpp"

using namespace fgx;
using fgx::testing::bns_equal;
using fgx::testing::graphs_equal;
using fgx::testing::mrfs_equal;
using fgx::testing::thrown_code;

namespace {

struct Thrown {
  errc code;
  std::string message;
};

template <typename Fn>
std::optional<Thrown> caught(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const Error& error) {
    return Thrown{error.code(), error.what()};
  }
  return std::nullopt;
}

bool mentions(const std::optional<Thrown>& thrown, errc code,
              const std::string& fragment) {
  return thrown && thrown->code == code &&
         thrown->message.find(fragment) != std::string::npos;
}

}  // namespace

TEST_CASE("factor graph text parses with comments and loose spacing") {
  const std::string text =
      "# a small directed pair\n"
      "fgx 1\n"
      "\n"
      "var x 2\n"
      "var y   3\n"
      "factor f\n"
      "  scope x y\n"
      "  parents x\n"
      "  children y\n"
      "  table 0.5 0.25 0.25   0.1 0.2 0.7\n"
      "end\n";
  ModelFile file = parse_model(text);
  REQUIRE(file.kind == ModelKind::kFactorGraph);
  const FactorGraph& g = std::get<FactorGraph>(file.body);
  REQUIRE(g.variable_count() == 2);
  CHECK(g.variables()[1].cardinality == 3);
  REQUIRE(g.function_count() == 1);
  const FunctionNode& f = g.functions()[0];
  CHECK(f.parent_vars == std::vector<std::string>{"x"});
  CHECK(f.child_vars == std::vector<std::string>{"y"});
  CHECK(f.table.at(std::vector<int>{1, 2}) == 0.7);
}

TEST_CASE("scope entries outside every kind list parse as undirected") {
  const std::string text =
      "fgx 1\n"
      "var a 2\n"
      "var b 2\n"
      "factor f\n"
      "  scope a b\n"
      "  parents a\n"
      "  table 1 1 1 1\n"
      "end\n";
  const FactorGraph g = std::get<FactorGraph>(parse_model(text).body);
  CHECK(g.functions()[0].undirected_vars == std::vector<std::string>{"b"});
}

TEST_CASE("dashed targets parse from the normalizes entry") {
  const std::string text =
      "fgx 1\n"
      "var a 2\n"
      "var z 2\n"
      "factor n\n"
      "  scope a\n"
      "  parents a\n"
      "  normalizes z\n"
      "  table 2 4\n"
      "end\n";
  const FactorGraph g = std::get<FactorGraph>(parse_model(text).body);
  CHECK(g.functions()[0].dashed_targets == std::vector<std::string>{"z"});
}

TEST_CASE("net text round trips through the canonical form") {
  const std::string text =
      "bn 1\n"
      "var x 2\n"
      "var y 2\n"
      "cpd x\n"
      "  table 0.3 0.7\n"
      "end\n"
      "cpd y | x\n"
      "  table 0.9 0.1 0.2 0.8\n"
      "end\n";
  ModelFile file = parse_model(text);
  REQUIRE(file.kind == ModelKind::kBayesNet);
  CHECK(serialize_model(file) == text);
}

TEST_CASE("undirected text round trips through the canonical form") {
  const std::string text =
      "mrf 1\n"
      "var x 2\n"
      "var y 2\n"
      "edge x y\n"
      "potential x y\n"
      "  table 1 2 3 4\n"
      "end\n";
  ModelFile file = parse_model(text);
  REQUIRE(file.kind == ModelKind::kMarkovNet);
  CHECK(serialize_model(file) == text);
}

TEST_CASE("serialization is a fixpoint after one pass") {
  std::mt19937 rng(401);
  for (int trial = 0; trial < 10; ++trial) {
    ModelFile fg{ModelKind::kFactorGraph, 1,
                 fgx::testing::random_hybrid_fg(rng, 5, 3)};
    std::string once = serialize_model(fg);
    CHECK(serialize_model(parse_model(once)) == once);

    ModelFile bn{ModelKind::kBayesNet, 1, fgx::testing::random_bn(rng, 6, 3)};
    once = serialize_model(bn);
    CHECK(serialize_model(parse_model(once)) == once);

    ModelFile mrf{ModelKind::kMarkovNet, 1,
                  fgx::testing::random_mrf(rng, 6, 3)};
    once = serialize_model(mrf);
    CHECK(serialize_model(parse_model(once)) == once);
  }
}

TEST_CASE("parsing the canonical form rebuilds the same model") {
  std::mt19937 rng(409);
  for (int trial = 0; trial < 10; ++trial) {
    FactorGraph g = fgx::testing::random_tree_fg(rng, 7, 3);
    ModelFile round =
        parse_model(serialize_model(ModelFile{ModelKind::kFactorGraph, 1, g}));
    CHECK(graphs_equal(g, std::get<FactorGraph>(round.body)));

    BayesNet bn = fgx::testing::random_bn(rng, 5, 3);
    round = parse_model(serialize_model(ModelFile{ModelKind::kBayesNet, 1, bn}));
    CHECK(bns_equal(bn, std::get<BayesNet>(round.body)));

    MarkovNet mrf = fgx::testing::random_mrf(rng, 5, 2);
    round =
        parse_model(serialize_model(ModelFile{ModelKind::kMarkovNet, 1, mrf}));
    CHECK(mrfs_equal(mrf, std::get<MarkovNet>(round.body)));
  }
}

TEST_CASE("malformed headers are parse errors") {
  CHECK(mentions(caught([] { parse_model(""); }), errc::parse_error, "header"));
  CHECK(mentions(caught([] { parse_model("fgx\n"); }), errc::parse_error,
                 "line 1"));
  CHECK(mentions(caught([] { parse_model("fgx 2\n"); }), errc::parse_error,
                 "version"));
  CHECK(mentions(caught([] { parse_model("dag 1\n"); }), errc::parse_error,
                 "kind"));
}

TEST_CASE("structural typos are parse errors with line numbers") {
  CHECK(mentions(caught([] { parse_model("fgx 1\nvar x\n"); }),
                 errc::parse_error, "line 2"));
  CHECK(mentions(caught([] { parse_model("fgx 1\nvar x two\n"); }),
                 errc::parse_error, "line 2"));
  CHECK(mentions(
      caught([] {
        parse_model("fgx 1\nvar x 2\nfactor f\n  scope x\n  table 1 1\n");
      }),
      errc::parse_error, "never ends"));
  CHECK(mentions(
      caught([] {
        parse_model("fgx 1\nvar x 2\nfactor f\n  table 1 1\nend\n");
      }),
      errc::parse_error, "scope"));
  CHECK(mentions(
      caught([] {
        parse_model("fgx 1\nvar x 2\nfactor f\n  scope x\nend\n");
      }),
      errc::parse_error, "table"));
  CHECK(mentions(
      caught([] {
        parse_model(
            "fgx 1\nvar x 2\nfactor f\n  scope x\n  wings 1\n  table 1 1\nend\n");
      }),
      errc::parse_error, "line 5"));
  CHECK(mentions(
      caught([] {
        parse_model(
            "fgx 1\nvar x 2\nfactor f\n  scope x\n  scope x\n  table 1 1\nend\n");
      }),
      errc::parse_error, "line 5"));
  CHECK(mentions(caught([] { parse_model("bn 1\nvar x 2\ncpd x |\n"); }),
                 errc::parse_error, "line 3"));
}

TEST_CASE("a table of the wrong length is a parse error at its line") {
  std::optional<Thrown> thrown = caught([] {
    parse_model("fgx 1\nvar x 2\nvar y 2\nfactor f\n  scope x y\n  table 1 2 3\nend\n");
  });
  CHECK(mentions(thrown, errc::parse_error, "line 6"));
}

TEST_CASE("variables must be declared before use") {
  std::optional<Thrown> thrown = caught([] {
    parse_model("fgx 1\nfactor f\n  scope x\n  table 1 1\nend\nvar x 2\n");
  });
  CHECK(mentions(thrown, errc::unknown_variable, "line 3"));
}

TEST_CASE("validation failures keep their own codes") {
  // Duplicate variable: caught by model validation, not the tokenizer.
  CHECK(thrown_code([] { parse_model("fgx 1\nvar x 2\nvar x 2\n"); }) ==
        errc::duplicate_name);
  CHECK(thrown_code([] {
          parse_model(
              "fgx 1\nvar x 2\nfactor f\n  scope x\n  table 1 -1\nend\n");
        }) == errc::negative_or_non_finite_value);
}

TEST_CASE("reals print as the shortest form that reads back") {
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(0.1) == "0.1");

  std::mt19937 rng(419);
  std::uniform_real_distribution<double> value(0.0, 4.0);
  for (int trial = 0; trial < 1000; ++trial) {
    double x = value(rng);
    std::string text = format_real(x);
    double back = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), back);
    REQUIRE(ec == std::errc());
    CHECK(ptr == text.data() + text.size());
    CHECK(back == x);
  }
}

TEST_CASE("kind tokens match the headers") {
  CHECK(std::string(model_kind_token(ModelKind::kFactorGraph)) == "fgx");
  CHECK(std::string(model_kind_token(ModelKind::kBayesNet)) == "bn");
  CHECK(std::string(model_kind_token(ModelKind::kMarkovNet)) == "mrf");
}
