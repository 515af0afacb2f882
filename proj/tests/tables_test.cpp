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
#include <vector>

#include "doctest.h"
#include "fgx/graph.hpp"
#include "fgx/table.hpp"
#include "support/checks.hpp"
#include "support/generators.hpp"

using namespace fgx;
using fgx::testing::random_table;
using fgx::testing::tables_close;
using fgx::testing::thrown_code;

namespace {

FactorTable xy_counts() {
  return FactorTable({{"x", 2}, {"y", 2}}, {1.0, 2.0, 3.0, 4.0});
}

}  // namespace

TEST_CASE("default table is the scalar one") {
  FactorTable t;
  CHECK(t.is_scalar());
  CHECK(t.size() == 1);
  CHECK(t.values()[0] == 1.0);
}

TEST_CASE("constructor validates shape and values") {
  CHECK(thrown_code([] { FactorTable({{"x", 0}}, {}); }) ==
        errc::bad_cardinality);
  CHECK(thrown_code([] { FactorTable({{"x", 2}, {"x", 2}}, {1, 1, 1, 1}); }) ==
        errc::duplicate_name);
  CHECK(thrown_code([] { FactorTable({{"x", 2}}, {1.0, 2.0, 3.0}); }) ==
        errc::table_shape_mismatch);
  CHECK(thrown_code([] { FactorTable({{"x", 2}}, {1.0, -0.5}); }) ==
        errc::negative_or_non_finite_value);
  CHECK(thrown_code([] {
          FactorTable({{"x", 2}}, {1.0, std::nan("")});
        }) == errc::negative_or_non_finite_value);
}

TEST_CASE("layout is row-major with the last axis fastest") {
  FactorTable t = xy_counts();
  CHECK(t.at(std::vector<int>{0, 0}) == 1.0);
  CHECK(t.at(std::vector<int>{0, 1}) == 2.0);
  CHECK(t.at(std::vector<int>{1, 0}) == 3.0);
  CHECK(t.at(std::vector<int>{1, 1}) == 4.0);
  CHECK(t.flat_index(std::vector<int>{1, 0}) == 2);
}

TEST_CASE("product of nothing is the scalar one") {
  FactorTable p = product(std::vector<FactorTable>{});
  CHECK(p.is_scalar());
  CHECK(p.values()[0] == 1.0);
}

TEST_CASE("product with a scalar is the identity") {
  FactorTable t = xy_counts();
  CHECK(product(t, FactorTable()) == t);
  CHECK(product(FactorTable(), t) == t);
}

TEST_CASE("product on shared axes is elementwise") {
  FactorTable a = xy_counts();
  FactorTable b({{"x", 2}, {"y", 2}}, {2.0, 2.0, 0.5, 1.0});
  FactorTable p = product(a, b);
  CHECK(p.values() == std::vector<double>{2.0, 4.0, 1.5, 4.0});
}

TEST_CASE("product on disjoint axes is the outer product") {
  FactorTable a({{"x", 2}}, {2.0, 3.0});
  FactorTable b({{"y", 2}}, {5.0, 7.0});
  FactorTable p = product(a, b);
  REQUIRE(p.axes() == std::vector<Axis>{{"x", 2}, {"y", 2}});
  CHECK(p.values() == std::vector<double>{10.0, 14.0, 15.0, 21.0});
}

TEST_CASE("product orders the union of axes by first appearance") {
  FactorTable a({{"x", 2}, {"y", 2}}, {1, 1, 1, 1});
  FactorTable b({{"y", 2}, {"z", 3}}, {1, 1, 1, 1, 1, 1});
  FactorTable p = product(a, b);
  CHECK(p.axes() == std::vector<Axis>{{"x", 2}, {"y", 2}, {"z", 3}});
  CHECK(p.size() == 12);
}

TEST_CASE("product rejects cardinality clashes") {
  FactorTable a({{"x", 2}}, {1, 1});
  FactorTable b({{"x", 3}}, {1, 1, 1});
  CHECK(thrown_code([&] { product(a, b); }) == errc::cardinality_mismatch);
}

TEST_CASE("marginalize sums out the named axes") {
  FactorTable t = xy_counts();
  FactorTable mx = marginalize(t, {"y"});
  REQUIRE(mx.axes() == std::vector<Axis>{{"x", 2}});
  CHECK(mx.values() == std::vector<double>{3.0, 7.0});
  FactorTable my = marginalize(t, {"x"});
  CHECK(my.values() == std::vector<double>{4.0, 6.0});
  FactorTable all = marginalize(t, {"x", "y"});
  CHECK(all.is_scalar());
  CHECK(all.values()[0] == 10.0);
  CHECK(thrown_code([&] { marginalize(t, {"w"}); }) == errc::unknown_axis);
}

TEST_CASE("marginalize keeps the relative order of the remaining axes") {
  std::mt19937 rng(11);
  FactorTable t = random_table(rng, {{"a", 2}, {"b", 3}, {"c", 2}});
  FactorTable m = marginalize(t, {"b"});
  CHECK(m.axes() == std::vector<Axis>{{"a", 2}, {"c", 2}});
}

TEST_CASE("marginalize preserves total mass") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    FactorTable t = random_table(rng, {{"a", 3}, {"b", 2}, {"c", 2}});
    CHECK(std::fabs(total_mass(marginalize(t, {"b"})) - total_mass(t)) <
          1e-12);
  }
}

TEST_CASE("product is commutative and associative") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    FactorTable a = random_table(rng, {{"x", 2}, {"y", 3}});
    FactorTable b = random_table(rng, {{"y", 3}, {"z", 2}});
    FactorTable c = random_table(rng, {{"x", 2}});

    FactorTable ab = product(a, b);
    FactorTable ba = product(b, a);
    std::vector<std::string> order;
    for (const Axis& axis : ab.axes()) order.push_back(axis.name);
    CHECK(tables_close(ab, reorder_axes(ba, order), 1e-12));

    FactorTable left = product(product(a, b), c);
    FactorTable right = product(a, product(b, c));
    std::vector<std::string> left_order;
    for (const Axis& axis : left.axes()) left_order.push_back(axis.name);
    CHECK(tables_close(left, reorder_axes(right, left_order), 1e-12));
  }
}

TEST_CASE("marginalizing a factor that lacks the axis distributes") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    FactorTable a = random_table(rng, {{"x", 2}});
    FactorTable b = random_table(rng, {{"x", 2}, {"y", 3}});
    FactorTable lhs = marginalize(product(a, b), {"y"});
    FactorTable rhs = product(a, marginalize(b, {"y"}));
    CHECK(tables_close(lhs, rhs, 1e-12));
  }
}

TEST_CASE("normalization check reports the worst row deviation") {
  NormalizationCheck bad = is_normalized_over(xy_counts(), {"y"}, 1e-9);
  CHECK_FALSE(bad.normalized);
  CHECK(bad.worst_deviation == doctest::Approx(6.0));

  FactorTable ok({{"x", 2}, {"y", 2}}, {0.25, 0.75, 0.5, 0.5});
  NormalizationCheck good = is_normalized_over(ok, {"y"}, 1e-9);
  CHECK(good.normalized);
  CHECK(good.worst_deviation <= 1e-15);
}

TEST_CASE("reorder_axes permutes consistently") {
  std::mt19937 rng(43);
  FactorTable t = random_table(rng, {{"a", 2}, {"b", 3}, {"c", 2}});
  FactorTable r = reorder_axes(t, {"c", "a", "b"});
  REQUIRE(r.axes() == std::vector<Axis>{{"c", 2}, {"a", 2}, {"b", 3}});
  for (int ia = 0; ia < 2; ++ia) {
    for (int ib = 0; ib < 3; ++ib) {
      for (int ic = 0; ic < 2; ++ic) {
        CHECK(t.at(std::vector<int>{ia, ib, ic}) ==
              r.at(std::vector<int>{ic, ia, ib}));
      }
    }
  }
  CHECK(reorder_axes(t, {"a", "b", "c"}) == t);
  CHECK(thrown_code([&] { reorder_axes(t, {"a", "b"}); }) ==
        errc::unknown_axis);
}

TEST_CASE("pairwise_sum matches naive summation") {
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::vector<double> values(1023);
  double naive = 0.0;
  for (double& v : values) {
    v = value(rng);
    naive += v;
  }
  CHECK(std::fabs(pairwise_sum(values) - naive) < 1e-9);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{2.5}) == 2.5);
}

TEST_CASE("global constant inverts the factor mass") {
  FactorGraph g = build_and_validate(
      {{"x", 2}},
      [] {
        FunctionSpec f;
        f.name = "f";
        f.scope = {"x"};
        f.undirected_vars = {"x"};
        f.table = FactorTable({{"x", 2}}, {2.0, 2.0});
        std::vector<FunctionSpec> fns;
        fns.push_back(std::move(f));
        return fns;
      }());
  CHECK(normalization_constant(g) == doctest::Approx(0.25));
}

TEST_CASE("global constant counts variables outside every scope") {
  FactorGraph g = build_and_validate(
      {{"x", 2}, {"y", 3}},
      [] {
        FunctionSpec f;
        f.name = "f";
        f.scope = {"x"};
        f.undirected_vars = {"x"};
        f.table = FactorTable({{"x", 2}}, {2.0, 2.0});
        std::vector<FunctionSpec> fns;
        fns.push_back(std::move(f));
        return fns;
      }());
  CHECK(normalization_constant(g) == doctest::Approx(1.0 / 12.0));
}

TEST_CASE("zero factor mass has no normalization constant") {
  FactorGraph g = build_and_validate(
      {{"x", 2}},
      [] {
        FunctionSpec f;
        f.name = "f";
        f.scope = {"x"};
        f.undirected_vars = {"x"};
        f.table = FactorTable({{"x", 2}}, {0.0, 0.0});
        std::vector<FunctionSpec> fns;
        fns.push_back(std::move(f));
        return fns;
      }());
  CHECK(thrown_code([&] { normalization_constant(g); }) == errc::zero_mass);
}
