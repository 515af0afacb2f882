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

#ifndef FGX_TABLE_HPP
#define FGX_TABLE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fgx/errors.hpp"

namespace fgx {

class FactorGraph;  // graph.hpp

// One named, finite-cardinality axis of a factor table.
struct Axis {
  std::string name;
  int cardinality = 0;

  bool operator==(const Axis& other) const = default;
};

// Dense non-negative real table over an ordered list of axes. Values are
// stored row-major with the LAST axis varying fastest; this is the single
// layout used everywhere (memory, files, message vectors).
class FactorTable {
 public:
  // Scalar table holding the single value 1 (the empty product).
  FactorTable();

  // Validates: cardinalities >= 1, distinct axis names, values.size() equal to
  // the product of cardinalities, every value finite and >= 0.
  FactorTable(std::vector<Axis> axes, std::vector<double> values);

  static FactorTable constant(std::vector<Axis> axes, double value);

  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  int rank() const { return static_cast<int>(axes_.size()); }
  bool is_scalar() const { return axes_.empty(); }

  // Index of the named axis, or -1 when absent.
  int axis_index(const std::string& name) const;
  bool has_axis(const std::string& name) const { return axis_index(name) >= 0; }

  // Per-axis multi-index <-> flat offset (row-major, last axis fastest).
  std::size_t flat_index(std::span<const int> assignment) const;
  double at(std::span<const int> assignment) const;

  double value_at(std::size_t flat) const { return values_[flat]; }

  bool operator==(const FactorTable& other) const = default;

 private:
  std::vector<Axis> axes_;
  std::vector<double> values_;
};

// Sum with pairwise (tree) accumulation; keeps rounding error small enough
// for the 1e-9 normalization tolerances used throughout.
double pairwise_sum(std::span<const double> values);

// Steps a multi-index odometer over the given cardinalities, last axis
// fastest. Returns false once the index wraps back to all zeros.
bool next_assignment(std::vector<int>& assignment, std::span<const Axis> axes);

// Product over the union of input axes, ordered by first appearance.
// The empty list yields the scalar table 1. Axes sharing a name across
// inputs must agree on cardinality (cardinality_mismatch otherwise).
FactorTable product(std::span<const FactorTable> tables);
FactorTable product(const FactorTable& a, const FactorTable& b);

// Sums out the named axes; remaining axes keep their relative order.
// Unknown names raise unknown_axis.
FactorTable marginalize(const FactorTable& table,
                        const std::vector<std::string>& out_vars);

struct NormalizationCheck {
  bool normalized = false;
  // Worst |sum - 1| over all configurations of the non-summed axes.
  double worst_deviation = 0.0;
};

// True iff, for every configuration of the remaining axes, the sum over
// `vars` lies within tol of 1.
NormalizationCheck is_normalized_over(const FactorTable& table,
                                      const std::vector<std::string>& vars,
                                      double tol);

// Permutes axes into the given order (must name each existing axis once).
FactorTable reorder_axes(const FactorTable& table,
                         const std::vector<std::string>& order);

// Total mass (pairwise sum over all entries).
double total_mass(const FactorTable& table);

// The global constant making the product of a graph's functions a
// distribution: 1 / sum over all joint configurations of the factor product.
// Raises zero_mass when the product sums to zero.
double normalization_constant(const FactorGraph& graph);

}  // namespace fgx

#endif  // FGX_TABLE_HPP
