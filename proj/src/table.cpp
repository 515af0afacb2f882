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

#include "fgx/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include "fgx/graph.hpp"

namespace fgx {

namespace {

std::size_t checked_size(const std::vector<Axis>& axes) {
  std::size_t n = 1;
  for (const Axis& axis : axes) {
    if (axis.name.empty()) {
      fail(errc::unknown_axis, "axis with empty name");
    }
    if (axis.cardinality < 1) {
      fail(errc::bad_cardinality,
           "axis '" + axis.name + "' has cardinality " +
               std::to_string(axis.cardinality) + "; must be >= 1");
    }
    n *= static_cast<std::size_t>(axis.cardinality);
  }
  for (std::size_t i = 0; i < axes.size(); ++i) {
    for (std::size_t j = i + 1; j < axes.size(); ++j) {
      if (axes[i].name == axes[j].name) {
        fail(errc::duplicate_name,
             "axis '" + axes[i].name + "' appears twice");
      }
    }
  }
  return n;
}

}  // namespace

FactorTable::FactorTable() : axes_(), values_{1.0} {}

FactorTable::FactorTable(std::vector<Axis> axes, std::vector<double> values)
    : axes_(std::move(axes)), values_(std::move(values)) {
  const std::size_t expected = checked_size(axes_);
  if (values_.size() != expected) {
    fail(errc::table_shape_mismatch,
         "table has " + std::to_string(values_.size()) + " values, expected " +
             std::to_string(expected));
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) {
      fail(errc::negative_or_non_finite_value,
           "table values must be finite and >= 0");
    }
  }
}

FactorTable FactorTable::constant(std::vector<Axis> axes, double value) {
  const std::size_t n = checked_size(axes);
  return FactorTable(std::move(axes), std::vector<double>(n, value));
}

int FactorTable::axis_index(const std::string& name) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::size_t FactorTable::flat_index(std::span<const int> assignment) const {
  std::size_t flat = 0;
  std::size_t stride = 1;
  for (int i = static_cast<int>(axes_.size()) - 1; i >= 0; --i) {
    flat += stride * static_cast<std::size_t>(assignment[i]);
    stride *= static_cast<std::size_t>(axes_[i].cardinality);
  }
  return flat;
}

double FactorTable::at(std::span<const int> assignment) const {
  return values_[flat_index(assignment)];
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

bool next_assignment(std::vector<int>& assignment, std::span<const Axis> axes) {
  for (int i = static_cast<int>(axes.size()) - 1; i >= 0; --i) {
    if (++assignment[i] < axes[i].cardinality) return true;
    assignment[i] = 0;
  }
  return false;
}

FactorTable product(std::span<const FactorTable> tables) {
  // Union of axes, ordered by first appearance.
  std::vector<Axis> axes;
  for (const FactorTable& t : tables) {
    for (const Axis& axis : t.axes()) {
      bool found = false;
      for (const Axis& existing : axes) {
        if (existing.name == axis.name) {
          if (existing.cardinality != axis.cardinality) {
            fail(errc::cardinality_mismatch,
                 "variable '" + axis.name + "' has cardinality " +
                     std::to_string(existing.cardinality) + " in one table and " +
                     std::to_string(axis.cardinality) + " in another");
          }
          found = true;
          break;
        }
      }
      if (!found) axes.push_back(axis);
    }
  }

  // For each input, where its axes sit in the output assignment.
  std::vector<std::vector<int>> positions(tables.size());
  for (std::size_t k = 0; k < tables.size(); ++k) {
    for (const Axis& axis : tables[k].axes()) {
      for (std::size_t i = 0; i < axes.size(); ++i) {
        if (axes[i].name == axis.name) {
          positions[k].push_back(static_cast<int>(i));
          break;
        }
      }
    }
  }

  std::size_t n = 1;
  for (const Axis& axis : axes) n *= static_cast<std::size_t>(axis.cardinality);

  std::vector<double> values(n);
  std::vector<int> assignment(axes.size(), 0);
  std::vector<int> sub;
  std::size_t flat = 0;
  do {
    double v = 1.0;
    for (std::size_t k = 0; k < tables.size(); ++k) {
      sub.assign(positions[k].size(), 0);
      for (std::size_t j = 0; j < positions[k].size(); ++j) {
        sub[j] = assignment[static_cast<std::size_t>(positions[k][j])];
      }
      v *= tables[k].at(sub);
    }
    values[flat++] = v;
  } while (next_assignment(assignment, axes));

  return FactorTable(std::move(axes), std::move(values));
}

FactorTable product(const FactorTable& a, const FactorTable& b) {
  const FactorTable tables[] = {a, b};
  return product(std::span<const FactorTable>(tables));
}

FactorTable marginalize(const FactorTable& table,
                        const std::vector<std::string>& out_vars) {
  for (const std::string& name : out_vars) {
    if (!table.has_axis(name)) {
      fail(errc::unknown_axis, "no axis named '" + name + "'");
    }
  }

  std::vector<Axis> kept;
  std::vector<Axis> summed;
  for (const Axis& axis : table.axes()) {
    const bool out = std::find(out_vars.begin(), out_vars.end(), axis.name) !=
                     out_vars.end();
    (out ? summed : kept).push_back(axis);
  }
  if (summed.empty()) return table;

  // Strides of kept/summed axes inside the input layout.
  const auto in_axes = table.axes();
  std::vector<std::size_t> in_strides = [&] {
    std::vector<std::size_t> s(in_axes.size(), 1);
    for (int i = static_cast<int>(in_axes.size()) - 2; i >= 0; --i) {
      s[i] = s[i + 1] * static_cast<std::size_t>(in_axes[i + 1].cardinality);
    }
    return s;
  }();
  std::vector<std::size_t> kept_strides, summed_strides;
  for (std::size_t i = 0; i < in_axes.size(); ++i) {
    const bool out = std::find(out_vars.begin(), out_vars.end(),
                               in_axes[i].name) != out_vars.end();
    (out ? summed_strides : kept_strides).push_back(in_strides[i]);
  }

  std::size_t n_kept = 1;
  for (const Axis& axis : kept) n_kept *= static_cast<std::size_t>(axis.cardinality);
  std::size_t n_summed = 1;
  for (const Axis& axis : summed) n_summed *= static_cast<std::size_t>(axis.cardinality);

  std::vector<double> values(n_kept);
  std::vector<double> terms(n_summed);
  std::vector<int> kept_idx(kept.size(), 0);
  std::size_t out_flat = 0;
  do {
    std::size_t base = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      base += kept_strides[i] * static_cast<std::size_t>(kept_idx[i]);
    }
    std::vector<int> summed_idx(summed.size(), 0);
    std::size_t t = 0;
    do {
      std::size_t offset = base;
      for (std::size_t i = 0; i < summed.size(); ++i) {
        offset += summed_strides[i] * static_cast<std::size_t>(summed_idx[i]);
      }
      terms[t++] = table.value_at(offset);
    } while (next_assignment(summed_idx, summed));
    values[out_flat++] = pairwise_sum(terms);
  } while (next_assignment(kept_idx, kept));

  return FactorTable(std::move(kept), std::move(values));
}

NormalizationCheck is_normalized_over(const FactorTable& table,
                                      const std::vector<std::string>& vars,
                                      double tol) {
  const FactorTable sums = marginalize(table, vars);
  NormalizationCheck check;
  check.worst_deviation = 0.0;
  for (double s : sums.values()) {
    check.worst_deviation = std::max(check.worst_deviation, std::abs(s - 1.0));
  }
  check.normalized = check.worst_deviation <= tol;
  return check;
}

FactorTable reorder_axes(const FactorTable& table,
                         const std::vector<std::string>& order) {
  if (order.size() != table.axes().size()) {
    fail(errc::unknown_axis, "axis order must name every axis exactly once");
  }
  std::vector<Axis> axes;
  std::vector<int> source;  // new position -> old position
  for (const std::string& name : order) {
    const int idx = table.axis_index(name);
    if (idx < 0) fail(errc::unknown_axis, "no axis named '" + name + "'");
    if (std::find(source.begin(), source.end(), idx) != source.end()) {
      fail(errc::unknown_axis, "axis '" + name + "' listed twice");
    }
    source.push_back(idx);
    axes.push_back(table.axes()[static_cast<std::size_t>(idx)]);
  }

  std::vector<double> values(table.size());
  std::vector<int> new_idx(axes.size(), 0);
  std::vector<int> old_idx(axes.size(), 0);
  std::size_t flat = 0;
  do {
    for (std::size_t i = 0; i < axes.size(); ++i) {
      old_idx[static_cast<std::size_t>(source[i])] = new_idx[i];
    }
    values[flat++] = table.at(old_idx);
  } while (next_assignment(new_idx, axes));

  return FactorTable(std::move(axes), std::move(values));
}

double total_mass(const FactorTable& table) {
  return pairwise_sum(table.values());
}

double normalization_constant(const FactorGraph& graph) {
  const FactorTable joint = graph.factor_product();
  double mass = total_mass(joint);
  // Variables outside every scope contribute an implicit all-ones factor.
  for (const Variable& v : graph.variables()) {
    if (!joint.has_axis(v.name)) {
      mass *= static_cast<double>(v.cardinality);
    }
  }
  if (mass <= 0.0) {
    fail(errc::zero_mass, "factor product has zero total mass");
  }
  return 1.0 / mass;
}

}  // namespace fgx
