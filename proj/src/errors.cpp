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

#include "fgx/errors.hpp"

namespace fgx {

const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_name: return "invalid-name";
    case errc::duplicate_name: return "duplicate-name";
    case errc::unknown_variable: return "unknown-variable";
    case errc::unknown_node: return "unknown-node";
    case errc::bad_cardinality: return "bad-cardinality";
    case errc::partition_violation: return "partition-violation";
    case errc::dashed_overlap: return "dashed-overlap";
    case errc::table_shape_mismatch: return "table-shape-mismatch";
    case errc::negative_or_non_finite_value: return "negative-or-non-finite-value";
    case errc::directed_cycle: return "directed-cycle";
    case errc::cardinality_mismatch: return "cardinality-mismatch";
    case errc::unknown_axis: return "unknown-axis";
    case errc::undirected_edge_present: return "undirected-edge-present";
    case errc::multi_child_function: return "multi-child-function";
    case errc::orphan_variable: return "orphan-variable";
    case errc::unanchored_function: return "unanchored-function";
    case errc::normalization_failure: return "normalization-failure";
    case errc::invalid_cpd: return "invalid-cpd";
    case errc::invalid_edge: return "invalid-edge";
    case errc::potential_not_on_clique: return "potential-not-on-clique";
    case errc::potential_not_on_maximal_clique: return "potential-not-on-maximal-clique";
    case errc::duplicate_potential: return "duplicate-potential";
    case errc::missing_potential: return "missing-potential";
    case errc::overlapping_sets: return "overlapping-sets";
    case errc::empty_set: return "empty-set";
    case errc::not_undirected: return "not-undirected";
    case errc::invalid_evidence: return "invalid-evidence";
    case errc::zero_mass: return "zero-mass";
    case errc::enumeration_too_large: return "enumeration-too-large";
    case errc::not_a_tree: return "not-a-tree";
    case errc::parse_error: return "parse-error";
  }
  return "unknown-error";
}

}  // namespace fgx
