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

#ifndef FGX_ERRORS_HPP
#define FGX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fgx {

// Every failure the library can report. Parse errors map to CLI exit code 2,
// everything else to exit code 1.
enum class errc {
  // model construction
  invalid_name,
  duplicate_name,
  unknown_variable,
  unknown_node,
  bad_cardinality,
  partition_violation,
  dashed_overlap,
  table_shape_mismatch,
  negative_or_non_finite_value,
  directed_cycle,
  // table algebra
  cardinality_mismatch,
  unknown_axis,
  // conversions
  undirected_edge_present,
  multi_child_function,
  orphan_variable,
  unanchored_function,
  normalization_failure,
  invalid_cpd,
  invalid_edge,
  potential_not_on_clique,
  potential_not_on_maximal_clique,
  duplicate_potential,
  missing_potential,
  // queries
  overlapping_sets,
  empty_set,
  not_undirected,
  invalid_evidence,
  // inference
  zero_mass,
  enumeration_too_large,
  not_a_tree,
  // io
  parse_error,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fgx

#endif  // FGX_ERRORS_HPP
