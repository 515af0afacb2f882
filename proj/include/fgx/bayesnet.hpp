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

#ifndef FGX_BAYESNET_HPP_
#define FGX_BAYESNET_HPP_

#include <map>
#include <string>
#include <vector>

#include "fgx/graph.hpp"
#include "fgx/table.hpp"

namespace fgx {

// One conditional distribution: P(child | parents). The table's axes are the
// parents in declared order followed by the child, so the child axis varies
// fastest in the flat value array.
struct Cpd {
  std::string child;
  std::vector<std::string> parents;
  FactorTable table;
};

// Discrete directed model: a DAG over named variables with exactly one
// conditional distribution per variable. Each conditional must sum to one
// over the child for every parent configuration.
class BayesNet {
 public:
  static constexpr double kCpdTol = 1e-9;

  BayesNet(std::vector<Variable> variables, std::vector<Cpd> cpds);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Cpd>& cpds() const { return cpds_; }
  int variable_count() const { return static_cast<int>(variables_.size()); }

  int variable_index(const std::string& name) const;
  const Variable& variable(const std::string& name) const;
  const Cpd& cpd_for(const std::string& child) const;

  // Parent name lists, indexed like variables().
  const std::vector<std::vector<std::string>>& parent_lists() const {
    return parents_;
  }

 private:
  std::vector<Variable> variables_;
  std::vector<Cpd> cpds_;
  std::vector<std::vector<std::string>> parents_;
  std::map<std::string, int> variable_index_;
  std::map<std::string, int> cpd_index_;
};

}  // namespace fgx

#endif  // FGX_BAYESNET_HPP_
