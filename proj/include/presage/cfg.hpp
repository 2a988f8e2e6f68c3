// Copyright 2026 The Presage Authors. All rights reserved.
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

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "presage/dominance.hpp"
#include "presage/ir.hpp"

namespace presage {

// Control-flow facts feeding the chain transformation. Blocks are identified
// by index into Function::blocks; bases by param name.
struct CfgFacts {
  std::vector<int> bfs_order;               // entry first, ties by declaration order
  std::vector<std::vector<int>> preds;
  std::vector<std::vector<int>> succs;
  std::set<std::pair<int, int>> back_edges;  // (from, to); to is a DFS ancestor of from
  std::vector<int> exit_blocks;              // blocks ending in ret
  std::vector<std::string> bases;            // addr params, in param order
  std::map<std::pair<int, std::string>, std::string> last_gep;  // (block, base) -> gep result

  bool is_back_edge(int from, int to) const {
    return back_edges.count({from, to}) != 0;
  }
  const std::string* find_last_gep(int block, const std::string& base) const;
};

class CfgError : public std::runtime_error {
 public:
  CfgError(std::string code, const std::string& msg);
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Throws CfgError with code UNREACHABLE_BLOCK or IRREDUCIBLE_CFG.
CfgFacts analyze(const Function& f);

// True iff both geps name the identical base value.
bool same_class(const Instruction& g1, const Instruction& g2);

// JSON dump for `presage cfg --dump`.
std::string cfg_facts_json(const Function& f, const CfgFacts& facts);

}  // namespace presage
