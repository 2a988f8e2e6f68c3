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

#include <vector>

#include "presage/ir.hpp"

namespace presage {

// Successor/predecessor lists by block index, in terminator/declaration order.
struct CfgEdges {
  std::vector<std::vector<int>> succs;
  std::vector<std::vector<int>> preds;
};

CfgEdges build_cfg_edges(const Function& f);

// Immediate dominators (Cooper-Harvey-Kennedy). idom[entry] == entry;
// unreachable blocks have idom == -1.
struct DomTree {
  std::vector<int> idom;

  bool reachable(int b) const { return idom[b] != -1; }
  // a dominates b (reflexive). False if either is unreachable.
  bool dominates(int a, int b) const;
};

DomTree compute_dominators(const Function& f, const CfgEdges& edges);

}  // namespace presage
