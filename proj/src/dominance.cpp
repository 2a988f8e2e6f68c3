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

#include "presage/dominance.hpp"

#include <algorithm>

namespace presage {

CfgEdges build_cfg_edges(const Function& f) {
  CfgEdges e;
  size_t n = f.blocks.size();
  e.succs.resize(n);
  e.preds.resize(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& insts = f.blocks[i].insts;
    if (insts.empty()) continue;
    const Instruction& term = insts.back();
    auto add = [&](const std::string& label) {
      int t = f.block_index(label);
      if (t < 0) return;  // validate reports UNDEFINED_BLOCK
      e.succs[i].push_back(t);
      e.preds[t].push_back(static_cast<int>(i));
    };
    if (term.op == Opcode::Br) {
      add(term.target);
    } else if (term.op == Opcode::CondBr) {
      add(term.target_true);
      add(term.target_false);
    }
  }
  return e;
}

bool DomTree::dominates(int a, int b) const {
  if (a < 0 || b < 0 || idom[a] == -1 || idom[b] == -1) return false;
  while (true) {
    if (b == a) return true;
    int up = idom[b];
    if (up == b) return false;  // reached entry
    b = up;
  }
}

DomTree compute_dominators(const Function& f, const CfgEdges& edges) {
  int n = static_cast<int>(f.blocks.size());
  DomTree dt;
  dt.idom.assign(n, -1);
  if (n == 0) return dt;

  // Reverse postorder from entry.
  std::vector<int> postorder;
  std::vector<int> state(n, 0);
  std::vector<std::pair<int, size_t>> stack{{0, 0}};
  state[0] = 1;
  while (!stack.empty()) {
    auto& [b, i] = stack.back();
    if (i < edges.succs[b].size()) {
      int s = edges.succs[b][i++];
      if (state[s] == 0) {
        state[s] = 1;
        stack.push_back({s, 0});
      }
    } else {
      postorder.push_back(b);
      stack.pop_back();
    }
  }
  std::vector<int> rpo(postorder.rbegin(), postorder.rend());
  std::vector<int> rpo_index(n, -1);
  for (size_t i = 0; i < rpo.size(); ++i) rpo_index[rpo[i]] = static_cast<int>(i);

  auto intersect = [&](int b1, int b2) {
    while (b1 != b2) {
      while (rpo_index[b1] > rpo_index[b2]) b1 = dt.idom[b1];
      while (rpo_index[b2] > rpo_index[b1]) b2 = dt.idom[b2];
    }
    return b1;
  };

  dt.idom[0] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int b : rpo) {
      if (b == 0) continue;
      int new_idom = -1;
      for (int p : edges.preds[b]) {
        if (dt.idom[p] == -1) continue;
        new_idom = (new_idom == -1) ? p : intersect(p, new_idom);
      }
      if (new_idom != -1 && dt.idom[b] != new_idom) {
        dt.idom[b] = new_idom;
        changed = true;
      }
    }
  }
  return dt;
}

}  // namespace presage
