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

#include "presage/cfg.hpp"

#include <json.hpp>

namespace presage {

CfgError::CfgError(std::string code, const std::string& msg)
    : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}

const std::string* CfgFacts::find_last_gep(int block, const std::string& base) const {
  auto it = last_gep.find({block, base});
  return it == last_gep.end() ? nullptr : &it->second;
}

bool same_class(const Instruction& g1, const Instruction& g2) {
  if (g1.op != Opcode::Gep || g2.op != Opcode::Gep) return false;
  const Operand& b1 = g1.operands[0];
  const Operand& b2 = g2.operands[0];
  return b1.is_value() && b2.is_value() && b1.value == b2.value;
}

CfgFacts analyze(const Function& f) {
  CfgFacts facts;
  CfgEdges edges = build_cfg_edges(f);
  facts.preds = edges.preds;
  facts.succs = edges.succs;
  int n = static_cast<int>(f.blocks.size());

  // Back edges: DFS-ancestor criterion on the spanning tree from entry.
  {
    std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
    std::vector<std::pair<int, size_t>> stack{{0, 0}};
    state[0] = 1;
    int visited = 1;
    while (!stack.empty()) {
      auto& [b, i] = stack.back();
      if (i < edges.succs[b].size()) {
        int s = edges.succs[b][i++];
        if (state[s] == 0) {
          state[s] = 1;
          ++visited;
          stack.push_back({s, 0});
        } else if (state[s] == 1) {
          facts.back_edges.insert({b, s});
        }
      } else {
        state[b] = 2;
        stack.pop_back();
      }
    }
    if (visited != n)
      throw CfgError("UNREACHABLE_BLOCK", "function has blocks unreachable from entry");
  }

  // Breadth-first order over the forward edges: a block is visited once all
  // its non-back-edge predecessors are, ties broken by declaration order.
  // Plain level BFS would let shortcut edges visit a successor before one of
  // its forward predecessors.
  {
    std::vector<int> indeg(n, 0);
    for (int b = 0; b < n; ++b)
      for (int s : edges.succs[b])
        if (!facts.back_edges.count({b, s})) indeg[s]++;
    std::set<int> ready;
    for (int b = 0; b < n; ++b)
      if (indeg[b] == 0) ready.insert(b);
    while (!ready.empty()) {
      int b = *ready.begin();
      ready.erase(ready.begin());
      facts.bfs_order.push_back(b);
      for (int s : edges.succs[b])
        if (!facts.back_edges.count({b, s}) && --indeg[s] == 0) ready.insert(s);
    }
    if (static_cast<int>(facts.bfs_order.size()) != n)
      throw CfgError("IRREDUCIBLE_CFG", "forward edges do not order the blocks");
  }

  // Reducibility: each back-edge target must dominate its source. The two-pass
  // phi fix-up is only correct for natural-loop latches.
  {
    DomTree dom = compute_dominators(f, edges);
    for (auto [from, to] : facts.back_edges)
      if (!dom.dominates(to, from))
        throw CfgError("IRREDUCIBLE_CFG", "back edge " + f.blocks[from].label + " -> " +
                                              f.blocks[to].label +
                                              " does not target a dominating header");
  }

  for (int b = 0; b < n; ++b)
    if (!f.blocks[b].insts.empty() && f.blocks[b].insts.back().op == Opcode::Ret)
      facts.exit_blocks.push_back(b);

  for (const auto& p : f.params)
    if (p.type == ValueType::Addr) facts.bases.push_back(p.name);

  for (int b = 0; b < n; ++b)
    for (const auto& inst : f.blocks[b].insts) {
      if (inst.op != Opcode::Gep || !inst.operands[0].is_value()) continue;
      const std::string& base = inst.operands[0].value;
      if (!f.is_addr_param(base)) continue;  // derived base: not chainable
      facts.last_gep[{b, base}] = inst.result;  // lexically last wins
    }

  return facts;
}

std::string cfg_facts_json(const Function& f, const CfgFacts& facts) {
  nlohmann::json j;
  j["function"] = f.name;
  auto label = [&](int b) { return f.blocks[b].label; };
  for (int b : facts.bfs_order) j["bfs_order"].push_back(label(b));
  j["edges"] = nlohmann::json::array();
  for (size_t b = 0; b < facts.succs.size(); ++b)
    for (int s : facts.succs[b]) j["edges"].push_back({label(static_cast<int>(b)), label(s)});
  j["back_edges"] = nlohmann::json::array();
  for (auto [from, to] : facts.back_edges) j["back_edges"].push_back({label(from), label(to)});
  j["exit_blocks"] = nlohmann::json::array();
  for (int b : facts.exit_blocks) j["exit_blocks"].push_back(label(b));
  j["bases"] = facts.bases;
  j["last_gep"] = nlohmann::json::object();
  for (const auto& [key, gep] : facts.last_gep) j["last_gep"][label(key.first)][key.second] = gep;
  return j.dump(2);
}

}  // namespace presage
