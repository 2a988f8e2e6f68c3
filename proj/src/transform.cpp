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

#include "presage/transform.hpp"

#include <algorithm>

#include <json.hpp>

#include "presage/validate.hpp"

namespace presage {

uint64_t fba_address(uint64_t base, uint64_t elem_size, int64_t index) {
  return base + elem_size * static_cast<uint64_t>(index);
}

uint64_t rba_address(uint64_t rel_base, uint64_t elem_size, int64_t index, int64_t rel_index) {
  return rel_base + elem_size * (static_cast<uint64_t>(index) - static_cast<uint64_t>(rel_index));
}

namespace {

constexpr std::string_view kReservedPrefix = "psg.";

bool reserved(std::string_view name) { return name.substr(0, 4) == kReservedPrefix; }

std::string phi_name(const char* what, const std::string& block, const std::string& base) {
  return std::string("psg.") + what + "." + block + "." + base;
}

// Unset phi slot sentinel.
bool slot_unset(const Operand& op) { return op.is_value() && op.value.empty(); }

Instruction* find_in_block(BasicBlock& bb, const std::string& result) {
  for (auto& inst : bb.insts)
    if (inst.result == result) return &inst;
  return nullptr;
}

const Instruction* find_gep(const Function& f, int block, const std::string& result) {
  for (const auto& inst : f.blocks[block].insts)
    if (inst.result == result) return &inst;
  return nullptr;
}

struct PhiPair {
  Instruction* addr = nullptr;
  Instruction* idx = nullptr;
};

PhiPair chain_phis(Function& f, const PhiChainMap& chains, int block, const std::string& base) {
  const ChainNode& node = chains.at(block, base);
  PhiPair p;
  p.addr = find_in_block(f.blocks[block], node.addr.value);
  p.idx = find_in_block(f.blocks[block], node.idx.value);
  return p;
}

uint64_t base_elem_size(const Function& f, const std::string& base) {
  const Param* p = f.find_param(base);
  return p && p->array ? p->array->elem_size : 8;
}

}  // namespace

uint64_t TransformReport::chained_total() const {
  uint64_t n = 0;
  for (const auto& [_, r] : per_base) n += r.chained_geps;
  return n;
}

std::string TransformReport::json() const {
  nlohmann::json j;
  j["bases"] = nlohmann::json::object();
  for (const auto& [base, r] : per_base) {
    j["bases"][base] = {
        {"chained_geps", r.chained_geps}, {"phis", r.phis}, {"detectors", r.detectors}};
  }
  j["skipped_geps"] = skipped_geps;
  j["chained_geps"] = chained_total();
  j["total_geps"] = total_geps;
  return j.dump(2);
}

PhiChainMap create_inter_block_chains(Function& f, const CfgFacts& facts,
                                      const std::vector<std::string>& bases) {
  PhiChainMap chains;
  for (const auto& b : bases) chains.phi_count[b] = 0;

  for (int block : facts.bfs_order) {
    if (block == 0) {
      // FBA fallback: the chain enters the function as (base, index 0).
      for (const auto& b : bases)
        chains.nodes[{0, b}] = ChainNode{Operand::val(b), Operand::imm_int(0)};
      continue;
    }
    const auto& preds = facts.preds[block];
    std::vector<Instruction> new_phis;
    for (const auto& b : bases) {
      std::vector<PhiIncoming> addr_in, idx_in;
      for (int p : preds) {
        const std::string& label = f.blocks[p].label;
        if (const std::string* gep_id = facts.find_last_gep(p, b)) {
          const Instruction* g = find_gep(f, p, *gep_id);
          addr_in.push_back({Operand::val(*gep_id), label});
          idx_in.push_back({g->operands[1], label});
        } else {
          addr_in.push_back({Operand::val(""), label});  // filled by the update passes
          idx_in.push_back({Operand::val(""), label});
        }
      }
      std::string an = phi_name("addr", f.blocks[block].label, b);
      std::string in = phi_name("idx", f.blocks[block].label, b);
      new_phis.push_back(Instruction::phi(an, std::move(addr_in), ValueType::Addr));
      new_phis.push_back(Instruction::phi(in, std::move(idx_in), ValueType::Int64));
      chains.nodes[{block, b}] = ChainNode{Operand::val(an), Operand::val(in)};
      chains.phi_count[b] += 2;
    }
    auto& insts = f.blocks[block].insts;
    insts.insert(insts.begin(), new_phis.begin(), new_phis.end());
  }
  return chains;
}

void update_inter_block_chains(Function& f, PhiChainMap& chains, const CfgFacts& facts,
                               const std::vector<std::string>& bases, UpdatePass pass) {
  for (int block : facts.bfs_order) {
    if (block == 0) continue;
    const auto& preds = facts.preds[block];
    for (size_t pi = 0; pi < preds.size(); ++pi) {
      int p = preds[pi];
      for (const auto& b : bases) {
        bool pass_through = facts.find_last_gep(p, b) == nullptr && chains.has(p, b);
        bool back = facts.is_back_edge(p, block);
        bool take = pass_through && ((pass == UpdatePass::Pass1 && !back) ||
                                     (pass == UpdatePass::Pass2 && back));
        if (!take) continue;
        const ChainNode& from = chains.at(p, b);
        PhiPair phis = chain_phis(f, chains, block, b);
        phis.addr->incoming[pi].value = from.addr;
        phis.idx->incoming[pi].value = from.idx;
      }
    }
  }
}

TransformReport create_intra_block_chains(Function& f, PhiChainMap& chains, const CfgFacts& facts,
                                          const std::vector<std::string>& bases) {
  TransformReport report;
  for (const auto& b : bases) {
    report.per_base[b].phis = chains.phi_count.count(b) ? chains.phi_count.at(b) : 0;
  }

  uint64_t fresh = 0;
  for (int block : facts.bfs_order) {
    for (const auto& b : bases) {
      ChainNode cur = chains.at(block, b);
      auto& insts = f.blocks[block].insts;
      for (size_t i = 0; i < insts.size(); ++i) {
        const Instruction& inst = insts[i];
        if (inst.op != Opcode::Gep || inst.non_injectable()) continue;
        if (!inst.operands[0].is_value() || inst.operands[0].value != b) continue;

        Instruction old = inst;
        Operand id_op = old.operands[1];
        std::string rid = "psg.rid." + std::to_string(fresh);
        std::string repl = "psg.gep." + std::to_string(fresh);
        ++fresh;

        insts[i] = Instruction::gep(repl, cur.addr, Operand::val(rid), old.elem_size);
        insts.insert(insts.begin() + static_cast<long>(i),
                     Instruction::int_binop(Opcode::Sub, rid, id_op, cur.idx));
        ++i;  // now points at the replacement gep

        replace_uses(f, old.result, repl);
        cur = ChainNode{Operand::val(repl), id_op};
        report.per_base[b].chained_geps++;
      }
    }
  }
  return report;
}

void insert_detectors(Function& f, const PhiChainMap& chains, const CfgFacts& facts,
                      const std::vector<std::string>& bases, TransformReport& report) {
  for (int exit : facts.exit_blocks) {
    const std::string& label = f.blocks[exit].label;
    std::vector<Instruction> det;
    for (const auto& b : bases) {
      const ChainNode& node = chains.at(exit, b);
      uint64_t s = base_elem_size(f, b);
      std::string rid = "psg.det.rid." + label + "." + b;
      std::string obs = "psg.det.obs." + label + "." + b;
      std::string dup = "psg.det.dup." + label + "." + b;
      std::string chk = "psg.det.chk." + label + "." + b;

      // Observed: the chained address re-materialized through the RBA form
      // with a zero relative index. Duplicate: the FBA recomputation from the
      // base and the last absolute index.
      Instruction i_rid = Instruction::int_binop(Opcode::Sub, rid, node.idx, node.idx);
      Instruction i_obs = Instruction::gep(obs, node.addr, Operand::val(rid), s);
      Instruction i_dup = Instruction::gep(dup, Operand::val(b), node.idx, s);
      Instruction i_chk =
          Instruction::cmp(CmpPred::Ne, chk, Operand::val(obs), Operand::val(dup));
      i_rid.detector = i_obs.detector = i_dup.detector = true;
      i_chk.check = true;
      det.insert(det.end(), {i_rid, i_obs, i_dup, i_chk});
      report.per_base[b].detectors++;
    }
    auto& insts = f.blocks[exit].insts;
    insts.insert(insts.end() - 1, det.begin(), det.end());  // before ret
  }
}

std::pair<Function, TransformReport> transform(const Function& f, TransformOptions opts) {
  {
    auto diags = validate(f);
    if (!diags.empty())
      throw TransformError("input does not validate: " + diags.front().str());
    for (const auto& p : f.params)
      if (reserved(p.name)) throw TransformError("reserved name %" + p.name);
    for (const auto& bb : f.blocks) {
      if (reserved(bb.label)) throw TransformError("reserved label " + bb.label);
      for (const auto& inst : bb.insts) {
        if (inst.non_injectable())
          throw TransformError("function already carries detector instructions");
        if (reserved(inst.result)) throw TransformError("reserved name %" + inst.result);
      }
    }
  }

  CfgFacts facts = analyze(f);

  // Dead-chain pruning: only bases with at least one direct gep get a chain.
  std::vector<std::string> bases;
  for (const auto& b : facts.bases) {
    bool used = false;
    for (const auto& [key, _] : facts.last_gep)
      if (key.second == b) used = true;
    if (used) bases.push_back(b);
  }

  uint64_t total_geps = 0;
  for (const auto& bb : f.blocks)
    for (const auto& inst : bb.insts)
      if (inst.op == Opcode::Gep) ++total_geps;

  Function g = f;
  PhiChainMap chains = create_inter_block_chains(g, facts, bases);
  update_inter_block_chains(g, chains, facts, bases, UpdatePass::Pass1);
  update_inter_block_chains(g, chains, facts, bases, UpdatePass::Pass2);

  for (const auto& [key, node] : chains.nodes) {
    if (key.first == 0) continue;
    PhiPair phis = chain_phis(g, chains, key.first, key.second);
    for (const auto& in : phis.addr->incoming)
      if (slot_unset(in.value))
        throw TransformError("unset addr phi slot after Pass2 in " + g.blocks[key.first].label);
    for (const auto& in : phis.idx->incoming)
      if (slot_unset(in.value))
        throw TransformError("unset idx phi slot after Pass2 in " + g.blocks[key.first].label);
  }

  TransformReport report = create_intra_block_chains(g, chains, facts, bases);
  if (opts.detectors) insert_detectors(g, chains, facts, bases, report);

  report.total_geps = total_geps;
  report.skipped_geps = total_geps - report.chained_total();

  auto diags = validate(g);
  if (!diags.empty())
    throw TransformError("transformed function does not validate: " + diags.front().str());
  return {std::move(g), std::move(report)};
}

}  // namespace presage
