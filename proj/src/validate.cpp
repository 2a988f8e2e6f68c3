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

#include "presage/validate.hpp"

#include <map>
#include <optional>
#include <set>

#include "presage/dominance.hpp"

namespace presage {

std::string Diagnostic::str() const {
  std::string s = code;
  if (!block.empty()) s += " [" + block + (instr.empty() ? "" : ":%" + instr) + "]";
  s += ": " + message;
  return s;
}

namespace {

struct DefSite {
  int block = -1;  // -1 for params
  int index = -1;
};

// Value types resolvable without phi fixpoint.
std::optional<ValueType> direct_type(const Instruction& inst) {
  if (inst.op == Opcode::Phi) return std::nullopt;
  if (!inst.has_result()) return std::nullopt;
  return inst.type;
}

}  // namespace

bool resolve_phi_types(Function& f) {
  std::map<std::string, ValueType> types;
  for (const auto& p : f.params) types[p.name] = p.type;
  std::vector<Instruction*> phis;
  for (auto& bb : f.blocks)
    for (auto& inst : bb.insts) {
      if (inst.op == Opcode::Phi)
        phis.push_back(&inst);
      else if (auto t = direct_type(inst))
        types[inst.result] = *t;
    }

  // Phis with no value operand keep their annotated type.
  for (Instruction* phi : phis) {
    bool any_value = false;
    for (const auto& in : phi->incoming) any_value |= in.value.is_value();
    if (!any_value) types[phi->result] = phi->type;
  }

  bool progress = true;
  while (progress) {
    progress = false;
    for (Instruction* phi : phis) {
      if (types.count(phi->result)) continue;
      for (const auto& in : phi->incoming) {
        // Immediates carry their lexical type; self-referential pass-through
        // phis resolve through them.
        std::optional<ValueType> t;
        if (in.value.kind == Operand::Kind::ImmInt) {
          t = ValueType::Int64;
        } else if (in.value.kind == Operand::Kind::ImmFloat) {
          t = ValueType::Float64;
        } else {
          auto it = types.find(in.value.value);
          if (it != types.end()) t = it->second;
        }
        if (t) {
          phi->type = *t;
          types[phi->result] = *t;
          progress = true;
          break;
        }
      }
    }
  }
  for (Instruction* phi : phis)
    if (!types.count(phi->result)) return false;
  return true;
}

std::vector<Diagnostic> validate(const Function& f) {
  std::vector<Diagnostic> diags;
  auto emit = [&](std::string code, std::string msg, std::string block = "",
                  std::string instr = "") {
    diags.push_back({std::move(code), std::move(msg), std::move(block), std::move(instr)});
  };

  if (f.blocks.empty()) {
    emit("EMPTY_FUNCTION", "function has no blocks");
    return diags;
  }

  // Params and result arrays.
  {
    std::set<std::string> seen;
    for (const auto& p : f.params) {
      if (!seen.insert(p.name).second)
        emit("DUPLICATE_PARAM", "parameter %" + p.name + " declared twice");
      bool has_array = p.array.has_value();
      if ((p.type == ValueType::Addr) != has_array)
        emit("TYPE_MISMATCH", "param %" + p.name + " array spec mismatch");
      if (has_array && (p.array->length < 1 || p.array->elem_size == 0))
        emit("GEP_ELEM_SIZE", "param %" + p.name + " has an empty array spec");
    }
    for (const auto& r : f.result_arrays)
      if (!f.is_addr_param(r))
        emit("RESULT_NOT_ARRAY_PARAM", "result %" + r + " is not an addr param");
  }

  {
    std::set<std::string> seen;
    for (const auto& bb : f.blocks)
      if (!seen.insert(bb.label).second)
        emit("DUPLICATE_BLOCK", "block label " + bb.label + " declared twice");
  }

  // Block shape: one trailing terminator, phis only as the leading prefix.
  for (const auto& bb : f.blocks) {
    int terms = 0;
    bool past_phis = false;
    for (size_t i = 0; i < bb.insts.size(); ++i) {
      const Instruction& inst = bb.insts[i];
      if (inst.op == Opcode::Phi) {
        if (past_phis)
          emit("PHI_NOT_LEADING", "phi after non-phi instruction", bb.label, inst.result);
      } else {
        past_phis = true;
      }
      if (inst.is_terminator()) {
        ++terms;
        if (i + 1 != bb.insts.size())
          emit("TERMINATOR_NOT_LAST", "terminator is not the last instruction", bb.label);
      }
    }
    if (terms == 0) emit("NO_TERMINATOR", "block has no terminator", bb.label);
    if (terms > 1) emit("MULTIPLE_TERMINATORS", "block has multiple terminators", bb.label);

    // Branch targets must exist.
    for (const auto& inst : bb.insts) {
      if (inst.op == Opcode::Br && f.block_index(inst.target) < 0)
        emit("UNDEFINED_BLOCK", "branch to unknown block " + inst.target, bb.label);
      if (inst.op == Opcode::CondBr) {
        for (const auto& t : {inst.target_true, inst.target_false})
          if (f.block_index(t) < 0)
            emit("UNDEFINED_BLOCK", "branch to unknown block " + t, bb.label);
      }
      if (inst.op == Opcode::Phi)
        for (const auto& in : inst.incoming)
          if (f.block_index(in.pred) < 0)
            emit("UNDEFINED_BLOCK", "phi references unknown block " + in.pred, bb.label,
                 inst.result);
    }
  }
  if (!diags.empty()) return diags;  // shape errors make the rest unreliable

  CfgEdges edges = build_cfg_edges(f);
  DomTree dom = compute_dominators(f, edges);

  if (!edges.preds[0].empty())
    emit("ENTRY_HAS_PREDS", "entry block has predecessors", f.blocks[0].label);
  for (size_t b = 1; b < f.blocks.size(); ++b)
    if (!dom.reachable(static_cast<int>(b)))
      emit("UNREACHABLE_BLOCK", "block not reachable from entry", f.blocks[b].label);

  // Phi edges: exactly one incoming per predecessor.
  for (size_t b = 0; b < f.blocks.size(); ++b) {
    const auto& bb = f.blocks[b];
    std::multiset<int> preds(edges.preds[b].begin(), edges.preds[b].end());
    for (const auto& inst : bb.insts) {
      if (inst.op != Opcode::Phi) continue;
      std::multiset<int> labels;
      for (const auto& in : inst.incoming) labels.insert(f.block_index(in.pred));
      if (labels != preds)
        emit("PHI_EDGE_MISMATCH",
             "phi incoming blocks do not match predecessors (" +
                 std::to_string(labels.size()) + " vs " + std::to_string(preds.size()) + ")",
             bb.label, inst.result);
    }
  }

  // SSA: single definition per value, defs precede and dominate uses.
  std::map<std::string, DefSite> defs;
  std::map<std::string, ValueType> types;
  for (const auto& p : f.params) {
    defs[p.name] = DefSite{};
    types[p.name] = p.type;
  }
  for (size_t b = 0; b < f.blocks.size(); ++b)
    for (size_t i = 0; i < f.blocks[b].insts.size(); ++i) {
      const Instruction& inst = f.blocks[b].insts[i];
      if (!inst.has_result()) continue;
      if (defs.count(inst.result)) {
        emit("SSA_REDEF", "value %" + inst.result + " defined more than once",
             f.blocks[b].label, inst.result);
        continue;
      }
      defs[inst.result] = DefSite{static_cast<int>(b), static_cast<int>(i)};
      types[inst.result] = inst.type;
    }
  if (!diags.empty()) return diags;

  {
    Function copy = f;  // phi types may be unresolved on hand-built functions
    if (!resolve_phi_types(copy))
      emit("TYPE_UNRESOLVED", "phi type cannot be inferred");
    else
      for (size_t b = 0; b < copy.blocks.size(); ++b)
        for (const auto& inst : copy.blocks[b].insts)
          if (inst.op == Opcode::Phi) types[inst.result] = inst.type;
  }

  auto use_ok = [&](const DefSite& def, int block, int index, bool is_phi_use,
                    int incoming_pred) {
    if (def.block == -1) return true;  // param
    if (is_phi_use)  // value must dominate the end of the incoming block
      return def.block == incoming_pred || dom.dominates(def.block, incoming_pred);
    if (def.block == block) return def.index < index;
    return dom.dominates(def.block, block);
  };

  auto operand_type = [&](const Operand& op) -> std::optional<ValueType> {
    switch (op.kind) {
      case Operand::Kind::Value: {
        auto it = types.find(op.value);
        if (it == types.end()) return std::nullopt;
        return it->second;
      }
      case Operand::Kind::ImmInt: return ValueType::Int64;
      case Operand::Kind::ImmFloat: return ValueType::Float64;
    }
    return std::nullopt;
  };

  for (size_t b = 0; b < f.blocks.size(); ++b) {
    const auto& bb = f.blocks[b];
    for (size_t i = 0; i < bb.insts.size(); ++i) {
      const Instruction& inst = bb.insts[i];
      auto check_use = [&](const Operand& op, bool phi_use, int pred_block) {
        if (!op.is_value()) return;
        auto it = defs.find(op.value);
        if (it == defs.end()) {
          emit("UNDEFINED_VALUE", "use of undefined value %" + op.value, bb.label, inst.result);
          return;
        }
        if (!use_ok(it->second, static_cast<int>(b), static_cast<int>(i), phi_use, pred_block))
          emit("SSA_DOMINANCE", "use of %" + op.value + " not dominated by its definition",
               bb.label, inst.result.empty() ? opcode_name(inst.op).data() : inst.result);
      };
      if (inst.op == Opcode::Phi) {
        for (const auto& in : inst.incoming)
          check_use(in.value, true, f.block_index(in.pred));
      } else {
        for (const auto& op : inst.operands) check_use(op, false, -1);
      }
    }
  }
  if (!diags.empty()) return diags;

  // Types.
  auto expect_type = [&](const Instruction& inst, const std::string& blk, const Operand& op,
                         ValueType want, const char* what) {
    auto t = operand_type(op);
    if (t && *t != want)
      emit("TYPE_MISMATCH",
           std::string(what) + " must be " + std::string(type_name(want)) + ", got " +
               std::string(type_name(*t)),
           blk, inst.result);
  };

  for (const auto& bb : f.blocks) {
    for (const auto& inst : bb.insts) {
      switch (inst.op) {
        case Opcode::Const:
          if (inst.type == ValueType::Addr)
            emit("TYPE_MISMATCH", "const cannot produce an addr", bb.label, inst.result);
          break;
        case Opcode::Add:
        case Opcode::Sub:
        case Opcode::Mul:
        case Opcode::Div:
        case Opcode::Rem:
          expect_type(inst, bb.label, inst.operands[0], ValueType::Int64, "int binop operand");
          expect_type(inst, bb.label, inst.operands[1], ValueType::Int64, "int binop operand");
          break;
        case Opcode::FAdd:
        case Opcode::FSub:
        case Opcode::FMul:
        case Opcode::FDiv:
          expect_type(inst, bb.label, inst.operands[0], ValueType::Float64, "float binop operand");
          expect_type(inst, bb.label, inst.operands[1], ValueType::Float64, "float binop operand");
          break;
        case Opcode::ICmp: {
          auto t0 = operand_type(inst.operands[0]);
          auto t1 = operand_type(inst.operands[1]);
          if (t0 && t1) {
            if (*t0 != *t1)
              emit("TYPE_MISMATCH", "icmp operands disagree", bb.label, inst.result);
            else if (*t0 == ValueType::Float64)
              emit("TYPE_MISMATCH", "icmp does not compare f64", bb.label, inst.result);
          }
          break;
        }
        case Opcode::Gep: {
          expect_type(inst, bb.label, inst.operands[0], ValueType::Addr, "gep base");
          expect_type(inst, bb.label, inst.operands[1], ValueType::Int64, "gep index");
          if (inst.elem_size == 0)
            emit("GEP_ELEM_SIZE", "gep element size must be positive", bb.label, inst.result);
          // Element size on a param base must match the array spec.
          if (inst.operands[0].is_value()) {
            const Param* p = f.find_param(inst.operands[0].value);
            if (p && p->array && inst.elem_size != p->array->elem_size)
              emit("GEP_ELEM_SIZE",
                   "gep element size " + std::to_string(inst.elem_size) + " does not match %" +
                       p->name + " spec",
                   bb.label, inst.result);
          }
          break;
        }
        case Opcode::Load:
          expect_type(inst, bb.label, inst.operands[0], ValueType::Addr, "load address");
          if (inst.type == ValueType::Addr)
            emit("TYPE_MISMATCH", "load of addr is not allowed", bb.label, inst.result);
          break;
        case Opcode::Store: {
          auto vt = operand_type(inst.operands[0]);
          if (vt && *vt == ValueType::Addr)
            emit("STORE_ADDR_VALUE", "address values cannot be stored", bb.label);
          expect_type(inst, bb.label, inst.operands[1], ValueType::Addr, "store address");
          break;
        }
        case Opcode::Phi: {
          for (const auto& in : inst.incoming) {
            auto t = operand_type(in.value);
            if (t && *t != inst.type)
              emit("TYPE_MISMATCH",
                   "phi incoming type " + std::string(type_name(*t)) + " != " +
                       std::string(type_name(inst.type)),
                   bb.label, inst.result);
          }
          break;
        }
        case Opcode::CondBr:
          expect_type(inst, bb.label, inst.operands[0], ValueType::Int64, "condbr condition");
          break;
        case Opcode::SiToFp:
          expect_type(inst, bb.label, inst.operands[0], ValueType::Int64, "sitofp operand");
          break;
        case Opcode::FpToSi:
          expect_type(inst, bb.label, inst.operands[0], ValueType::Float64, "fptosi operand");
          break;
        case Opcode::Br:
        case Opcode::Ret:
          break;
      }
    }
  }

  return diags;
}

}  // namespace presage
