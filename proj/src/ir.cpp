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

#include "presage/ir.hpp"

#include <utility>

namespace presage {

std::string_view type_name(ValueType t) {
  switch (t) {
    case ValueType::Int64: return "i64";
    case ValueType::Float64: return "f64";
    case ValueType::Addr: return "addr";
  }
  return "?";
}

std::string_view opcode_name(Opcode op) {
  switch (op) {
    case Opcode::Const: return "const";
    case Opcode::Add: return "add";
    case Opcode::Sub: return "sub";
    case Opcode::Mul: return "mul";
    case Opcode::Div: return "div";
    case Opcode::Rem: return "rem";
    case Opcode::ICmp: return "icmp";
    case Opcode::Gep: return "gep";
    case Opcode::Load: return "load";
    case Opcode::Store: return "store";
    case Opcode::Phi: return "phi";
    case Opcode::Br: return "br";
    case Opcode::CondBr: return "condbr";
    case Opcode::Ret: return "ret";
    case Opcode::SiToFp: return "sitofp";
    case Opcode::FpToSi: return "fptosi";
    case Opcode::FAdd: return "fadd";
    case Opcode::FSub: return "fsub";
    case Opcode::FMul: return "fmul";
    case Opcode::FDiv: return "fdiv";
  }
  return "?";
}

std::string_view pred_name(CmpPred p) {
  switch (p) {
    case CmpPred::Eq: return "eq";
    case CmpPred::Ne: return "ne";
    case CmpPred::Lt: return "lt";
    case CmpPred::Le: return "le";
    case CmpPred::Gt: return "gt";
    case CmpPred::Ge: return "ge";
  }
  return "?";
}

bool is_int_binop(Opcode op) {
  return op == Opcode::Add || op == Opcode::Sub || op == Opcode::Mul || op == Opcode::Div ||
         op == Opcode::Rem;
}

bool is_float_binop(Opcode op) {
  return op == Opcode::FAdd || op == Opcode::FSub || op == Opcode::FMul || op == Opcode::FDiv;
}

Operand Operand::val(std::string name) {
  Operand o;
  o.kind = Kind::Value;
  o.value = std::move(name);
  return o;
}

Operand Operand::imm_int(int64_t v) {
  Operand o;
  o.kind = Kind::ImmInt;
  o.imm = v;
  return o;
}

Operand Operand::imm_float(double v) {
  Operand o;
  o.kind = Kind::ImmFloat;
  o.fimm = v;
  return o;
}

Instruction Instruction::const_i64(std::string res, int64_t v) {
  Instruction i;
  i.result = std::move(res);
  i.op = Opcode::Const;
  i.type = ValueType::Int64;
  i.imm = v;
  return i;
}

Instruction Instruction::const_f64(std::string res, double v) {
  Instruction i;
  i.result = std::move(res);
  i.op = Opcode::Const;
  i.type = ValueType::Float64;
  i.fimm = v;
  return i;
}

Instruction Instruction::int_binop(Opcode op, std::string res, Operand a, Operand b) {
  Instruction i;
  i.result = std::move(res);
  i.op = op;
  i.type = ValueType::Int64;
  i.operands = {std::move(a), std::move(b)};
  return i;
}

Instruction Instruction::float_binop(Opcode op, std::string res, Operand a, Operand b) {
  Instruction i;
  i.result = std::move(res);
  i.op = op;
  i.type = ValueType::Float64;
  i.operands = {std::move(a), std::move(b)};
  return i;
}

Instruction Instruction::cmp(CmpPred p, std::string res, Operand a, Operand b) {
  Instruction i;
  i.result = std::move(res);
  i.op = Opcode::ICmp;
  i.type = ValueType::Int64;
  i.pred = p;
  i.operands = {std::move(a), std::move(b)};
  return i;
}

Instruction Instruction::gep(std::string res, Operand base, Operand index, uint64_t elem_size) {
  Instruction i;
  i.result = std::move(res);
  i.op = Opcode::Gep;
  i.type = ValueType::Addr;
  i.operands = {std::move(base), std::move(index)};
  i.elem_size = elem_size;
  return i;
}

Instruction Instruction::load(std::string res, Operand addr, ValueType t) {
  Instruction i;
  i.result = std::move(res);
  i.op = Opcode::Load;
  i.type = t;
  i.operands = {std::move(addr)};
  return i;
}

Instruction Instruction::store(Operand value, Operand addr) {
  Instruction i;
  i.op = Opcode::Store;
  i.operands = {std::move(value), std::move(addr)};
  return i;
}

Instruction Instruction::phi(std::string res, std::vector<PhiIncoming> in, ValueType t) {
  Instruction i;
  i.result = std::move(res);
  i.op = Opcode::Phi;
  i.type = t;
  i.incoming = std::move(in);
  return i;
}

Instruction Instruction::br(std::string target) {
  Instruction i;
  i.op = Opcode::Br;
  i.target = std::move(target);
  return i;
}

Instruction Instruction::cond_br(Operand cond, std::string t, std::string f) {
  Instruction i;
  i.op = Opcode::CondBr;
  i.operands = {std::move(cond)};
  i.target_true = std::move(t);
  i.target_false = std::move(f);
  return i;
}

Instruction Instruction::ret() {
  Instruction i;
  i.op = Opcode::Ret;
  return i;
}

Instruction Instruction::si_to_fp(std::string res, Operand a) {
  Instruction i;
  i.result = std::move(res);
  i.op = Opcode::SiToFp;
  i.type = ValueType::Float64;
  i.operands = {std::move(a)};
  return i;
}

Instruction Instruction::fp_to_si(std::string res, Operand a) {
  Instruction i;
  i.result = std::move(res);
  i.op = Opcode::FpToSi;
  i.type = ValueType::Int64;
  i.operands = {std::move(a)};
  return i;
}

int Function::block_index(std::string_view label) const {
  for (size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].label == label) return static_cast<int>(i);
  return -1;
}

const BasicBlock* Function::find_block(std::string_view label) const {
  int i = block_index(label);
  return i < 0 ? nullptr : &blocks[i];
}

BasicBlock* Function::find_block(std::string_view label) {
  int i = block_index(label);
  return i < 0 ? nullptr : &blocks[i];
}

const Param* Function::find_param(std::string_view name) const {
  for (const auto& p : params)
    if (p.name == name) return &p;
  return nullptr;
}

bool Function::is_addr_param(std::string_view name) const {
  const Param* p = find_param(name);
  return p && p->type == ValueType::Addr;
}

bool Function::is_result_array(std::string_view name) const {
  for (const auto& r : result_arrays)
    if (r == name) return true;
  return false;
}

void replace_uses(Function& f, std::string_view old_name, std::string_view new_name) {
  for (auto& bb : f.blocks)
    for (auto& inst : bb.insts)
      for_each_operand(inst, [&](Operand& op) {
        if (op.is_value() && op.value == old_name) op.value = std::string(new_name);
      });
}

}  // namespace presage
