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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace presage {

enum class ValueType { Int64, Float64, Addr };

std::string_view type_name(ValueType t);

// Flat opcode set. Integer binops wrap in two's complement; addresses are
// produced only by gep (and addr-typed params).
enum class Opcode {
  Const,
  Add,
  Sub,
  Mul,
  Div,
  Rem,
  ICmp,
  Gep,
  Load,
  Store,
  Phi,
  Br,
  CondBr,
  Ret,
  SiToFp,
  FpToSi,
  FAdd,
  FSub,
  FMul,
  FDiv,
};

enum class CmpPred { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view opcode_name(Opcode op);
std::string_view pred_name(CmpPred p);

bool is_int_binop(Opcode op);
bool is_float_binop(Opcode op);

struct Operand {
  enum class Kind { Value, ImmInt, ImmFloat };

  Kind kind = Kind::Value;
  std::string value;  // Kind::Value, no leading '%'
  int64_t imm = 0;
  double fimm = 0.0;

  static Operand val(std::string name);
  static Operand imm_int(int64_t v);
  static Operand imm_float(double v);

  bool is_value() const { return kind == Kind::Value; }
  bool operator==(const Operand&) const = default;
};

struct PhiIncoming {
  Operand value;
  std::string pred;  // block label
  bool operator==(const PhiIncoming&) const = default;
};

struct Instruction {
  std::string result;  // empty for store/br/condbr/ret
  Opcode op = Opcode::Ret;
  ValueType type = ValueType::Int64;  // result/const/load type
  CmpPred pred = CmpPred::Eq;
  std::vector<Operand> operands;
  std::vector<PhiIncoming> incoming;  // phi only
  uint64_t elem_size = 0;             // gep only
  int64_t imm = 0;                    // const i64
  double fimm = 0.0;                  // const f64
  std::string target;                 // br
  std::string target_true;            // condbr
  std::string target_false;           // condbr
  bool detector = false;  // excluded from fault-site enumeration
  bool check = false;     // detector comparison; a true result bumps the detect counter

  bool operator==(const Instruction&) const = default;

  bool is_terminator() const {
    return op == Opcode::Br || op == Opcode::CondBr || op == Opcode::Ret;
  }
  bool has_result() const { return !result.empty(); }
  bool non_injectable() const { return detector || check; }

  // Canonical constructors so parser- and builder-made instructions compare equal.
  static Instruction const_i64(std::string res, int64_t v);
  static Instruction const_f64(std::string res, double v);
  static Instruction int_binop(Opcode op, std::string res, Operand a, Operand b);
  static Instruction float_binop(Opcode op, std::string res, Operand a, Operand b);
  static Instruction cmp(CmpPred p, std::string res, Operand a, Operand b);
  static Instruction gep(std::string res, Operand base, Operand index, uint64_t elem_size);
  static Instruction load(std::string res, Operand addr, ValueType t);
  static Instruction store(Operand value, Operand addr);
  static Instruction phi(std::string res, std::vector<PhiIncoming> in, ValueType t);
  static Instruction br(std::string target);
  static Instruction cond_br(Operand cond, std::string t, std::string f);
  static Instruction ret();
  static Instruction si_to_fp(std::string res, Operand a);
  static Instruction fp_to_si(std::string res, Operand a);
};

struct BasicBlock {
  std::string label;
  std::vector<Instruction> insts;
  bool operator==(const BasicBlock&) const = default;
};

// Element layout of an addr-typed parameter's array.
struct ArraySpec {
  std::string param;
  ValueType elem = ValueType::Float64;  // f64 or i64
  uint64_t elem_size = 8;
  uint64_t length = 0;  // element count
  bool operator==(const ArraySpec&) const = default;
};

struct Param {
  std::string name;  // no leading '%'
  ValueType type = ValueType::Int64;
  std::optional<ArraySpec> array;  // set iff type == Addr
  bool operator==(const Param&) const = default;
};

struct Function {
  std::string name;
  std::vector<Param> params;
  std::vector<std::string> result_arrays;  // subset of addr param names
  std::vector<BasicBlock> blocks;          // blocks[0] is the entry

  bool operator==(const Function&) const = default;

  int block_index(std::string_view label) const;
  const BasicBlock* find_block(std::string_view label) const;
  BasicBlock* find_block(std::string_view label);
  const Param* find_param(std::string_view name) const;
  bool is_addr_param(std::string_view name) const;
  bool is_result_array(std::string_view name) const;
};

// Applies fn to every value-kind operand of inst (phi incoming included).
template <typename Fn>
void for_each_operand(Instruction& inst, Fn&& fn) {
  for (auto& op : inst.operands) fn(op);
  for (auto& in : inst.incoming) fn(in.value);
}

template <typename Fn>
void for_each_operand(const Instruction& inst, Fn&& fn) {
  for (const auto& op : inst.operands) fn(op);
  for (const auto& in : inst.incoming) fn(in.value);
}

// Rewrites every use of value old_name to new_name across the function.
void replace_uses(Function& f, std::string_view old_name, std::string_view new_name);

}  // namespace presage
