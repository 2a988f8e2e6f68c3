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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "presage/io.hpp"
#include "presage/kernels.hpp"
#include "presage/validate.hpp"

using namespace presage;

namespace {

bool has_code(const std::vector<Diagnostic>& diags, const std::string& code) {
  for (const auto& d : diags)
    if (d.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("gep line maps to a gep instruction") {
  Function f = parse_ir_raw(
      "func @g(%a: addr[f64 x 8], %i: i64) -> results(%a)\n"
      "bb0:\n"
      "  %p = gep %a, %i, 8\n"
      "  ret\n");
  const Instruction& gep = f.blocks[0].insts[0];
  CHECK(gep.op == Opcode::Gep);
  CHECK(gep.result == "p");
  CHECK(gep.operands[0] == Operand::val("a"));
  CHECK(gep.operands[1] == Operand::val("i"));
  CHECK(gep.elem_size == 8);
}

TEST_CASE("foo1 round-trips structurally") {
  Function f = build_kernel("foo1");
  Function g = parse_ir(print_ir(f));
  CHECK(f == g);
}

TEST_CASE("print is idempotent across the corpus") {
  for (const auto& k : kernel_corpus()) {
    CAPTURE(k.name);
    Function f = build_kernel(k.name);
    std::string once = print_ir(f);
    CHECK(once == print_ir(parse_ir(once)));
    CHECK(parse_ir(once) == f);
  }
}

TEST_CASE("corpus validates cleanly") {
  for (const auto& k : kernel_corpus()) {
    CAPTURE(k.name);
    auto diags = validate(build_kernel(k.name));
    CHECK(diags.empty());
  }
}

TEST_CASE("minimal function prints as header, entry label, ret") {
  Function f = parse_ir("func @empty() -> results()\nbb0:\n  ret\n");
  CHECK(print_ir(f) == "func @empty() -> results()\nbb0:\n  ret\n");
}

TEST_CASE("two terminators in one block is rejected") {
  Function f = parse_ir_raw(
      "func @t(%n: i64) -> results()\n"
      "bb0:\n"
      "  br bb1\n"
      "  ret\n"
      "bb1:\n"
      "  ret\n");
  auto diags = validate(f);
  CHECK(has_code(diags, "MULTIPLE_TERMINATORS"));
}

TEST_CASE("phi with a missing predecessor entry is rejected") {
  Function f = parse_ir_raw(
      "func @p(%n: i64) -> results()\n"
      "bb0:\n"
      "  %z = const 0\n"
      "  %c = icmp lt %z, %n\n"
      "  condbr %c, bb1, bb2\n"
      "bb1:\n"
      "  br bb2\n"
      "bb2:\n"
      "  %x = phi [%z, bb0]\n"
      "  ret\n");
  auto diags = validate(f);
  CHECK(has_code(diags, "PHI_EDGE_MISMATCH"));
}

TEST_CASE("use before def in the same block is rejected") {
  Function f = parse_ir_raw(
      "func @d(%n: i64) -> results()\n"
      "bb0:\n"
      "  %y = add %x, 1\n"
      "  %x = const 1\n"
      "  ret\n");
  auto diags = validate(f);
  CHECK(has_code(diags, "SSA_DOMINANCE"));
}

TEST_CASE("double definition is rejected") {
  Function f = parse_ir_raw(
      "func @r() -> results()\n"
      "bb0:\n"
      "  %x = const 1\n"
      "  %x = const 2\n"
      "  ret\n");
  CHECK(has_code(validate(f), "SSA_REDEF"));
}

TEST_CASE("unreachable block is rejected") {
  Function f = parse_ir_raw(
      "func @u() -> results()\n"
      "bb0:\n"
      "  ret\n"
      "bb1:\n"
      "  ret\n");
  CHECK(has_code(validate(f), "UNREACHABLE_BLOCK"));
}

TEST_CASE("storing an address value is rejected") {
  Function f = parse_ir_raw(
      "func @s(%a: addr[f64 x 8]) -> results(%a)\n"
      "bb0:\n"
      "  %p = gep %a, 0, 8\n"
      "  store %p, %p\n"
      "  ret\n");
  CHECK(has_code(validate(f), "STORE_ADDR_VALUE"));
}

TEST_CASE("gep element size must match the array spec") {
  Function f = parse_ir_raw(
      "func @e(%a: addr[f64 x 8], %i: i64) -> results(%a)\n"
      "bb0:\n"
      "  %p = gep %a, %i, 4\n"
      "  ret\n");
  CHECK(has_code(validate(f), "GEP_ELEM_SIZE"));
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_ir_raw("func @x() -> results()\nbb0:\n  %p = gep\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.col() > 0);
    CHECK(e.code() == "SYNTAX");
  }
}

TEST_CASE("unknown opcode is a distinct parse error") {
  try {
    parse_ir_raw("func @x() -> results()\nbb0:\n  %p = frobnicate %q\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.code() == "UNKNOWN_OPCODE");
  }
}

TEST_CASE("parse_ir rejects invalid functions with diagnostics") {
  CHECK_THROWS_AS(parse_ir("func @x() -> results()\n"
                           "bb0:\n"
                           "  %y = add %nope, 1\n"
                           "  ret\n"),
                  ValidateError);
}

TEST_CASE("float immediates and consts round-trip exactly") {
  Function f = parse_ir_raw(
      "func @c() -> results()\n"
      "bb0:\n"
      "  %a = const 0.1 : f64\n"
      "  %b = const -2.5e-17 : f64\n"
      "  %c = const 3 : f64\n"
      "  %d = const -9223372036854775808\n"
      "  ret\n");
  Function g = parse_ir_raw(print_ir(f));
  CHECK(f == g);
  CHECK(f.blocks[0].insts[0].fimm == 0.1);
  CHECK(f.blocks[0].insts[2].fimm == 3.0);
  CHECK(f.blocks[0].insts[3].imm == INT64_MIN);
}

TEST_CASE("detector annotations round-trip") {
  Function f = parse_ir_raw(
      "func @a(%a: addr[f64 x 8], %i: i64) -> results(%a)\n"
      "bb0:\n"
      "  %p = gep %a, %i, 8 !detector\n"
      "  %q = gep %a, %i, 8\n"
      "  %c = icmp ne %p, %q !check\n"
      "  ret\n");
  CHECK(f.blocks[0].insts[0].detector);
  CHECK_FALSE(f.blocks[0].insts[1].detector);
  CHECK(f.blocks[0].insts[2].check);
  CHECK(parse_ir_raw(print_ir(f)) == f);
}

TEST_CASE("comments and blank lines are ignored") {
  Function f = parse_ir_raw(
      "; leading comment\n"
      "func @k(%n: i64) -> results()\n"
      "\n"
      "bb0:  ; entry\n"
      "  %x = add %n, 1   ; trailing\n"
      "  ret\n");
  CHECK(f.blocks.size() == 1);
  CHECK(f.blocks[0].insts.size() == 2);
}

TEST_CASE("phi types resolve through chains") {
  Function f = parse_ir_raw(
      "func @p(%a: addr[f64 x 8], %n: i64) -> results(%a)\n"
      "bb0:\n"
      "  %z = const 0\n"
      "  %c = icmp lt %z, %n\n"
      "  condbr %c, bb1, bb2\n"
      "bb1:\n"
      "  %q = phi [%a, bb0], [%q2, bb1]\n"
      "  %i = phi [%z, bb0], [%i2, bb1]\n"
      "  %q2 = gep %q, 1, 8\n"
      "  %i2 = add %i, 1\n"
      "  %cc = icmp lt %i2, %n\n"
      "  condbr %cc, bb1, bb2\n"
      "bb2:\n"
      "  ret\n");
  CHECK(f.blocks[1].insts[0].type == ValueType::Addr);
  CHECK(f.blocks[1].insts[1].type == ValueType::Int64);
  CHECK(validate(f).empty());
}
