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

#include "presage/interp.hpp"
#include "presage/io.hpp"
#include "presage/kernels.hpp"
#include "presage/rng.hpp"
#include "presage/transform.hpp"
#include "presage/validate.hpp"

using namespace presage;

namespace {

const Instruction* find_inst(const Function& f, const std::string& result) {
  for (const auto& bb : f.blocks)
    for (const auto& inst : bb.insts)
      if (inst.result == result) return &inst;
  return nullptr;
}

const Operand& phi_slot(const Instruction& phi, const std::string& pred) {
  for (const auto& in : phi.incoming)
    if (in.pred == pred) return in.value;
  static Operand missing;
  return missing;
}

bool unset(const Operand& op) { return op.is_value() && op.value.empty(); }

}  // namespace

TEST_CASE("fba address arithmetic") {
  CHECK(fba_address(1000, 8, 3) == 1024);
  CHECK(fba_address(12345, 16, 0) == 12345);
  CHECK(fba_address(1000, 8, -1) == 992);
}

TEST_CASE("rba address arithmetic") {
  CHECK(rba_address(1024, 8, 5, 3) == 1040);
  CHECK(rba_address(1024, 8, 3, 3) == 1024);
}

TEST_CASE("rba equals fba for any shared base (brute-force equivalence)") {
  // Independent check of the address-scheme equivalence: compute both
  // routes for random (base, size, i, j) and require exact equality.
  SplitMix64 rng(0xE9u);
  const uint64_t sizes[] = {1, 2, 4, 8, 16, 64};
  for (int trial = 0; trial < 10000; ++trial) {
    uint64_t base = rng.next();
    uint64_t s = sizes[rng.range(0, 5)];
    int64_t i = static_cast<int64_t>(rng.next());
    int64_t j = static_cast<int64_t>(rng.next());
    uint64_t rel_base = fba_address(base, s, j);
    CHECK(rba_address(rel_base, s, i, j) == fba_address(base, s, i));
  }
}

TEST_CASE("foo1 inter-block chains: create fills gep slots, pass1 seeds the entry edge") {
  Function f = build_kernel("foo1");
  CfgFacts facts = analyze(f);
  std::vector<std::string> bases{"a"};

  PhiChainMap chains = create_inter_block_chains(f, facts, bases);
  REQUIRE(chains.has(f.block_index("bb1"), "a"));
  const Instruction* addr_phi = find_inst(f, "psg.addr.bb1.a");
  const Instruction* idx_phi = find_inst(f, "psg.idx.bb1.a");
  REQUIRE(addr_phi != nullptr);
  REQUIRE(idx_phi != nullptr);
  CHECK(addr_phi->incoming.size() == 2);

  // The latch (bb1 itself) holds the gep, so its slot is filled at create;
  // the entry-edge slot waits for pass 1.
  CHECK(phi_slot(*addr_phi, "bb1") == Operand::val("p"));
  CHECK(phi_slot(*idx_phi, "bb1") == Operand::val("id"));
  CHECK(unset(phi_slot(*addr_phi, "bb0")));

  update_inter_block_chains(f, chains, facts, bases, UpdatePass::Pass1);
  CHECK(phi_slot(*addr_phi, "bb0") == Operand::val("a"));
  CHECK(phi_slot(*idx_phi, "bb0") == Operand::imm_int(0));
}

TEST_CASE("back edge from a pass-through latch is filled only in pass 2") {
  // The gep lives in the header; the latch is pass-through and reaches the
  // header over the back edge.
  Function f = parse_ir(
      "func @pt(%a: addr[f64 x 16], %n: i64) -> results(%a)\n"
      "bb0:\n"
      "  %z = const 0\n"
      "  %g = icmp lt %z, %n\n"
      "  condbr %g, bbH, bbX\n"
      "bbH:\n"
      "  %i = phi [%z, bb0], [%inc, bbL]\n"
      "  %p = gep %a, %i, 8\n"
      "  %fi = sitofp %i\n"
      "  store %fi, %p\n"
      "  %c = icmp lt %i, %n\n"
      "  condbr %c, bbL, bbX\n"
      "bbL:\n"
      "  %inc = add %i, 1\n"
      "  br bbH\n"
      "bbX:\n"
      "  ret\n");
  CfgFacts facts = analyze(f);
  std::vector<std::string> bases{"a"};
  PhiChainMap chains = create_inter_block_chains(f, facts, bases);
  const Instruction* addr_phi = find_inst(f, "psg.addr.bbH.a");
  REQUIRE(addr_phi != nullptr);

  CHECK(unset(phi_slot(*addr_phi, "bb0")));
  CHECK(unset(phi_slot(*addr_phi, "bbL")));

  update_inter_block_chains(f, chains, facts, bases, UpdatePass::Pass1);
  CHECK(phi_slot(*addr_phi, "bb0") == Operand::val("a"));
  CHECK(unset(phi_slot(*addr_phi, "bbL")));  // back edge waits for pass 2

  update_inter_block_chains(f, chains, facts, bases, UpdatePass::Pass2);
  CHECK(phi_slot(*addr_phi, "bbL") == Operand::val("psg.addr.bbL.a"));
}

TEST_CASE("block with three predecessors gets phi arity 3") {
  Function f = parse_ir(
      "func @tri(%a: addr[f64 x 8], %n: i64) -> results(%a)\n"
      "bb0:\n"
      "  %z = const 0\n"
      "  %p = gep %a, %z, 8\n"
      "  %c = icmp lt %z, %n\n"
      "  condbr %c, bb1, bb2\n"
      "bb1:\n"
      "  %c2 = icmp lt %z, %n\n"
      "  condbr %c2, bbJ, bb2\n"
      "bb2:\n"
      "  br bbJ\n"
      "bbJ:\n"
      "  ret\n");
  CfgFacts facts = analyze(f);
  PhiChainMap chains = create_inter_block_chains(f, facts, {"a"});
  const Instruction* join_phi = find_inst(f, "psg.addr.bbJ.a");
  REQUIRE(join_phi != nullptr);
  CHECK(join_phi->incoming.size() == 2);  // bb1, bb2
  const Instruction* phi2 = find_inst(f, "psg.addr.bb2.a");
  REQUIRE(phi2 != nullptr);
  CHECK(phi2->incoming.size() == 2);  // bb0, bb1
  (void)chains;
}

TEST_CASE("pass-through diamond arm forwards its phi, not a gep") {
  Function f = parse_ir(
      "func @pd(%a: addr[f64 x 8], %n: i64) -> results(%a)\n"
      "bb0:\n"
      "  %z = const 0\n"
      "  %p0 = gep %a, %z, 8\n"
      "  %c = icmp lt %z, %n\n"
      "  condbr %c, bbL, bbR\n"
      "bbL:\n"
      "  %p1 = gep %a, 1, 8\n"
      "  br bbJ\n"
      "bbR:\n"
      "  br bbJ\n"
      "bbJ:\n"
      "  ret\n");
  CfgFacts facts = analyze(f);
  std::vector<std::string> bases{"a"};
  PhiChainMap chains = create_inter_block_chains(f, facts, bases);
  update_inter_block_chains(f, chains, facts, bases, UpdatePass::Pass1);
  update_inter_block_chains(f, chains, facts, bases, UpdatePass::Pass2);
  const Instruction* join_phi = find_inst(f, "psg.addr.bbJ.a");
  REQUIRE(join_phi != nullptr);
  CHECK(phi_slot(*join_phi, "bbL") == Operand::val("p1"));
  CHECK(phi_slot(*join_phi, "bbR") == Operand::val("psg.addr.bbR.a"));
}

TEST_CASE("two same-class geps in one block chain onto each other") {
  Function f = parse_ir(
      "func @two(%a: addr[f64 x 16], %i1: i64, %i2: i64) -> results(%a)\n"
      "bb0:\n"
      "  %p1 = gep %a, %i1, 8\n"
      "  %v1 = load %p1 : f64\n"
      "  %p2 = gep %a, %i2, 8\n"
      "  store %v1, %p2\n"
      "  ret\n");
  auto [g, report] = transform(f);
  CHECK(report.chained_total() == 2);
  CHECK(report.skipped_geps == 0);

  // Second rewritten gep must use the first one's result as its base and a
  // rid of i2 - i1.
  const Instruction* g2 = find_inst(g, "psg.gep.1");
  REQUIRE(g2 != nullptr);
  CHECK(g2->operands[0] == Operand::val("psg.gep.0"));
  const Instruction* rid2 = find_inst(g, "psg.rid.1");
  REQUIRE(rid2 != nullptr);
  CHECK(rid2->op == Opcode::Sub);
  CHECK(rid2->operands[0] == Operand::val("i2"));
  CHECK(rid2->operands[1] == Operand::val("i1"));

  // First gep in the entry block seeds from (base, 0).
  const Instruction* g1 = find_inst(g, "psg.gep.0");
  REQUIRE(g1 != nullptr);
  CHECK(g1->operands[0] == Operand::val("a"));
  const Instruction* rid1 = find_inst(g, "psg.rid.0");
  REQUIRE(rid1 != nullptr);
  CHECK(rid1->operands[1] == Operand::imm_int(0));
}

TEST_CASE("derived-base geps are skipped and counted") {
  Function f = build_kernel("fdtd-mini");
  auto [g, report] = transform(f);
  CHECK(report.skipped_geps == 1);  // the hz row-relative cell gep
  CHECK(report.total_geps == report.chained_total() + report.skipped_geps);
  const Instruction* phz = find_inst(g, "phz3");
  REQUIRE(phz != nullptr);  // untouched
  CHECK(phz->operands[1] == Operand::val("j3"));
}

TEST_CASE("foo2's gep rides a phi base, so nothing is chainable") {
  Function f = build_kernel("foo2");
  auto [g, report] = transform(f);
  CHECK(report.chained_total() == 0);
  CHECK(report.skipped_geps == 1);
  CHECK(report.per_base.empty());
  // No detectors without chains; the function is otherwise untouched.
  CHECK(g == f);
}

TEST_CASE("function with zero geps transforms to itself") {
  Function f = parse_ir(
      "func @none(%n: i64) -> results()\n"
      "bb0:\n"
      "  %x = add %n, 1\n"
      "  ret\n");
  auto [g, report] = transform(f);
  CHECK(g == f);
  CHECK(report.total_geps == 0);
  CHECK(report.chained_total() == 0);
  CHECK(report.per_base.empty());
}

TEST_CASE("transform(foo1) has the foo2 shape and validates") {
  Function f = build_kernel("foo1");
  auto [g, report] = transform(f);
  CHECK(validate(g).empty());
  CHECK(report.per_base.at("a").chained_geps == 1);
  CHECK(report.per_base.at("a").detectors == 1);

  // One addr phi in the loop header, an rba gep in the body.
  const Instruction* addr_phi = find_inst(g, "psg.addr.bb1.a");
  REQUIRE(addr_phi != nullptr);
  CHECK(addr_phi->op == Opcode::Phi);
  CHECK(phi_slot(*addr_phi, "bb0") == Operand::val("a"));
  CHECK(phi_slot(*addr_phi, "bb1") == Operand::val("psg.gep.0"));
  const Instruction* gep = find_inst(g, "psg.gep.0");
  REQUIRE(gep != nullptr);
  CHECK(gep->operands[0] == Operand::val("psg.addr.bb1.a"));

  // Exit-block detector: observed/duplicate gep pair and a !check compare.
  const Instruction* chk = find_inst(g, "psg.det.chk.bb2.a");
  REQUIRE(chk != nullptr);
  CHECK(chk->check);
  CHECK(chk->op == Opcode::ICmp);
  const Instruction* dup = find_inst(g, "psg.det.dup.bb2.a");
  REQUIRE(dup != nullptr);
  CHECK(dup->detector);
  CHECK(dup->operands[0] == Operand::val("a"));
}

TEST_CASE("whole corpus transforms, validates, and keeps gep accounting") {
  for (const auto& k : kernel_corpus()) {
    CAPTURE(k.name);
    Function f = build_kernel(k.name);
    auto [g, report] = transform(f);
    CHECK(validate(g).empty());
    CHECK(report.total_geps == report.chained_total() + report.skipped_geps);
    CHECK((report.skipped_geps > 0) == k.has_derived_bases);
  }
}

TEST_CASE("transformed kernels preserve fault-free semantics") {
  // Spot check here; the acceptance suite runs the full 100-seed sweep.
  for (const char* name : {"foo1", "jacobi2d-mini", "bicg-mini", "lu-mini"}) {
    CAPTURE(name);
    const KernelSpec* spec = find_kernel(name);
    REQUIRE(spec != nullptr);
    Function native = build_kernel(name);
    Function chained = transform(native).first;
    Interpreter in(native), ip(chained);
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      KernelInputs inputs = gen_inputs(*spec, seed);
      ExecResult a = in.run(inputs.mem, inputs.args, 100000000);
      ExecResult b = ip.run(inputs.mem, inputs.args, 100000000);
      REQUIRE(a.status == RunStatus::Completed);
      REQUIRE(b.status == RunStatus::Completed);
      CHECK(a.results == b.results);
      CHECK(b.detect_count == 0);
    }
  }
}

TEST_CASE("transform(foo1) computes the same outputs as hand-written foo2") {
  const KernelSpec* spec = find_kernel("foo1");
  Function t1 = transform(build_kernel("foo1")).first;
  Function f2 = build_kernel("foo2");
  Interpreter a(t1), b(f2);
  for (uint64_t seed = 10; seed < 20; ++seed) {
    KernelInputs inputs = gen_inputs(*spec, seed);
    ExecResult ra = a.run(inputs.mem, inputs.args, 100000000);
    ExecResult rb = b.run(inputs.mem, inputs.args, 100000000);
    CHECK(ra.results == rb.results);
  }
}

TEST_CASE("already-transformed input is rejected") {
  Function f = transform(build_kernel("foo1")).first;
  CHECK_THROWS_AS(transform(f), TransformError);
}

TEST_CASE("irreducible input is rejected through transform") {
  Function f = parse_ir(
      "func @irr(%a: addr[f64 x 8], %n: i64) -> results(%a)\n"
      "bb0:\n"
      "  %z = const 0\n"
      "  %c = icmp lt %z, %n\n"
      "  condbr %c, bbA, bbB\n"
      "bbA:\n"
      "  %c2 = icmp lt %z, %n\n"
      "  condbr %c2, bbB, bbX\n"
      "bbB:\n"
      "  %c3 = icmp lt %z, %n\n"
      "  condbr %c3, bbA, bbX\n"
      "bbX:\n"
      "  ret\n");
  CHECK_THROWS_AS(transform(f), CfgError);
}

TEST_CASE("no-detectors option leaves chains but no checks") {
  Function f = build_kernel("foo1");
  auto [g, report] = transform(f, {.detectors = false});
  CHECK(report.per_base.at("a").detectors == 0);
  for (const auto& bb : g.blocks)
    for (const auto& inst : bb.insts) CHECK_FALSE(inst.non_injectable());
}
