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

#include <fstream>
#include <set>
#include <sstream>

#include "kernel_oracles.hpp"
#include "presage/cfg.hpp"
#include "presage/io.hpp"
#include "presage/kernels.hpp"

using namespace presage;

TEST_CASE("corpus spans the required categories") {
  std::set<std::string> names;
  std::set<std::string> categories;
  for (const auto& k : kernel_corpus()) {
    names.insert(k.name);
    categories.insert(k.category);
  }
  CHECK(names.size() >= 8);
  for (const char* want :
       {"foo1", "foo2", "jacobi2d-mini", "seidel2d-mini", "adi-mini", "fdtd-mini",
        "gesummv-mini", "atax-mini", "bicg-mini", "trmm-mini", "lu-mini", "cholesky-mini"})
    CHECK(names.count(want) == 1);
  for (const char* cat : {"stencil", "blas", "solver"}) CHECK(categories.count(cat) == 1);
}

TEST_CASE("foo1 shape: one gep, one loop, base %a") {
  Function f = build_kernel("foo1");
  CfgFacts facts = analyze(f);
  uint64_t geps = 0;
  for (const auto& bb : f.blocks)
    for (const auto& inst : bb.insts)
      if (inst.op == Opcode::Gep) ++geps;
  CHECK(geps == 1);
  CHECK(facts.back_edges.size() == 1);
  CHECK(facts.bases == std::vector<std::string>{"a"});
}

TEST_CASE("foo2 carries one address phi per base in its loop header") {
  std::string text = print_ir(build_kernel("foo2"));
  CHECK(text.find("%addr = phi [%a, bb0], [%p, bb1]") != std::string::npos);
  CHECK(text.find("%pid = phi [%zero, bb0], [%id, bb1]") != std::string::npos);
}

TEST_CASE("unknown kernel names are rejected") {
  CHECK(find_kernel("nope") == nullptr);
  CHECK_THROWS_AS(build_kernel("nope"), InterpError);
}

TEST_CASE("derived-base flag matches the corpus") {
  CHECK(find_kernel("fdtd-mini")->has_derived_bases);
  CHECK(find_kernel("foo2")->has_derived_bases);
  CHECK_FALSE(find_kernel("jacobi2d-mini")->has_derived_bases);
}

TEST_CASE("gen_inputs is deterministic and respects ranges") {
  const KernelSpec* spec = find_kernel("gesummv-mini");
  REQUIRE(spec != nullptr);
  KernelInputs a = gen_inputs(*spec, 1);
  KernelInputs b = gen_inputs(*spec, 1);
  CHECK(a.args == b.args);
  REQUIRE(a.mem.regions.size() == b.mem.regions.size());
  for (size_t i = 0; i < a.mem.regions.size(); ++i) {
    CHECK(a.mem.regions[i].base == b.mem.regions[i].base);
    CHECK(a.mem.regions[i].data == b.mem.regions[i].data);
  }
  KernelInputs c = gen_inputs(*spec, 2);
  CHECK(c.mem.regions[0].data != a.mem.regions[0].data);

  for (uint64_t seed = 0; seed < 50; ++seed) {
    KernelInputs in = gen_inputs(*spec, seed);
    int64_t n = in.args.at("n");
    CHECK(n >= 8);
    CHECK(n <= 24);
    CHECK(in.mem.find("A")->size == static_cast<uint64_t>(n * n) * 8);
    CHECK(in.mem.find("x")->size == static_cast<uint64_t>(n) * 8);
    for (uint64_t i = 0; i < in.mem.find("x")->size / 8; ++i) {
      double v = in.mem.find("x")->read_f64(i);
      CHECK(v >= -1.0);
      CHECK(v <= 1.0);
    }
  }
}

TEST_CASE("memory layout: disjoint guard-gapped regions away from zero") {
  const KernelSpec* spec = find_kernel("bicg-mini");
  KernelInputs in = gen_inputs(*spec, 3);
  uint64_t prev_end = 0;
  for (const auto& r : in.mem.regions) {
    CHECK(r.base >= 4096);
    CHECK(r.base >= prev_end + 4096);
    prev_end = r.base + r.size;
  }
}

TEST_CASE("every kernel matches its independent oracle over 20 seeds") {
  for (const auto& k : kernel_corpus()) {
    CAPTURE(k.name);
    Interpreter interp(build_kernel(k.name));
    const Function& f = interp.function();
    for (uint64_t seed = 0; seed < 20; ++seed) {
      CAPTURE(seed);
      KernelInputs in = gen_inputs(k, seed);
      auto arrays = presage::testing::arrays_from_image(in.mem);
      ExecResult r = interp.run(in.mem, in.args, 100000000);
      REQUIRE(r.status == RunStatus::Completed);
      CHECK(r.dic < 10000000);  // corpus sizing keeps runs under the dic cap
      presage::testing::run_oracle(k.name, in.args, arrays);
      REQUIRE(r.results.size() == f.result_arrays.size());
      for (size_t i = 0; i < f.result_arrays.size(); ++i) {
        CAPTURE(f.result_arrays[i]);
        CHECK(r.results[i] == presage::testing::bytes_of(arrays.at(f.result_arrays[i])));
      }
    }
  }
}

TEST_CASE("shipped .pir files stay in sync with the corpus") {
  for (const auto& k : kernel_corpus()) {
    CAPTURE(k.name);
    std::ifstream in(std::string(PRESAGE_KERNELS_DIR) + "/" + k.name + ".pir");
    REQUIRE_MESSAGE(in.good(), "missing shipped kernel file");
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == print_ir(build_kernel(k.name)));
  }
}
