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
#include <map>
#include <string>
#include <vector>

#include "presage/interp.hpp"
#include "presage/ir.hpp"

namespace presage {

struct ScalarRange {
  std::string name;
  int64_t lo = 0;
  int64_t hi = 0;
};

// One benchmark kernel: IR source plus randomized-input metadata. Scalar
// ranges keep the fault-free dynamic instruction count well under the
// campaign cap (1e7).
struct KernelSpec {
  std::string name;
  std::string category;  // motivating | stencil | blas | solver
  std::string description;
  std::string source;  // textual IR
  std::vector<ScalarRange> scalars;
  bool has_derived_bases = false;

  // Array lengths implied by a scalar draw, in param order.
  std::vector<ArraySpec> (*lengths)(const std::map<std::string, int64_t>&) = nullptr;
};

const std::vector<KernelSpec>& kernel_corpus();
const KernelSpec* find_kernel(std::string_view name);

// Parsed and validated function for a corpus kernel; throws InterpError on
// unknown names.
Function build_kernel(std::string_view name);

struct KernelInputs {
  MemoryImage mem;
  std::map<std::string, int64_t> args;
};

// Deterministic per (spec, seed): scalar draws within the spec ranges,
// regions sized accordingly, f64 contents uniform in [-1, 1].
KernelInputs gen_inputs(const KernelSpec& spec, uint64_t seed);

}  // namespace presage
