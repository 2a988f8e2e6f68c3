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
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "presage/ir.hpp"

namespace presage {

// One mapped array region in the simulated address space.
struct Region {
  std::string name;  // addr param it binds to
  uint64_t base = 0;
  uint64_t size = 0;  // bytes
  ValueType elem = ValueType::Float64;
  uint64_t elem_size = 8;
  std::vector<uint8_t> data;

  double read_f64(uint64_t index) const;
  void write_f64(uint64_t index, double v);
};

// Byte-addressed space: regions in spec order separated by unmapped guard
// gaps; no region contains address 0.
struct MemoryImage {
  std::vector<Region> regions;

  static constexpr uint64_t kDefaultGuardGap = 4096;

  static MemoryImage build(const std::vector<ArraySpec>& arrays,
                           uint64_t guard_gap = kDefaultGuardGap);

  Region* find(std::string_view name);
  const Region* find(std::string_view name) const;
  // Region fully containing [addr, addr+len), or nullptr.
  const Region* region_of(uint64_t addr, uint64_t len) const;
  Region* region_of(uint64_t addr, uint64_t len);
};

enum class FaultModel { EM1, EM2 };

std::string_view fault_model_name(FaultModel m);

// One single-bit injection: flip `bit` of the destination value of the k-th
// eligible dynamic instance under `model`.
struct FaultSpec {
  FaultModel model = FaultModel::EM1;
  uint64_t k = 1;  // 1-based dynamic ordinal
  uint32_t bit = 0;
};

enum class RunStatus { Completed, Crash, Hang };

struct TraceRow {
  uint64_t step;  // dynamic instruction count at execution
  std::string id;
  Opcode op;
  uint64_t bits;  // destination value
};

struct ExecResult {
  RunStatus status = RunStatus::Completed;
  std::string crash_reason;
  std::vector<std::vector<uint8_t>> results;  // result_arrays order
  uint64_t dic = 0;
  uint64_t detect_count = 0;
  uint64_t n_em1 = 0;  // eligible dynamic instances observed
  uint64_t n_em2 = 0;
  bool injected = false;
};

enum class OutcomeKind { Sdc, Benign, Crash, Hang };

std::string_view outcome_name(OutcomeKind k);

struct Outcome {
  OutcomeKind kind = OutcomeKind::Benign;
  bool detected = false;
};

class InterpError : public std::runtime_error {
 public:
  explicit InterpError(const std::string& msg) : std::runtime_error(msg) {}
};

// Static fault sites (result ids) for a model. EM1: every non-detector gep.
// EM2: the backward def-use closure of every such gep's index operand,
// restricted to integer-valued instructions.
std::vector<std::string> enumerate_sites(const Function& f, FaultModel model);

// Deterministic interpreter over a validated function. Construction
// validates and pre-compiles; run() is const and thread-safe.
class Interpreter {
 public:
  explicit Interpreter(const Function& f);
  ~Interpreter();
  Interpreter(Interpreter&&) noexcept;
  Interpreter& operator=(Interpreter&&) noexcept;
  Interpreter(const Interpreter&) = delete;
  Interpreter& operator=(const Interpreter&) = delete;

  ExecResult run(const MemoryImage& mem, const std::map<std::string, int64_t>& scalar_args,
                 uint64_t budget, std::optional<FaultSpec> fault = std::nullopt,
                 std::vector<TraceRow>* trace = nullptr) const;

  const Function& function() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Eligible dynamic instance counts (N_EM1, N_EM2) from one fault-free run.
std::pair<uint64_t, uint64_t> profile(const Function& f, const MemoryImage& mem,
                                      const std::map<std::string, int64_t>& scalar_args,
                                      uint64_t budget);

// fault_free must have Completed; throws InterpError otherwise.
Outcome classify(const ExecResult& fault_free, const ExecResult& faulty);

std::string trace_csv(const std::vector<TraceRow>& rows);

}  // namespace presage
