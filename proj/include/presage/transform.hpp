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
#include <stdexcept>
#include <string>
#include <utility>

#include "presage/cfg.hpp"
#include "presage/ir.hpp"

namespace presage {

// Fixed-base address: base + elem_size * index, wrapping at 64 bits.
uint64_t fba_address(uint64_t base, uint64_t elem_size, int64_t index);

// Relative-base address: rel_base + elem_size * (index - rel_index), where
// rel_base is the address of element rel_index. Equal to the FBA address of
// `index` whenever both share the base behind rel_base.
uint64_t rba_address(uint64_t rel_base, uint64_t elem_size, int64_t index, int64_t rel_index);

// Running chain state for one (block, base): the operands carrying the last
// chained address and its absolute index at block entry. In the entry block
// these are the base param itself and an immediate 0 (the FBA fallback);
// elsewhere a pair of phis.
struct ChainNode {
  Operand addr;
  Operand idx;
};

struct PhiChainMap {
  std::map<std::pair<int, std::string>, ChainNode> nodes;
  std::map<std::string, uint64_t> phi_count;  // per base

  bool has(int block, const std::string& base) const {
    return nodes.count({block, base}) != 0;
  }
  const ChainNode& at(int block, const std::string& base) const {
    return nodes.at({block, base});
  }
};

struct BaseReport {
  uint64_t chained_geps = 0;
  uint64_t phis = 0;
  uint64_t detectors = 0;
};

struct TransformReport {
  std::map<std::string, BaseReport> per_base;
  uint64_t skipped_geps = 0;  // geps whose base is not an immutable param base
  uint64_t total_geps = 0;

  uint64_t chained_total() const;
  std::string json() const;
};

enum class UpdatePass { Pass1, Pass2 };

class TransformError : public std::runtime_error {
 public:
  explicit TransformError(const std::string& msg) : std::runtime_error(msg) {}
};

// Stage 1: insert an addr phi and an idx phi per (reachable non-entry block,
// chain base); slots from gep-bearing predecessors are filled immediately.
// `bases` must be the chain bases (addr params with at least one direct gep).
PhiChainMap create_inter_block_chains(Function& f, const CfgFacts& facts,
                                      const std::vector<std::string>& bases);

// Stage 1 fix-up: fill phi slots from pass-through predecessors. Pass1 covers
// forward/cross edges, Pass2 back edges. After Pass2 no slot may remain unset.
void update_inter_block_chains(Function& f, PhiChainMap& chains, const CfgFacts& facts,
                               const std::vector<std::string>& bases, UpdatePass pass);

// Stage 2: rewrite every gep on a chain base into relative-base form and
// thread the per-block (address, index) bookkeeping.
TransformReport create_intra_block_chains(Function& f, PhiChainMap& chains,
                                          const CfgFacts& facts,
                                          const std::vector<std::string>& bases);

// Exit-point detectors: per (exit block, base) an observed/duplicate address
// pair and a !check comparison.
void insert_detectors(Function& f, const PhiChainMap& chains, const CfgFacts& facts,
                      const std::vector<std::string>& bases, TransformReport& report);

struct TransformOptions {
  bool detectors = true;
};

// Full pipeline over a validated, reducible function. The input is not
// mutated. The result validates and preserves fault-free semantics.
std::pair<Function, TransformReport> transform(const Function& f, TransformOptions opts = {});

}  // namespace presage
