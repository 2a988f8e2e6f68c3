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

#include <string>
#include <vector>

#include "presage/ir.hpp"

namespace presage {

// Diagnostic codes emitted by validate():
//   EMPTY_FUNCTION, DUPLICATE_BLOCK, DUPLICATE_PARAM, RESULT_NOT_ARRAY_PARAM,
//   NO_TERMINATOR, MULTIPLE_TERMINATORS, TERMINATOR_NOT_LAST, PHI_NOT_LEADING,
//   UNDEFINED_BLOCK, ENTRY_HAS_PREDS, UNREACHABLE_BLOCK, PHI_EDGE_MISMATCH,
//   SSA_REDEF, UNDEFINED_VALUE, SSA_DOMINANCE, TYPE_MISMATCH, TYPE_UNRESOLVED,
//   GEP_ELEM_SIZE, STORE_ADDR_VALUE
struct Diagnostic {
  std::string code;
  std::string message;
  std::string block;  // label, may be empty
  std::string instr;  // result id or "<label>#<index>", may be empty

  std::string str() const;
};

// Structural validation; empty result iff all IR invariants hold.
std::vector<Diagnostic> validate(const Function& f);

// Fills in phi result types by fixpoint over incoming values. Returns false
// if some phi could not be resolved (validate reports TYPE_UNRESOLVED).
bool resolve_phi_types(Function& f);

}  // namespace presage
