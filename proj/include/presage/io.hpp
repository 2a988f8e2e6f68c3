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

#include <stdexcept>
#include <string>

#include "presage/ir.hpp"
#include "presage/validate.hpp"

namespace presage {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int col, std::string code, const std::string& msg);
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& code() const { return code_; }

 private:
  int line_;
  int col_;
  std::string code_;
};

class ValidateError : public std::runtime_error {
 public:
  explicit ValidateError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

 private:
  std::vector<Diagnostic> diags_;
};

// Syntax-only parse; phi types are resolved but no structural validation runs.
// Throws ParseError.
Function parse_ir_raw(const std::string& text);

// parse_ir_raw followed by validate(); throws ValidateError on diagnostics.
Function parse_ir(const std::string& text);

// Canonical textual form; parse_ir(print_ir(f)) is structurally identical to f.
std::string print_ir(const Function& f);

// Shortest form of v that re-parses to the same double and is lexically a
// float literal (always contains '.', 'e' or 'E').
std::string format_f64(double v);

}  // namespace presage
