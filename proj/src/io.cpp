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

#include "presage/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>

namespace presage {

namespace {

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

struct Cursor {
  std::string_view text;
  size_t pos = 0;
  int line;

  [[noreturn]] void fail(const std::string& msg, const std::string& code = "SYNTAX") const {
    throw ParseError(line, static_cast<int>(pos) + 1, code, msg);
  }

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  bool done() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool consume(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }

  bool consume_word(std::string_view w) {
    skip_ws();
    if (text.substr(pos, w.size()) == w &&
        (pos + w.size() >= text.size() || !ident_char(text[pos + w.size()]))) {
      pos += w.size();
      return true;
    }
    return false;
  }

  std::string ident() {
    skip_ws();
    size_t start = pos;
    if (pos >= text.size() || !ident_start(text[pos])) fail("expected identifier");
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  std::string value_name() {
    skip_ws();
    if (!consume('%')) fail("expected '%'");
    size_t start = pos;
    while (pos < text.size() && ident_char(text[pos])) ++pos;
    if (pos == start) fail("expected value name after '%'");
    return std::string(text.substr(start, pos - start));
  }

  struct Number {
    bool is_float = false;
    int64_t i = 0;
    double f = 0.0;
  };

  Number number() {
    skip_ws();
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    bool digits = false, is_float = false;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = true;
        ++pos;
      } else if (c == '.') {
        is_float = true;
        ++pos;
      } else if (c == 'e' || c == 'E') {
        is_float = true;
        ++pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
      } else {
        break;
      }
    }
    if (!digits) fail("expected number");
    std::string tok(text.substr(start, pos - start));
    Number n;
    n.is_float = is_float;
    if (is_float) {
      n.f = std::strtod(tok.c_str(), nullptr);
    } else {
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n.i);
      if (ec != std::errc{} || p != tok.data() + tok.size()) fail("integer literal out of range");
    }
    return n;
  }

  Operand operand() {
    skip_ws();
    if (peek() == '%') return Operand::val(value_name());
    Number n = number();
    return n.is_float ? Operand::imm_float(n.f) : Operand::imm_int(n.i);
  }

  std::optional<ValueType> scalar_type() {
    if (consume_word("i64")) return ValueType::Int64;
    if (consume_word("f64")) return ValueType::Float64;
    return std::nullopt;
  }
};

std::string_view strip_comment(std::string_view line) {
  size_t sc = line.find(';');
  if (sc != std::string_view::npos) line = line.substr(0, sc);
  size_t end = line.size();
  while (end > 0 && (line[end - 1] == ' ' || line[end - 1] == '\t' || line[end - 1] == '\r'))
    --end;
  return line.substr(0, end);
}

std::optional<CmpPred> pred_from_name(std::string_view s) {
  if (s == "eq") return CmpPred::Eq;
  if (s == "ne") return CmpPred::Ne;
  if (s == "lt") return CmpPred::Lt;
  if (s == "le") return CmpPred::Le;
  if (s == "gt") return CmpPred::Gt;
  if (s == "ge") return CmpPred::Ge;
  return std::nullopt;
}

Param parse_param(Cursor& c) {
  Param p;
  p.name = c.value_name();
  c.expect(':');
  if (c.consume_word("i64")) {
    p.type = ValueType::Int64;
  } else if (c.consume_word("f64")) {
    c.fail("f64 params are not supported; pass scalars as i64 or arrays");
  } else if (c.consume_word("addr")) {
    p.type = ValueType::Addr;
    c.expect('[');
    ArraySpec spec;
    spec.param = p.name;
    if (c.consume_word("f64"))
      spec.elem = ValueType::Float64;
    else if (c.consume_word("i64"))
      spec.elem = ValueType::Int64;
    else
      c.fail("expected element type f64 or i64");
    if (!c.consume_word("x")) c.fail("expected 'x' in array type");
    Cursor::Number n = c.number();
    if (n.is_float || n.i < 1) c.fail("array length must be a positive integer");
    spec.length = static_cast<uint64_t>(n.i);
    spec.elem_size = 8;
    c.expect(']');
    p.array = spec;
  } else {
    c.fail("expected type i64 or addr[...]");
  }
  return p;
}

void parse_func_header(Cursor& c, Function& f) {
  if (!c.consume_word("func")) c.fail("expected 'func'");
  c.expect('@');
  f.name = c.ident();
  c.expect('(');
  if (!c.consume(')')) {
    for (;;) {
      f.params.push_back(parse_param(c));
      if (c.consume(')')) break;
      c.expect(',');
    }
  }
  c.expect('-');
  c.expect('>');
  if (!c.consume_word("results")) c.fail("expected 'results'");
  c.expect('(');
  if (!c.consume(')')) {
    for (;;) {
      f.result_arrays.push_back(c.value_name());
      if (c.consume(')')) break;
      c.expect(',');
    }
  }
  if (!c.done()) c.fail("trailing tokens after function header");
}

Instruction parse_inst(Cursor& c) {
  Instruction inst;
  std::string result;
  if (c.peek() == '%') {
    result = c.value_name();
    c.expect('=');
  }

  std::string op = c.ident();
  if (op == "const") {
    Cursor::Number n = c.number();
    if (c.consume(':')) {
      if (!c.consume_word("f64")) c.fail("only ': f64' is valid on const");
      inst = Instruction::const_f64(result, n.is_float ? n.f : static_cast<double>(n.i));
    } else {
      if (n.is_float) c.fail("float const requires ': f64'");
      inst = Instruction::const_i64(result, n.i);
    }
  } else if (op == "add" || op == "sub" || op == "mul" || op == "div" || op == "rem") {
    Opcode o = op == "add"   ? Opcode::Add
               : op == "sub" ? Opcode::Sub
               : op == "mul" ? Opcode::Mul
               : op == "div" ? Opcode::Div
                             : Opcode::Rem;
    Operand a = c.operand();
    c.expect(',');
    inst = Instruction::int_binop(o, result, a, c.operand());
  } else if (op == "fadd" || op == "fsub" || op == "fmul" || op == "fdiv") {
    Opcode o = op == "fadd"   ? Opcode::FAdd
               : op == "fsub" ? Opcode::FSub
               : op == "fmul" ? Opcode::FMul
                              : Opcode::FDiv;
    Operand a = c.operand();
    c.expect(',');
    inst = Instruction::float_binop(o, result, a, c.operand());
  } else if (op == "icmp") {
    auto p = pred_from_name(c.ident());
    if (!p) c.fail("expected icmp predicate (eq|ne|lt|le|gt|ge)");
    Operand a = c.operand();
    c.expect(',');
    inst = Instruction::cmp(*p, result, a, c.operand());
  } else if (op == "gep") {
    Operand base = c.operand();
    c.expect(',');
    Operand index = c.operand();
    c.expect(',');
    Cursor::Number n = c.number();
    if (n.is_float || n.i < 1) c.fail("gep element size must be a positive integer");
    inst = Instruction::gep(result, base, index, static_cast<uint64_t>(n.i));
  } else if (op == "load") {
    Operand a = c.operand();
    c.expect(':');
    auto t = c.scalar_type();
    if (!t) c.fail("expected load type i64 or f64");
    inst = Instruction::load(result, a, *t);
  } else if (op == "store") {
    Operand v = c.operand();
    c.expect(',');
    inst = Instruction::store(v, c.operand());
  } else if (op == "phi") {
    std::vector<PhiIncoming> in;
    for (;;) {
      c.expect('[');
      PhiIncoming pi;
      pi.value = c.operand();
      c.expect(',');
      pi.pred = c.ident();
      c.expect(']');
      in.push_back(std::move(pi));
      if (!c.consume(',')) break;
    }
    ValueType t = ValueType::Int64;
    if (c.consume(':')) {
      auto st = c.scalar_type();
      if (!st) c.fail("expected phi type i64 or f64");
      t = *st;
    }
    inst = Instruction::phi(result, std::move(in), t);
  } else if (op == "br") {
    inst = Instruction::br(c.ident());
  } else if (op == "condbr") {
    Operand cond = c.operand();
    c.expect(',');
    std::string t = c.ident();
    c.expect(',');
    inst = Instruction::cond_br(cond, t, c.ident());
  } else if (op == "ret") {
    inst = Instruction::ret();
  } else if (op == "sitofp") {
    inst = Instruction::si_to_fp(result, c.operand());
  } else if (op == "fptosi") {
    inst = Instruction::fp_to_si(result, c.operand());
  } else {
    c.fail("unknown opcode '" + op + "'", "UNKNOWN_OPCODE");
  }

  bool produces = inst.op != Opcode::Store && inst.op != Opcode::Br &&
                  inst.op != Opcode::CondBr && inst.op != Opcode::Ret;
  if (!result.empty() && !produces) c.fail("'" + op + "' does not produce a value");
  if (result.empty() && produces) c.fail("'" + op + "' requires a result name");

  while (c.consume('!')) {
    std::string ann = c.ident();
    if (ann == "detector")
      inst.detector = true;
    else if (ann == "check")
      inst.check = true;
    else
      c.fail("unknown annotation '!" + ann + "'");
  }
  if (!c.done()) c.fail("trailing tokens after instruction");
  return inst;
}

}  // namespace

ParseError::ParseError(int line, int col, std::string code, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
      line_(line),
      col_(col),
      code_(std::move(code)) {}

ValidateError::ValidateError(std::vector<Diagnostic> diags)
    : std::runtime_error(diags.empty() ? "validation failed"
                                       : "validation failed: " + diags.front().str()),
      diags_(std::move(diags)) {}

Function parse_ir_raw(const std::string& text) {
  Function f;
  bool have_header = false;
  BasicBlock* cur = nullptr;

  int line_no = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    std::string_view raw(text.data() + start,
                         (nl == std::string::npos ? text.size() : nl) - start);
    start = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string_view body = strip_comment(raw);
    Cursor c{body, 0, line_no};
    if (c.done()) continue;

    if (!have_header) {
      parse_func_header(c, f);
      have_header = true;
      continue;
    }

    // Label line: ident ':' and nothing else.
    size_t save = c.pos;
    if (ident_start(c.peek())) {
      std::string id = c.ident();
      if (c.consume(':') && c.done()) {
        if (f.block_index(id) >= 0)
          c.fail("duplicate block label '" + id + "'", "DUPLICATE_BLOCK");
        f.blocks.push_back(BasicBlock{id, {}});
        cur = &f.blocks.back();
        continue;
      }
      c.pos = save;
    }

    if (!cur) c.fail("instruction before first block label");
    cur->insts.push_back(parse_inst(c));
  }

  if (!have_header) throw ParseError(1, 1, "SYNTAX", "missing function header");
  resolve_phi_types(f);
  return f;
}

Function parse_ir(const std::string& text) {
  Function f = parse_ir_raw(text);
  auto diags = validate(f);
  if (!diags.empty()) throw ValidateError(std::move(diags));
  return f;
}

std::string format_f64(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  std::string s(buf, p);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace {

void print_operand(std::ostringstream& os, const Operand& op) {
  switch (op.kind) {
    case Operand::Kind::Value: os << '%' << op.value; break;
    case Operand::Kind::ImmInt: os << op.imm; break;
    case Operand::Kind::ImmFloat: os << format_f64(op.fimm); break;
  }
}

void print_inst(std::ostringstream& os, const Instruction& inst) {
  os << "  ";
  if (inst.has_result()) os << '%' << inst.result << " = ";
  switch (inst.op) {
    case Opcode::Const:
      os << "const ";
      if (inst.type == ValueType::Float64)
        os << format_f64(inst.fimm) << " : f64";
      else
        os << inst.imm;
      break;
    case Opcode::Add:
    case Opcode::Sub:
    case Opcode::Mul:
    case Opcode::Div:
    case Opcode::Rem:
    case Opcode::FAdd:
    case Opcode::FSub:
    case Opcode::FMul:
    case Opcode::FDiv:
      os << opcode_name(inst.op) << ' ';
      print_operand(os, inst.operands[0]);
      os << ", ";
      print_operand(os, inst.operands[1]);
      break;
    case Opcode::ICmp:
      os << "icmp " << pred_name(inst.pred) << ' ';
      print_operand(os, inst.operands[0]);
      os << ", ";
      print_operand(os, inst.operands[1]);
      break;
    case Opcode::Gep:
      os << "gep ";
      print_operand(os, inst.operands[0]);
      os << ", ";
      print_operand(os, inst.operands[1]);
      os << ", " << inst.elem_size;
      break;
    case Opcode::Load:
      os << "load ";
      print_operand(os, inst.operands[0]);
      os << " : " << type_name(inst.type);
      break;
    case Opcode::Store:
      os << "store ";
      print_operand(os, inst.operands[0]);
      os << ", ";
      print_operand(os, inst.operands[1]);
      break;
    case Opcode::Phi: {
      os << "phi ";
      bool first = true;
      bool any_value = false;
      for (const auto& in : inst.incoming) {
        if (!first) os << ", ";
        first = false;
        os << '[';
        print_operand(os, in.value);
        os << ", " << in.pred << ']';
        any_value |= in.value.is_value();
      }
      // Type is inferable from a value operand; otherwise it must be spelled.
      if (!any_value) os << " : " << type_name(inst.type);
      break;
    }
    case Opcode::Br:
      os << "br " << inst.target;
      break;
    case Opcode::CondBr:
      os << "condbr ";
      print_operand(os, inst.operands[0]);
      os << ", " << inst.target_true << ", " << inst.target_false;
      break;
    case Opcode::Ret:
      os << "ret";
      break;
    case Opcode::SiToFp:
    case Opcode::FpToSi:
      os << opcode_name(inst.op) << ' ';
      print_operand(os, inst.operands[0]);
      break;
  }
  if (inst.detector) os << " !detector";
  if (inst.check) os << " !check";
  os << '\n';
}

}  // namespace

std::string print_ir(const Function& f) {
  std::ostringstream os;
  os << "func @" << f.name << '(';
  bool first = true;
  for (const auto& p : f.params) {
    if (!first) os << ", ";
    first = false;
    os << '%' << p.name << ": ";
    if (p.type == ValueType::Addr) {
      os << "addr[" << type_name(p.array ? p.array->elem : ValueType::Float64) << " x "
         << (p.array ? p.array->length : 0) << ']';
    } else {
      os << type_name(p.type);
    }
  }
  os << ") -> results(";
  first = true;
  for (const auto& r : f.result_arrays) {
    if (!first) os << ", ";
    first = false;
    os << '%' << r;
  }
  os << ")\n";

  for (const auto& bb : f.blocks) {
    os << bb.label << ":\n";
    for (const auto& inst : bb.insts) print_inst(os, inst);
  }
  return os.str();
}

}  // namespace presage
