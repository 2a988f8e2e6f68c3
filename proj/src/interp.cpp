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

#include "presage/interp.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <limits>
#include <set>
#include <sstream>

#include "presage/validate.hpp"

namespace presage {

std::string_view fault_model_name(FaultModel m) {
  return m == FaultModel::EM1 ? "em1" : "em2";
}

std::string_view outcome_name(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Sdc: return "sdc";
    case OutcomeKind::Benign: return "benign";
    case OutcomeKind::Crash: return "crash";
    case OutcomeKind::Hang: return "hang";
  }
  return "?";
}

double Region::read_f64(uint64_t index) const {
  double v;
  std::memcpy(&v, data.data() + index * elem_size, sizeof v);
  return v;
}

void Region::write_f64(uint64_t index, double v) {
  std::memcpy(data.data() + index * elem_size, &v, sizeof v);
}

MemoryImage MemoryImage::build(const std::vector<ArraySpec>& arrays, uint64_t guard_gap) {
  MemoryImage mem;
  uint64_t cursor = guard_gap == 0 ? kDefaultGuardGap : guard_gap;
  auto align_up = [](uint64_t v, uint64_t a) { return (v + a - 1) / a * a; };
  cursor = align_up(cursor, 4096);
  for (const auto& a : arrays) {
    Region r;
    r.name = a.param;
    r.base = cursor;
    r.size = a.length * a.elem_size;
    r.elem = a.elem;
    r.elem_size = a.elem_size;
    r.data.assign(r.size, 0);
    cursor = align_up(r.base + r.size + guard_gap, 4096);
    mem.regions.push_back(std::move(r));
  }
  return mem;
}

Region* MemoryImage::find(std::string_view name) {
  for (auto& r : regions)
    if (r.name == name) return &r;
  return nullptr;
}

const Region* MemoryImage::find(std::string_view name) const {
  for (const auto& r : regions)
    if (r.name == name) return &r;
  return nullptr;
}

const Region* MemoryImage::region_of(uint64_t addr, uint64_t len) const {
  for (const auto& r : regions)
    if (addr >= r.base && addr - r.base <= r.size && r.size - (addr - r.base) >= len) return &r;
  return nullptr;
}

Region* MemoryImage::region_of(uint64_t addr, uint64_t len) {
  return const_cast<Region*>(static_cast<const MemoryImage*>(this)->region_of(addr, len));
}

std::vector<std::string> enumerate_sites(const Function& f, FaultModel model) {
  std::vector<std::string> sites;
  if (model == FaultModel::EM1) {
    for (const auto& bb : f.blocks)
      for (const auto& inst : bb.insts)
        if (inst.op == Opcode::Gep && !inst.non_injectable()) sites.push_back(inst.result);
    return sites;
  }

  // EM2: backward def-use closure of every protected gep's index operand,
  // restricted to integer-valued instructions.
  std::map<std::string, const Instruction*> defs;
  for (const auto& bb : f.blocks)
    for (const auto& inst : bb.insts)
      if (inst.has_result()) defs[inst.result] = &inst;

  std::set<std::string> closure;
  std::vector<std::string> work;
  for (const auto& bb : f.blocks)
    for (const auto& inst : bb.insts)
      if (inst.op == Opcode::Gep && !inst.non_injectable() && inst.operands[1].is_value())
        work.push_back(inst.operands[1].value);

  std::set<std::string> visited;
  while (!work.empty()) {
    std::string name = std::move(work.back());
    work.pop_back();
    if (!visited.insert(name).second) continue;
    auto it = defs.find(name);
    if (it == defs.end()) continue;  // param
    const Instruction* def = it->second;
    if (def->type != ValueType::Int64 || def->non_injectable()) continue;
    closure.insert(name);
    for_each_operand(*def, [&](const Operand& op) {
      if (op.is_value()) work.push_back(op.value);
    });
  }

  for (const auto& bb : f.blocks)
    for (const auto& inst : bb.insts)
      if (inst.has_result() && closure.count(inst.result)) sites.push_back(inst.result);
  return sites;
}

namespace {

struct POp {
  bool imm = false;
  int reg = -1;
  uint64_t bits = 0;
};

struct PPhiIn {
  int pred = -1;
  POp value;
};

struct PPhi {
  int dest = -1;
  bool em2 = false;
  std::vector<PPhiIn> incoming;
  const std::string* id = nullptr;
};

struct PInst {
  Opcode op = Opcode::Ret;
  CmpPred pred = CmpPred::Eq;
  bool signed_cmp = true;
  int dest = -1;
  POp a, b;
  uint64_t elem_size = 0;
  int t_true = -1, t_false = -1;
  bool em1 = false, em2 = false, check = false;
  ValueType type = ValueType::Int64;
  const std::string* id = nullptr;
};

struct PBlock {
  std::vector<PPhi> phis;
  std::vector<PInst> body;
};

uint64_t f2b(double v) { return std::bit_cast<uint64_t>(v); }
double b2f(uint64_t b) { return std::bit_cast<double>(b); }

}  // namespace

struct Interpreter::Impl {
  Function func;
  std::vector<PBlock> blocks;
  int n_regs = 0;
  std::vector<std::pair<int, const Param*>> scalar_params;  // reg, param
  std::vector<std::pair<int, const Param*>> addr_params;
  std::map<std::string, ValueType> value_types;

  explicit Impl(const Function& f) : func(f) {
    auto diags = validate(func);
    if (!diags.empty())
      throw InterpError("function does not validate: " + diags.front().str());
    resolve_phi_types(func);
    compile();
  }

  int reg_of(const std::string& name, std::map<std::string, int>& regs) {
    auto it = regs.find(name);
    if (it != regs.end()) return it->second;
    int r = n_regs++;
    regs.emplace(name, r);
    return r;
  }

  void compile() {
    std::map<std::string, int> regs;
    for (const auto& p : func.params) {
      int r = reg_of(p.name, regs);
      if (p.type == ValueType::Addr)
        addr_params.push_back({r, &p});
      else
        scalar_params.push_back({r, &p});
      value_types[p.name] = p.type;
    }
    for (const auto& bb : func.blocks)
      for (const auto& inst : bb.insts)
        if (inst.has_result()) {
          reg_of(inst.result, regs);
          value_types[inst.result] = inst.type;
        }

    std::set<std::string> em1_set, em2_set;
    for (auto& s : enumerate_sites(func, FaultModel::EM1)) em1_set.insert(std::move(s));
    for (auto& s : enumerate_sites(func, FaultModel::EM2)) em2_set.insert(std::move(s));

    auto pop = [&](const Operand& op) {
      POp p;
      switch (op.kind) {
        case Operand::Kind::Value:
          p.reg = regs.at(op.value);
          break;
        case Operand::Kind::ImmInt:
          p.imm = true;
          p.bits = static_cast<uint64_t>(op.imm);
          break;
        case Operand::Kind::ImmFloat:
          p.imm = true;
          p.bits = f2b(op.fimm);
          break;
      }
      return p;
    };

    blocks.resize(func.blocks.size());
    for (size_t b = 0; b < func.blocks.size(); ++b) {
      PBlock& pb = blocks[b];
      for (const auto& inst : func.blocks[b].insts) {
        if (inst.op == Opcode::Phi) {
          PPhi phi;
          phi.dest = regs.at(inst.result);
          phi.em2 = em2_set.count(inst.result) != 0;
          phi.id = &inst.result;
          for (const auto& in : inst.incoming)
            phi.incoming.push_back({func.block_index(in.pred), pop(in.value)});
          pb.phis.push_back(std::move(phi));
          continue;
        }
        PInst pi;
        pi.op = inst.op;
        pi.pred = inst.pred;
        pi.type = inst.type;
        pi.elem_size = inst.elem_size;
        pi.check = inst.check;
        pi.id = &inst.result;
        if (inst.has_result()) {
          pi.dest = regs.at(inst.result);
          pi.em1 = em1_set.count(inst.result) != 0;
          pi.em2 = em2_set.count(inst.result) != 0;
        }
        switch (inst.op) {
          case Opcode::Const:
            pi.a.imm = true;
            pi.a.bits = inst.type == ValueType::Float64 ? f2b(inst.fimm)
                                                        : static_cast<uint64_t>(inst.imm);
            break;
          case Opcode::Br:
            pi.t_true = func.block_index(inst.target);
            break;
          case Opcode::CondBr:
            pi.a = pop(inst.operands[0]);
            pi.t_true = func.block_index(inst.target_true);
            pi.t_false = func.block_index(inst.target_false);
            break;
          case Opcode::Ret:
            break;
          case Opcode::ICmp: {
            pi.a = pop(inst.operands[0]);
            pi.b = pop(inst.operands[1]);
            // addr compares are unsigned
            ValueType t = ValueType::Int64;
            if (inst.operands[0].is_value()) t = value_types.at(inst.operands[0].value);
            pi.signed_cmp = t != ValueType::Addr;
            break;
          }
          default:
            if (!inst.operands.empty()) pi.a = pop(inst.operands[0]);
            if (inst.operands.size() > 1) pi.b = pop(inst.operands[1]);
            break;
        }
        pb.body.push_back(std::move(pi));
      }
    }
  }
};

Interpreter::Interpreter(const Function& f) : impl_(std::make_unique<Impl>(f)) {}
Interpreter::~Interpreter() = default;
Interpreter::Interpreter(Interpreter&&) noexcept = default;
Interpreter& Interpreter::operator=(Interpreter&&) noexcept = default;

const Function& Interpreter::function() const { return impl_->func; }

ExecResult Interpreter::run(const MemoryImage& mem, const std::map<std::string, int64_t>& args,
                            uint64_t budget, std::optional<FaultSpec> fault,
                            std::vector<TraceRow>* trace) const {
  const Impl& im = *impl_;
  ExecResult res;

  for (const auto& [name, _] : args)
    if (!im.func.find_param(name) || im.func.find_param(name)->type != ValueType::Int64)
      throw InterpError("unknown scalar argument %" + name);

  MemoryImage work = mem;
  std::vector<uint64_t> regs(static_cast<size_t>(im.n_regs), 0);
  for (const auto& [reg, param] : im.scalar_params) {
    auto it = args.find(param->name);
    if (it == args.end()) throw InterpError("missing argument %" + param->name);
    regs[reg] = static_cast<uint64_t>(it->second);
  }
  for (const auto& [reg, param] : im.addr_params) {
    const Region* r = work.find(param->name);
    if (!r) throw InterpError("no memory region bound to %" + param->name);
    regs[reg] = r->base;
  }

  const bool want_em1 = fault && fault->model == FaultModel::EM1;
  const bool want_em2 = fault && fault->model == FaultModel::EM2;
  const uint64_t fault_k = fault ? fault->k : 0;
  const uint64_t mask = fault ? (uint64_t{1} << fault->bit) : 0;

  auto snapshot = [&]() {
    for (const auto& name : im.func.result_arrays) {
      const Region* r = work.find(name);
      res.results.push_back(r ? r->data : std::vector<uint8_t>{});
    }
  };

  auto finish_crash = [&](std::string reason) {
    res.status = RunStatus::Crash;
    res.crash_reason = std::move(reason);
    snapshot();
    return res;
  };

  auto read_op = [&](const POp& o) { return o.imm ? o.bits : regs[o.reg]; };

  int cur = 0, prev = -1;
  std::vector<uint64_t> phi_tmp;
  char hexbuf[32];

  while (true) {
    const PBlock& pb = im.blocks[cur];

    if (!pb.phis.empty()) {
      phi_tmp.clear();
      for (const auto& phi : pb.phis) {
        const POp* in = nullptr;
        for (const auto& cand : phi.incoming)
          if (cand.pred == prev) {
            in = &cand.value;
            break;
          }
        if (!in) return finish_crash("phi without incoming edge");
        phi_tmp.push_back(read_op(*in));
      }
      for (size_t i = 0; i < pb.phis.size(); ++i) {
        const PPhi& phi = pb.phis[i];
        uint64_t v = phi_tmp[i];
        ++res.dic;
        if (res.dic > budget) {
          res.dic = budget;
          res.status = RunStatus::Hang;
          snapshot();
          return res;
        }
        if (phi.em2) {
          ++res.n_em2;
          if (want_em2 && res.n_em2 == fault_k) {
            v ^= mask;
            res.injected = true;
          }
        }
        regs[phi.dest] = v;
        if (trace) trace->push_back({res.dic, *phi.id, Opcode::Phi, v});
      }
    }

    for (const PInst& pi : pb.body) {
      ++res.dic;
      if (res.dic > budget) {
        res.dic = budget;
        res.status = RunStatus::Hang;
        snapshot();
        return res;
      }

      uint64_t value = 0;
      bool has_value = pi.dest >= 0;
      switch (pi.op) {
        case Opcode::Const:
          value = pi.a.bits;
          break;
        case Opcode::Add:
          value = read_op(pi.a) + read_op(pi.b);
          break;
        case Opcode::Sub:
          value = read_op(pi.a) - read_op(pi.b);
          break;
        case Opcode::Mul:
          value = read_op(pi.a) * read_op(pi.b);
          break;
        case Opcode::Div: {
          int64_t x = static_cast<int64_t>(read_op(pi.a));
          int64_t y = static_cast<int64_t>(read_op(pi.b));
          if (y == 0) return finish_crash("integer division by zero");
          if (y == -1)
            value = static_cast<uint64_t>(0) - static_cast<uint64_t>(x);  // wraps at INT64_MIN
          else
            value = static_cast<uint64_t>(x / y);
          break;
        }
        case Opcode::Rem: {
          int64_t x = static_cast<int64_t>(read_op(pi.a));
          int64_t y = static_cast<int64_t>(read_op(pi.b));
          if (y == 0) return finish_crash("integer remainder by zero");
          value = (y == -1) ? 0 : static_cast<uint64_t>(x % y);
          break;
        }
        case Opcode::ICmp: {
          uint64_t x = read_op(pi.a), y = read_op(pi.b);
          bool r = false;
          if (pi.signed_cmp) {
            int64_t sx = static_cast<int64_t>(x), sy = static_cast<int64_t>(y);
            switch (pi.pred) {
              case CmpPred::Eq: r = sx == sy; break;
              case CmpPred::Ne: r = sx != sy; break;
              case CmpPred::Lt: r = sx < sy; break;
              case CmpPred::Le: r = sx <= sy; break;
              case CmpPred::Gt: r = sx > sy; break;
              case CmpPred::Ge: r = sx >= sy; break;
            }
          } else {
            switch (pi.pred) {
              case CmpPred::Eq: r = x == y; break;
              case CmpPred::Ne: r = x != y; break;
              case CmpPred::Lt: r = x < y; break;
              case CmpPred::Le: r = x <= y; break;
              case CmpPred::Gt: r = x > y; break;
              case CmpPred::Ge: r = x >= y; break;
            }
          }
          value = r ? 1 : 0;
          if (pi.check && r) ++res.detect_count;
          break;
        }
        case Opcode::Gep:
          value = read_op(pi.a) + pi.elem_size * read_op(pi.b);
          break;
        case Opcode::Load: {
          uint64_t addr = read_op(pi.a);
          const Region* r = work.region_of(addr, 8);
          if (!r) {
            std::snprintf(hexbuf, sizeof hexbuf, "0x%llx",
                          static_cast<unsigned long long>(addr));
            return finish_crash(std::string("unmapped load at ") + hexbuf);
          }
          std::memcpy(&value, r->data.data() + (addr - r->base), 8);
          break;
        }
        case Opcode::Store: {
          uint64_t v = read_op(pi.a);
          uint64_t addr = read_op(pi.b);
          Region* r = work.region_of(addr, 8);
          if (!r) {
            std::snprintf(hexbuf, sizeof hexbuf, "0x%llx",
                          static_cast<unsigned long long>(addr));
            return finish_crash(std::string("unmapped store at ") + hexbuf);
          }
          std::memcpy(r->data.data() + (addr - r->base), &v, 8);
          break;
        }
        case Opcode::SiToFp:
          value = f2b(static_cast<double>(static_cast<int64_t>(read_op(pi.a))));
          break;
        case Opcode::FpToSi: {
          double d = b2f(read_op(pi.a));
          int64_t out;
          if (d != d)
            out = 0;
          else if (d >= 9223372036854775808.0)
            out = std::numeric_limits<int64_t>::max();
          else if (d < -9223372036854775808.0)
            out = std::numeric_limits<int64_t>::min();
          else
            out = static_cast<int64_t>(d);
          value = static_cast<uint64_t>(out);
          break;
        }
        case Opcode::FAdd:
          value = f2b(b2f(read_op(pi.a)) + b2f(read_op(pi.b)));
          break;
        case Opcode::FSub:
          value = f2b(b2f(read_op(pi.a)) - b2f(read_op(pi.b)));
          break;
        case Opcode::FMul:
          value = f2b(b2f(read_op(pi.a)) * b2f(read_op(pi.b)));
          break;
        case Opcode::FDiv:
          value = f2b(b2f(read_op(pi.a)) / b2f(read_op(pi.b)));
          break;
        case Opcode::Br:
          prev = cur;
          cur = pi.t_true;
          has_value = false;
          break;
        case Opcode::CondBr:
          prev = cur;
          cur = read_op(pi.a) != 0 ? pi.t_true : pi.t_false;
          has_value = false;
          break;
        case Opcode::Ret:
          res.status = RunStatus::Completed;
          snapshot();
          return res;
        case Opcode::Phi:
          break;  // handled at block entry
      }

      if (has_value) {
        if (pi.em1) {
          ++res.n_em1;
          if (want_em1 && res.n_em1 == fault_k) {
            value ^= mask;
            res.injected = true;
          }
        }
        if (pi.em2) {
          ++res.n_em2;
          if (want_em2 && res.n_em2 == fault_k) {
            value ^= mask;
            res.injected = true;
          }
        }
        regs[pi.dest] = value;
        if (trace) trace->push_back({res.dic, *pi.id, pi.op, value});
      }
      if (pi.op == Opcode::Br || pi.op == Opcode::CondBr) break;
    }
  }
}

std::pair<uint64_t, uint64_t> profile(const Function& f, const MemoryImage& mem,
                                      const std::map<std::string, int64_t>& scalar_args,
                                      uint64_t budget) {
  ExecResult r = Interpreter(f).run(mem, scalar_args, budget);
  return {r.n_em1, r.n_em2};
}

Outcome classify(const ExecResult& fault_free, const ExecResult& faulty) {
  if (fault_free.status != RunStatus::Completed)
    throw InterpError("fault-free execution did not complete");
  Outcome o;
  switch (faulty.status) {
    case RunStatus::Crash:
      o.kind = OutcomeKind::Crash;
      break;
    case RunStatus::Hang:
      o.kind = OutcomeKind::Hang;
      break;
    case RunStatus::Completed:
      o.kind = faulty.results == fault_free.results ? OutcomeKind::Benign : OutcomeKind::Sdc;
      break;
  }
  o.detected = faulty.status == RunStatus::Completed && faulty.detect_count > 0;
  return o;
}

std::string trace_csv(const std::vector<TraceRow>& rows) {
  std::ostringstream os;
  os << "step,id,opcode,value\n";
  char buf[32];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(r.bits));
    os << r.step << ",%" << r.id << ',' << opcode_name(r.op) << ',' << buf << '\n';
  }
  return os.str();
}

}  // namespace presage
