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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "presage/campaign.hpp"
#include "presage/cfg.hpp"
#include "presage/interp.hpp"
#include "presage/io.hpp"
#include "presage/kernels.hpp"
#include "presage/rng.hpp"
#include "presage/transform.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << content;
}

presage::Function load_function(const std::string& path) {
  return presage::parse_ir(read_file(path));
}

// "em1:3:17" -> FaultSpec
presage::FaultSpec parse_inject(const std::string& s) {
  presage::FaultSpec fs;
  size_t a = s.find(':');
  size_t b = a == std::string::npos ? std::string::npos : s.find(':', a + 1);
  if (a == std::string::npos || b == std::string::npos)
    throw UsageError("--inject expects MODEL:K:BIT, e.g. em1:3:17");
  std::string model = s.substr(0, a);
  if (model == "em1")
    fs.model = presage::FaultModel::EM1;
  else if (model == "em2")
    fs.model = presage::FaultModel::EM2;
  else
    throw UsageError("unknown fault model '" + model + "'");
  fs.k = std::stoull(s.substr(a + 1, b - a - 1));
  fs.bit = static_cast<uint32_t>(std::stoul(s.substr(b + 1)));
  if (fs.k < 1 || fs.bit > 63) throw UsageError("--inject wants K >= 1 and BIT in 0..63");
  return fs;
}

std::map<std::string, int64_t> parse_args_list(const std::vector<std::string>& kvs) {
  std::map<std::string, int64_t> args;
  for (const auto& kv : kvs) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--arg expects NAME=VALUE");
    std::string name = kv.substr(0, eq);
    if (!name.empty() && name[0] == '%') name = name.substr(1);
    args[name] = std::stoll(kv.substr(eq + 1));
  }
  return args;
}

int cmd_transform(const std::string& in_path, const std::string& out_path, bool no_detectors,
                  const std::string& report_path) {
  presage::Function f = load_function(in_path);
  auto [g, report] = presage::transform(f, {.detectors = !no_detectors});
  std::string text = presage::print_ir(g);
  if (out_path.empty() || out_path == "-")
    std::cout << text;
  else
    write_file(out_path, text);
  if (!report_path.empty()) write_file(report_path, report.json() + "\n");
  return 0;
}

int cmd_cfg(const std::string& in_path) {
  presage::Function f = load_function(in_path);
  presage::CfgFacts facts = presage::analyze(f);
  std::cout << presage::cfg_facts_json(f, facts) << "\n";
  return 0;
}

int cmd_run(const std::string& in_path, const std::vector<std::string>& arg_kvs,
            const std::vector<std::string>& len_kvs, uint64_t fill_seed, uint64_t budget,
            const std::string& inject, const std::string& trace_path) {
  presage::Function f = load_function(in_path);

  std::vector<presage::ArraySpec> arrays;
  auto lens = parse_args_list(len_kvs);
  for (const auto& p : f.params) {
    if (p.type != presage::ValueType::Addr) continue;
    presage::ArraySpec spec = *p.array;
    auto it = lens.find(p.name);
    if (it != lens.end()) spec.length = static_cast<uint64_t>(it->second);
    arrays.push_back(spec);
  }
  presage::MemoryImage mem = presage::MemoryImage::build(arrays);
  if (fill_seed != 0) {
    presage::SplitMix64 rng(fill_seed);
    for (auto& r : mem.regions) {
      uint64_t count = r.size / r.elem_size;
      for (uint64_t i = 0; i < count; ++i) r.write_f64(i, rng.next_pm1());
    }
  }

  std::optional<presage::FaultSpec> fault;
  if (!inject.empty()) fault = parse_inject(inject);

  std::vector<presage::TraceRow> trace;
  presage::Interpreter interp(f);
  presage::ExecResult res =
      interp.run(mem, parse_args_list(arg_kvs), budget, fault,
                 trace_path.empty() ? nullptr : &trace);
  if (!trace_path.empty()) write_file(trace_path, presage::trace_csv(trace));

  nlohmann::json j;
  switch (res.status) {
    case presage::RunStatus::Completed: j["status"] = "completed"; break;
    case presage::RunStatus::Crash: j["status"] = "crash"; break;
    case presage::RunStatus::Hang: j["status"] = "hang"; break;
  }
  if (!res.crash_reason.empty()) j["crash_reason"] = res.crash_reason;
  j["dic"] = res.dic;
  j["detect_count"] = res.detect_count;
  j["eligible_sites"] = {{"em1", res.n_em1}, {"em2", res.n_em2}};
  j["injected"] = res.injected;
  for (size_t i = 0; i < f.result_arrays.size(); ++i) {
    uint64_t h = 1469598103934665603ull;
    for (uint8_t byte : res.results[i]) h = (h ^ byte) * 1099511628211ull;
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
    j["result_fnv1a"][f.result_arrays[i]] = buf;
  }
  std::cout << j.dump(2) << "\n";
  return res.status == presage::RunStatus::Completed ? 0 : kExitError;
}

int cmd_kernels(bool list, const std::string& emit_dir) {
  if (!emit_dir.empty()) {
    for (const auto& k : presage::kernel_corpus()) {
      presage::Function f = presage::build_kernel(k.name);
      write_file(emit_dir + "/" + k.name + ".pir", presage::print_ir(f));
    }
    return 0;
  }
  if (list) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& k : presage::kernel_corpus()) {
      nlohmann::json e;
      e["name"] = k.name;
      e["category"] = k.category;
      e["description"] = k.description;
      e["has_derived_bases"] = k.has_derived_bases;
      for (const auto& s : k.scalars) e["scalars"][s.name] = {{"lo", s.lo}, {"hi", s.hi}};
      j.push_back(e);
    }
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_campaign(const presage::CampaignConfig& cfg, const std::string& out_path,
                 const std::string& csv_path) {
  presage::CampaignResult res = presage::run_campaign(cfg);
  std::string text = res.json().dump(2) + "\n";
  if (out_path.empty() || out_path == "-")
    std::cout << text;
  else
    write_file(out_path, text);
  if (!csv_path.empty()) write_file(csv_path, res.csv());
  return 0;
}

int cmd_compare(const std::vector<std::string>& inputs, const std::string& out_path) {
  std::vector<nlohmann::json> results;
  for (const auto& path : inputs) results.push_back(nlohmann::json::parse(read_file(path)));
  nlohmann::json cmp = presage::compare_report(results);
  std::string text = cmp.dump(2) + "\n";
  if (out_path.empty() || out_path == "-")
    std::cout << text;
  else
    write_file(out_path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured-address protection laboratory"};
  app.require_subcommand(1);

  // transform
  auto* t = app.add_subcommand("transform", "rewrite address chains and insert detectors");
  std::string t_in, t_out, t_report;
  bool t_nodet = false;
  t->add_option("input", t_in, "input .pir file")->required();
  t->add_option("-o,--output", t_out, "output .pir file (default stdout)");
  t->add_flag("--no-detectors", t_nodet, "skip exit-point detector insertion");
  t->add_option("--report", t_report, "write a transform report JSON");

  // cfg
  auto* c = app.add_subcommand("cfg", "dump control-flow facts as JSON");
  std::string c_in;
  bool c_dump = false;
  c->add_option("input", c_in, "input .pir file")->required();
  c->add_flag("--dump", c_dump, "print facts (default)");

  // run
  auto* r = app.add_subcommand("run", "interpret a function once");
  std::string r_in, r_inject, r_trace;
  std::vector<std::string> r_args, r_lens;
  uint64_t r_fill = 0, r_budget = 100'000'000;
  r->add_option("input", r_in, "input .pir file")->required();
  r->add_option("--arg,--args", r_args, "scalar argument NAME=VALUE (repeatable)");
  r->add_option("--len", r_lens, "array length override NAME=COUNT (repeatable)");
  r->add_option("--fill-seed", r_fill, "fill arrays with seeded values in [-1,1] (0 = zeros)");
  r->add_option("--budget", r_budget, "dynamic instruction budget");
  r->add_option("--inject", r_inject, "single-bit fault MODEL:K:BIT (e.g. em1:3:17)");
  r->add_option("--trace", r_trace, "write a value trace CSV");

  // kernels
  auto* k = app.add_subcommand("kernels", "list or export the benchmark corpus");
  bool k_list = false;
  std::string k_emit;
  k->add_flag("--list", k_list, "print corpus metadata JSON");
  k->add_option("--emit-dir", k_emit, "write each kernel as DIR/<name>.pir");

  // campaign
  auto* g = app.add_subcommand("campaign", "run a fault-injection campaign");
  presage::CampaignConfig cfg;
  std::string g_variant = "native", g_model = "em1", g_out, g_csv;
  g->add_option("--kernel", cfg.kernel, "corpus kernel name")->required();
  g->add_option("--variant", g_variant, "native | presage")
      ->check(CLI::IsMember({"native", "presage"}));
  g->add_option("--model", g_model, "em1 | em2")->check(CLI::IsMember({"em1", "em2"}));
  g->add_option("--runs", cfg.runs, "independent runs")->check(CLI::PositiveNumber);
  g->add_option("--seed", cfg.seed, "campaign seed");
  g->add_option("--budget-mult", cfg.budget_multiplier, "hang budget, x fault-free dic");
  g->add_option("--jobs", cfg.jobs, "worker threads (0 = auto)");
  g->add_option("-o,--output", g_out, "report JSON path (default stdout)");
  g->add_option("--csv", g_csv, "per-run record CSV path");

  // compare
  auto* p = app.add_subcommand("compare", "combine campaign reports for one kernel");
  std::vector<std::string> p_in;
  std::string p_out;
  p->add_option("inputs", p_in, "campaign report JSON files")->required()->expected(-1);
  p->add_option("-o,--output", p_out, "comparison JSON path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*t) return cmd_transform(t_in, t_out, t_nodet, t_report);
    if (*c) return cmd_cfg(c_in);
    if (*r) return cmd_run(r_in, r_args, r_lens, r_fill, r_budget, r_inject, r_trace);
    if (*k) return cmd_kernels(k_list || k_emit.empty(), k_emit);
    if (*g) {
      cfg.variant = g_variant == "presage" ? presage::Variant::Presage : presage::Variant::Native;
      cfg.model = g_model == "em2" ? presage::FaultModel::EM2 : presage::FaultModel::EM1;
      return cmd_campaign(cfg, g_out, g_csv);
    }
    if (*p) return cmd_compare(p_in, p_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const presage::ParseError& e) {
    std::cerr << "parse error: " << e.what() << " [" << e.code() << "]\n";
    return kExitError;
  } catch (const presage::ValidateError& e) {
    std::cerr << "validation failed:\n";
    for (const auto& d : e.diagnostics()) std::cerr << "  " << d.str() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
