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

#include "presage/campaign.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "presage/kernels.hpp"
#include "presage/rng.hpp"
#include "presage/transform.hpp"

namespace presage {

namespace {

// Fault-free executions must finish well under this on any corpus draw.
constexpr uint64_t kFaultFreeBudget = 100'000'000;

}  // namespace

std::string_view variant_name(Variant v) {
  return v == Variant::Native ? "native" : "presage";
}

uint64_t CampaignResult::denominator() const {
  return counts.sdc + counts.benign + counts.crash + counts.hang;
}

double CampaignResult::rate(uint64_t count) const {
  uint64_t d = denominator();
  return d == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(d);
}

double CampaignResult::detection_rate() const {
  return static_cast<double>(detected_sdc) / static_cast<double>(counts.sdc);
}

nlohmann::json CampaignResult::json() const {
  nlohmann::json j;
  j["schema"] = "presage.campaign.v1";
  j["config"] = {{"kernel", config.kernel},
                 {"variant", std::string(variant_name(config.variant))},
                 {"model", std::string(fault_model_name(config.model))},
                 {"runs", config.runs},
                 {"seed", config.seed},
                 {"budget_multiplier", config.budget_multiplier}};
  j["counts"] = {{"sdc", counts.sdc},
                 {"benign", counts.benign},
                 {"crash", counts.crash},
                 {"hang", counts.hang},
                 {"no_site", counts.no_site}};
  j["rates"] = {{"sdc", rate(counts.sdc)},
                {"benign", rate(counts.benign)},
                {"crash", rate(counts.crash)},
                {"hang", rate(counts.hang)},
                {"crash_plus_hang", rate(counts.crash + counts.hang)}};
  j["detected_sdc"] = detected_sdc;
  j["detected_total"] = detected_total;
  j["detection_rate"] =
      has_detection_rate() ? nlohmann::json(detection_rate()) : nlohmann::json(nullptr);
  j["mean_fault_free_dic"] = mean_fault_free_dic;
  j["fault_free_detections"] = fault_free_detections;
  j["dic_overhead"] = nullptr;  // filled by the comparison report
  return j;
}

std::string CampaignResult::csv() const {
  std::ostringstream os;
  os << "run,k,bit,outcome,detected\n";
  for (const auto& r : records) {
    os << r.run << ',' << r.k << ',' << r.bit << ','
       << (r.no_site ? "no_site" : outcome_name(r.outcome)) << ',' << (r.detected ? 1 : 0)
       << '\n';
  }
  return os.str();
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
  if (cfg.runs < 1) throw CampaignError("runs must be >= 1");
  const KernelSpec* spec = find_kernel(cfg.kernel);
  if (!spec) throw CampaignError("unknown kernel '" + cfg.kernel + "'");

  Function f = build_kernel(cfg.kernel);
  if (cfg.variant == Variant::Presage) f = transform(f).first;
  const Interpreter interp(f);

  CampaignResult result;
  result.config = cfg;
  result.records.resize(cfg.runs);
  std::vector<uint64_t> dics(cfg.runs, 0);
  std::atomic<uint64_t> ff_detections{0};

  std::atomic<uint64_t> next{0};
  std::mutex err_mu;
  std::string err;

  auto worker = [&]() {
    try {
      for (;;) {
        uint64_t r = next.fetch_add(1);
        if (r >= cfg.runs) return;

        KernelInputs in = gen_inputs(*spec, mix_seed(cfg.seed, r, 0));
        ExecResult ff = interp.run(in.mem, in.args, kFaultFreeBudget);
        if (ff.status != RunStatus::Completed)
          throw CampaignError("fault-free run " + std::to_string(r) + " did not complete");
        dics[r] = ff.dic;
        if (ff.detect_count > 0) ff_detections += ff.detect_count;

        RunRecord rec;
        rec.run = r;
        uint64_t n_sites = cfg.model == FaultModel::EM1 ? ff.n_em1 : ff.n_em2;
        if (n_sites == 0) {
          rec.no_site = true;
        } else {
          SplitMix64 frng(mix_seed(cfg.seed, r, 1));
          rec.k = frng.range(1, n_sites);
          rec.bit = static_cast<uint32_t>(frng.range(0, 63));
          uint64_t budget = std::max<uint64_t>(
              static_cast<uint64_t>(cfg.budget_multiplier * static_cast<double>(ff.dic)),
              ff.dic + 1024);
          ExecResult faulty =
              interp.run(in.mem, in.args, budget, FaultSpec{cfg.model, rec.k, rec.bit});
          Outcome out = classify(ff, faulty);
          rec.outcome = out.kind;
          rec.detected = out.detected;
        }
        result.records[r] = rec;
      }
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (err.empty()) err = e.what();
      next.store(cfg.runs);  // drain remaining work
    }
  };

  unsigned jobs = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                               : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<uint64_t>(1, cfg.runs));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (!err.empty()) throw CampaignError(err);

  uint64_t dic_sum = 0;
  for (uint64_t r = 0; r < cfg.runs; ++r) {
    dic_sum += dics[r];
    const RunRecord& rec = result.records[r];
    if (rec.no_site) {
      result.counts.no_site++;
      continue;
    }
    switch (rec.outcome) {
      case OutcomeKind::Sdc: result.counts.sdc++; break;
      case OutcomeKind::Benign: result.counts.benign++; break;
      case OutcomeKind::Crash: result.counts.crash++; break;
      case OutcomeKind::Hang: result.counts.hang++; break;
    }
    if (rec.detected) {
      result.detected_total++;
      if (rec.outcome == OutcomeKind::Sdc) result.detected_sdc++;
    }
  }
  result.mean_fault_free_dic = static_cast<double>(dic_sum) / static_cast<double>(cfg.runs);
  result.fault_free_detections = ff_detections.load();
  return result;
}

namespace {

std::string set_key(const nlohmann::json& r) {
  return r.at("config").at("variant").get<std::string>() + "_" +
         r.at("config").at("model").get<std::string>();
}

nlohmann::json set_summary(const nlohmann::json& r) {
  nlohmann::json s;
  s["counts"] = r.at("counts");
  s["rates"] = r.at("rates");
  s["detection_rate"] = r.at("detection_rate");
  s["mean_fault_free_dic"] = r.at("mean_fault_free_dic");
  s["fault_free_detections"] = r.at("fault_free_detections");
  s["dic_overhead"] = nullptr;
  return s;
}

}  // namespace

nlohmann::json compare_report(const std::vector<nlohmann::json>& results) {
  nlohmann::json cmp;
  cmp["schema"] = "presage.compare.v1";

  std::string kernel;
  std::map<std::string, nlohmann::json> sets;
  for (const auto& r : results) {
    std::string k = r.at("config").at("kernel").get<std::string>();
    if (kernel.empty()) kernel = k;
    if (k != kernel)
      throw CampaignError("compare inputs span different kernels: " + kernel + " vs " + k);
    sets[set_key(r)] = set_summary(r);
  }
  cmp["kernel"] = kernel;

  for (const char* model : {"em1", "em2"}) {
    std::string nk = std::string("native_") + model;
    std::string pk = std::string("presage_") + model;
    bool have = sets.count(nk) && sets.count(pk);
    nlohmann::json delta = nullptr, overhead = nullptr, det = nullptr;
    if (have) {
      double nat = sets[nk]["rates"]["crash_plus_hang"].get<double>();
      double pre = sets[pk]["rates"]["crash_plus_hang"].get<double>();
      delta = pre - nat;
      double nd = sets[nk]["mean_fault_free_dic"].get<double>();
      double pd = sets[pk]["mean_fault_free_dic"].get<double>();
      if (nd > 0) {
        overhead = pd / nd;
        sets[pk]["dic_overhead"] = pd / nd;
      }
    }
    if (sets.count(pk)) det = sets[pk]["detection_rate"];
    cmp["crash_plus_hang_delta"][model] = delta;
    cmp["dic_overhead"][model] = overhead;
    cmp["detection_rate"][model] = det;
  }

  for (const char* key : {"native_em1", "native_em2", "presage_em1", "presage_em2"})
    cmp["sets"][key] = sets.count(key) ? sets[key] : nlohmann::json(nullptr);
  return cmp;
}

}  // namespace presage
