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
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "presage/interp.hpp"

namespace presage {

enum class Variant { Native, Presage };

std::string_view variant_name(Variant v);

struct CampaignConfig {
  std::string kernel;
  Variant variant = Variant::Native;
  FaultModel model = FaultModel::EM1;
  uint64_t runs = 500;
  uint64_t seed = 0;
  double budget_multiplier = 10.0;
  int jobs = 0;  // 0 = hardware concurrency
};

struct RunRecord {
  uint64_t run = 0;
  uint64_t k = 0;
  uint32_t bit = 0;
  bool no_site = false;
  OutcomeKind outcome = OutcomeKind::Benign;
  bool detected = false;
};

struct CampaignCounts {
  uint64_t sdc = 0;
  uint64_t benign = 0;
  uint64_t crash = 0;
  uint64_t hang = 0;
  uint64_t no_site = 0;
};

// Aggregate of one fault-injection campaign. Rates use runs - no_site as the
// denominator; detection_rate is detected_sdc / sdc (undefined when sdc = 0).
struct CampaignResult {
  CampaignConfig config;
  CampaignCounts counts;
  uint64_t detected_sdc = 0;
  uint64_t detected_total = 0;
  double mean_fault_free_dic = 0.0;
  uint64_t fault_free_detections = 0;  // must stay 0; tracked for the acceptance gate
  std::vector<RunRecord> records;

  uint64_t denominator() const;
  double rate(uint64_t count) const;
  bool has_detection_rate() const { return counts.sdc > 0; }
  double detection_rate() const;  // only when has_detection_rate()

  nlohmann::json json() const;
  std::string csv() const;  // per-run records: run,k,bit,outcome,detected
};

class CampaignError : public std::runtime_error {
 public:
  explicit CampaignError(const std::string& msg) : std::runtime_error(msg) {}
};

// Deterministic function of the config; identical results for any jobs count.
CampaignResult run_campaign(const CampaignConfig& cfg);

// Per-kernel comparison over up to four campaign reports (variant x model).
// Missing sets yield nulls.
nlohmann::json compare_report(const std::vector<nlohmann::json>& results);

}  // namespace presage
