// Copyright 2026 The qlan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qlan/report.hpp"

#include <cmath>

namespace qlan {

double McStats::stderr_of_mean() const {
    if (count_ < 2) {
        return 0.0;
    }
    return std::sqrt(sample_variance() / (double)count_);
}

nlohmann::json RiskReport::to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["config"] = config;
    j["mc_estimate"] = mc_estimate;
    j["mc_stderr"] = mc_stderr;
    j["theory"] = theory ? nlohmann::json(*theory) : nlohmann::json(nullptr);
    j["reps"] = reps;
    j["seed"] = seed;
    j["elapsed_ms"] = elapsed_ms;
    j["extras"] = extras;
    return j;
}

bool VerificationReport::all_pass() const {
    for (const auto &r : records) {
        if (!r.pass) {
            return false;
        }
    }
    return true;
}

void VerificationReport::add(
    const std::string &lambda, const std::string &check, double residual, bool pass, const std::string &detail) {
    records.push_back({lambda, check, residual, pass, detail});
}

void VerificationReport::observe(
    const std::string &lambda, const std::string &check, double value, const std::string &detail) {
    observations.push_back({lambda, check, value, true, detail});
}

static nlohmann::json record_json(const VerificationRecord &r) {
    nlohmann::json j;
    j["lambda"] = r.lambda;
    j["check"] = r.check;
    j["residual"] = r.residual;
    j["pass"] = r.pass;
    if (!r.detail.empty()) {
        j["detail"] = r.detail;
    }
    return j;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json j;
    j["all_pass"] = all_pass();
    j["records"] = nlohmann::json::array();
    for (const auto &r : records) {
        j["records"].push_back(record_json(r));
    }
    j["observations"] = nlohmann::json::array();
    for (const auto &r : observations) {
        j["observations"].push_back(record_json(r));
    }
    return j;
}

}  // namespace qlan
