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

#ifndef QLAN_REPORT_HPP
#define QLAN_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qlan {

/// Running mean and standard error of the mean, accumulated in replicate order.
class McStats {
   public:
    void add(double x) {
        count_++;
        double delta = x - mean_;
        mean_ += delta / (double)count_;
        m2_ += delta * (x - mean_);
    }
    uint64_t count() const {
        return count_;
    }
    double mean() const {
        return mean_;
    }
    double sample_variance() const {
        return count_ > 1 ? m2_ / (double)(count_ - 1) : 0.0;
    }
    double stderr_of_mean() const;

   private:
    uint64_t count_ = 0;
    double mean_ = 0;
    double m2_ = 0;
};

struct RiskReport {
    std::string experiment;
    nlohmann::json config;
    double mc_estimate = 0;
    double mc_stderr = 0;
    std::optional<double> theory;
    uint64_t reps = 0;
    uint64_t seed = 0;
    double elapsed_ms = 0;
    nlohmann::json extras = nlohmann::json::object();

    nlohmann::json to_json() const;
};

struct VerificationRecord {
    std::string lambda;
    std::string check;
    double residual;
    bool pass;
    std::string detail;
};

struct VerificationReport {
    std::vector<VerificationRecord> records;
    /// Informational rows (observed gaps the theory bounds only up to constants).
    std::vector<VerificationRecord> observations;

    bool all_pass() const;
    void add(const std::string &lambda, const std::string &check, double residual, bool pass,
             const std::string &detail = "");
    void observe(const std::string &lambda, const std::string &check, double value, const std::string &detail = "");
    nlohmann::json to_json() const;
};

}  // namespace qlan

#endif
