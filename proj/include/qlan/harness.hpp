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

#ifndef QLAN_HARNESS_HPP
#define QLAN_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qlan/report.hpp"

namespace qlan {

struct ExperimentConfig {
    std::string experiment;
    int d = 2;
    int r = 0;
    std::vector<double> mu;
    uint64_t n = 1000;
    std::vector<uint64_t> n_grid;
    uint64_t reps = 1000;
    /// Threshold of the preliminary estimator; defaults to mu_r / 8.
    std::optional<double> eps;
    /// n1 = floor(n^delta) copies go to the preliminary estimate.
    double delta = 0.6;
    std::optional<double> sigma0_2;
    std::optional<double> prior_b;
    uint64_t seed = 1;
    std::string out;

    /// Radius of the ball the true local parameter is drawn from.
    double theta_radius = 1.0;
    /// When positive, true parameters cycle over this many fixed points and the worst bucket is reported.
    int grid_points = 0;
    /// Observable for the functional experiment, {"re": [[..]], "im": [[..]]}; random if absent.
    std::optional<nlohmann::json> observable;
    std::string campaign;

    double resolved_eps() const;
    nlohmann::json to_json() const;
};

/// Schema check; unknown keys are rejected with ConfigError.
ExperimentConfig parse_config(const nlohmann::json &j);
ExperimentConfig load_config(const std::string &path);

RiskReport run_two_stage(const ExperimentConfig &cfg);
RiskReport run_gaussian_risk(const ExperimentConfig &cfg);
RiskReport run_bayes_risk(const ExperimentConfig &cfg);
RiskReport run_functional(const ExperimentConfig &cfg);
RiskReport run_tomography_concentration(const ExperimentConfig &cfg);
VerificationReport run_schurweyl_verify(const ExperimentConfig &cfg);

/// Names accepted in `experiment` and as CLI subcommands.
const std::vector<std::string> &experiment_names();

/// Report minus wall-clock fields; equal for equal (config, seed).
nlohmann::json reproducible_part(const nlohmann::json &report);

void write_json(const std::string &path, const nlohmann::json &j);
/// Appends one row, writing the header first if the file is new or empty.
void append_campaign_row(const std::string &path, const ExperimentConfig &cfg, const RiskReport &report);

}  // namespace qlan

#endif
