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

// Command-line driver for the experiments.
//   qlan <experiment> --config cfg.json [--seed S] [--reps R] [--out report.json] [--campaign rows.csv]

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "qlan/error.hpp"
#include "qlan/harness.hpp"

using nlohmann::json;

namespace {

int run(const std::string &name, const std::string &config_path, std::optional<uint64_t> seed,
        std::optional<uint64_t> reps, std::string out, std::string campaign) {
    qlan::ExperimentConfig cfg = qlan::load_config(config_path);
    if (cfg.experiment != name) {
        throw qlan::Error(qlan::ErrorCode::ConfigError,
                          "config experiment '" + cfg.experiment + "' does not match subcommand '" + name + "'");
    }
    if (seed) cfg.seed = *seed;
    if (reps) cfg.reps = *reps;
    if (!out.empty()) cfg.out = out;
    if (!campaign.empty()) cfg.campaign = campaign;

    json report;
    int status = 0;
    std::optional<qlan::RiskReport> risk;
    if (name == "schurweyl-verify") {
        qlan::VerificationReport v = qlan::run_schurweyl_verify(cfg);
        report = v.to_json();
        report["config"] = cfg.to_json();
        status = v.all_pass() ? 0 : 2;
    } else if (name == "two-stage") {
        risk = qlan::run_two_stage(cfg);
    } else if (name == "gaussian-risk") {
        risk = qlan::run_gaussian_risk(cfg);
    } else if (name == "bayes-risk") {
        risk = qlan::run_bayes_risk(cfg);
    } else if (name == "functional") {
        risk = qlan::run_functional(cfg);
    } else {
        risk = qlan::run_tomography_concentration(cfg);
    }
    if (risk) {
        report = risk->to_json();
    }

    if (cfg.out.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        qlan::write_json(cfg.out, report);
        if (risk) {
            std::string rows = cfg.campaign;
            if (rows.empty()) {
                rows = (std::filesystem::path(cfg.out).parent_path() / "campaign.csv").string();
            }
            qlan::append_campaign_row(rows, cfg, *risk);
        }
    }
    return status;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Local asymptotic normality experiments for finite-dimensional quantum states"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> reps;
    std::string out;
    std::string campaign;
    std::string chosen;
    for (const auto &name : qlan::experiment_names()) {
        CLI::App *sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "override the base seed");
        sub->add_option("--reps", reps, "override the replicate count");
        sub->add_option("--out", out, "write the JSON report here instead of stdout");
        sub->add_option("--campaign", campaign, "CSV file to append a summary row to");
        sub->callback([&chosen, name] { chosen = name; });
    }
    CLI11_PARSE(app, argc, argv);

    try {
        return run(chosen, config_path, seed, reps, out, campaign);
    } catch (const qlan::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
