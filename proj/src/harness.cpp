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

#include "qlan/harness.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "qlan/functional.hpp"
#include "qlan/gaussian.hpp"
#include "qlan/local_model.hpp"
#include "qlan/schur_weyl.hpp"
#include "qlan/tomography.hpp"

namespace qlan {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string &msg) {
    throw Error(ErrorCode::ConfigError, msg);
}

template <typename T>
T get_as(const json &j, const char *key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        config_error(std::string("field '") + key + "': " + e.what());
    }
}

class Timer {
   public:
    Timer() : start_(std::chrono::steady_clock::now()) {
    }
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }

   private:
    std::chrono::steady_clock::time_point start_;
};

bool needs_spectrum(const std::string &experiment) {
    return experiment != "schurweyl-verify";
}

CenterState center_of(const ExperimentConfig &cfg) {
    RealVector mu(cfg.mu.size());
    for (size_t k = 0; k < cfg.mu.size(); k++) {
        mu[(int)k] = cfg.mu[k];
    }
    return CenterState::diagonal(mu, cfg.d);
}

RiskReport base_report(const ExperimentConfig &cfg, const McStats &stats) {
    RiskReport rep;
    rep.experiment = cfg.experiment;
    rep.config = cfg.to_json();
    rep.mc_estimate = stats.mean();
    rep.mc_stderr = stats.stderr_of_mean();
    rep.reps = cfg.reps;
    rep.seed = cfg.seed;
    return rep;
}

Matrix observable_from_json(const json &j, int d) {
    std::set<std::string> allowed{"re", "im"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) {
            config_error("unknown key in observable: " + it.key());
        }
    }
    Matrix a = Matrix::Zero(d, d);
    for (const char *part : {"re", "im"}) {
        if (!j.contains(part)) {
            continue;
        }
        auto rows = j.at(part).get<std::vector<std::vector<double>>>();
        if ((int)rows.size() != d) {
            config_error("observable must be d x d");
        }
        for (int i = 0; i < d; i++) {
            if ((int)rows[i].size() != d) {
                config_error("observable must be d x d");
            }
            for (int k = 0; k < d; k++) {
                a(i, k) += std::string(part) == "re" ? Complex(rows[i][k], 0) : Complex(0, rows[i][k]);
            }
        }
    }
    return a;
}

}  // namespace

const std::vector<std::string> &experiment_names() {
    static const std::vector<std::string> names{"two-stage",  "gaussian-risk",      "bayes-risk",
                                                "functional", "tomo-concentration", "schurweyl-verify"};
    return names;
}

double ExperimentConfig::resolved_eps() const {
    if (eps) {
        return *eps;
    }
    return mu.empty() ? 0.0 : mu.back() / 8;
}

json ExperimentConfig::to_json() const {
    json j;
    j["experiment"] = experiment;
    j["d"] = d;
    j["r"] = r;
    j["mu"] = mu;
    j["n"] = n;
    j["n_grid"] = n_grid;
    j["reps"] = reps;
    j["eps"] = resolved_eps();
    j["delta"] = delta;
    json prior = json::object();
    if (sigma0_2) {
        prior["sigma0_2"] = *sigma0_2;
    }
    if (prior_b) {
        prior["b"] = *prior_b;
    }
    j["prior_vars"] = prior;
    j["seed"] = seed;
    j["out"] = out;
    j["theta_radius"] = theta_radius;
    j["grid_points"] = grid_points;
    if (observable) {
        j["observable"] = *observable;
    }
    j["campaign"] = campaign;
    return j;
}

ExperimentConfig parse_config(const json &j) {
    if (!j.is_object()) {
        config_error("config must be a JSON object");
    }
    static const std::set<std::string> known{"experiment", "d",     "r",            "mu",          "n",
                                             "n_grid",     "reps",  "eps",          "delta",       "prior_vars",
                                             "seed",       "out",   "theta_radius", "grid_points", "observable",
                                             "campaign"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!known.count(it.key())) {
            config_error("unknown key: " + it.key());
        }
    }
    ExperimentConfig c;
    c.experiment = get_as<std::string>(j, "experiment");
    bool valid_name = false;
    for (const auto &name : experiment_names()) {
        valid_name |= name == c.experiment;
    }
    if (!valid_name) {
        config_error("unknown experiment: " + c.experiment);
    }
    if (j.contains("d")) c.d = get_as<int>(j, "d");
    if (j.contains("mu")) c.mu = get_as<std::vector<double>>(j, "mu");
    if (j.contains("r")) c.r = get_as<int>(j, "r");
    if (j.contains("n")) c.n = get_as<uint64_t>(j, "n");
    if (j.contains("n_grid")) c.n_grid = get_as<std::vector<uint64_t>>(j, "n_grid");
    if (j.contains("reps")) c.reps = get_as<uint64_t>(j, "reps");
    if (j.contains("eps")) c.eps = get_as<double>(j, "eps");
    if (j.contains("delta")) c.delta = get_as<double>(j, "delta");
    if (j.contains("seed")) c.seed = get_as<uint64_t>(j, "seed");
    if (j.contains("out")) c.out = get_as<std::string>(j, "out");
    if (j.contains("theta_radius")) c.theta_radius = get_as<double>(j, "theta_radius");
    if (j.contains("grid_points")) c.grid_points = get_as<int>(j, "grid_points");
    if (j.contains("campaign")) c.campaign = get_as<std::string>(j, "campaign");
    if (j.contains("observable")) c.observable = j.at("observable");
    if (j.contains("prior_vars")) {
        const json &p = j.at("prior_vars");
        if (!p.is_object()) {
            config_error("prior_vars must be an object with keys sigma0_2 and b");
        }
        for (auto it = p.begin(); it != p.end(); ++it) {
            if (it.key() != "sigma0_2" && it.key() != "b") {
                config_error("unknown key in prior_vars: " + it.key());
            }
        }
        if (p.contains("sigma0_2")) c.sigma0_2 = get_as<double>(p, "sigma0_2");
        if (p.contains("b")) c.prior_b = get_as<double>(p, "b");
    }

    if (c.d < 2) {
        config_error("d must be at least 2");
    }
    if (c.reps < 1) {
        config_error("reps must be at least 1");
    }
    if (c.n < 1) {
        config_error("n must be at least 1");
    }
    if (needs_spectrum(c.experiment)) {
        if (c.mu.empty()) {
            config_error("mu is required");
        }
        if (c.r == 0) {
            c.r = (int)c.mu.size();
        }
        if (c.r != (int)c.mu.size()) {
            config_error("r must equal the length of mu");
        }
        if (c.r > c.d) {
            config_error("r must not exceed d");
        }
        double total = 0;
        for (size_t k = 0; k < c.mu.size(); k++) {
            if (!(c.mu[k] > 0) || (k > 0 && !(c.mu[k] < c.mu[k - 1]))) {
                config_error("mu must be strictly decreasing and positive");
            }
            total += c.mu[k];
        }
        if (std::abs(total - 1) > 1e-8) {
            config_error("mu must sum to 1");
        }
    }
    if (c.eps && !(*c.eps > 0)) {
        config_error("eps must be positive");
    }
    if (!(c.delta > 0 && c.delta < 1)) {
        config_error("delta must lie in (0, 1)");
    }
    if ((c.sigma0_2 && !(*c.sigma0_2 > 0)) || (c.prior_b && !(*c.prior_b > 0))) {
        config_error("prior variances must be positive");
    }
    if (!(c.theta_radius >= 0) || c.grid_points < 0) {
        config_error("theta_radius and grid_points must be nonnegative");
    }
    return c;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        config_error("cannot open config file " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

namespace {

struct TwoStageOutcome {
    McStats loss;
    McStats success_loss;
    uint64_t rank_failures = 0;
    uint64_t local_failures = 0;
    std::vector<McStats> buckets;
};

TwoStageOutcome two_stage_at(const ExperimentConfig &cfg, uint64_t n) {
    CenterState sigma = center_of(cfg);
    TwoDesign design = make_two_design(cfg.d);
    int r = cfg.r;
    double eps = cfg.resolved_eps();
    uint64_t n1 = (uint64_t)std::floor(std::pow((double)n, cfg.delta));
    n1 = std::clamp<uint64_t>(n1, 1, n - 1);
    uint64_t n2 = n - n1;
    double scale_n = 1 / std::sqrt((double)n);
    double scale_2 = 1 / std::sqrt((double)n2);

    std::vector<LocalParams> grid;
    if (cfg.grid_points > 0) {
        Rng grid_rng = make_rng(cfg.seed);
        for (int g = 0; g < cfg.grid_points; g++) {
            LocalParams p = random_local_params(cfg.d, r, 1.0, grid_rng);
            double len = p.norm();
            grid.push_back(len > 0 ? (cfg.theta_radius / len) * p : p);
        }
    }

    TwoStageOutcome out;
    out.buckets.resize(grid.size());
    for (uint64_t rep = 0; rep < cfg.reps; rep++) {
        Rng rng = make_rng(cfg.seed + rep);
        LocalParams theta0 = grid.empty() ? random_local_params(cfg.d, r, cfg.theta_radius, rng) : grid[rep % grid.size()];
        DensityMatrix rho = local_state(sigma, theta0, scale_n);
        ThresholdResult pre = preliminary_estimate(rho, design, n1, eps, rng);
        Matrix rho_hat = pre.estimate.entries();
        bool ok = pre.detected_rank == r;
        if (!ok) {
            out.rank_failures++;
        } else {
            try {
                CenterState center = CenterState::from_state(pre.estimate, r);
                LocalParams theta_true = solve_local_params(rho.entries(), center, scale_2);
                GaussianLimitModel model = build_model(center);
                LocalParams theta_hat = covariant_estimate(sample_covariant(model, theta_true, rng));
                rho_hat = local_state(center, theta_hat, scale_2).entries();
            } catch (const Error &) {
                ok = false;
                out.local_failures++;
            }
        }
        double loss = (double)n * (rho.entries() - rho_hat).squaredNorm();
        out.loss.add(loss);
        if (ok) {
            out.success_loss.add(loss);
        }
        if (!grid.empty()) {
            out.buckets[rep % grid.size()].add(loss);
        }
    }
    return out;
}

}  // namespace

RiskReport run_two_stage(const ExperimentConfig &cfg) {
    Timer timer;
    TwoStageOutcome res = two_stage_at(cfg, cfg.n);
    RiskReport rep = base_report(cfg, res.loss);
    GaussianLimitModel model = build_model(center_of(cfg));
    double theory = minimax_constant(model);
    rep.theory = theory;
    uint64_t n1 = std::clamp<uint64_t>((uint64_t)std::floor(std::pow((double)cfg.n, cfg.delta)), 1, cfg.n - 1);
    uint64_t n2 = cfg.n - n1;
    double fail_rate = (double)res.rank_failures / (double)cfg.reps;
    json &x = rep.extras;
    x["n1"] = n1;
    x["n2"] = n2;
    x["eps"] = cfg.resolved_eps();
    x["rank_failures"] = res.rank_failures;
    x["rank_failure_rate"] = fail_rate;
    x["rank_failure_rate_stderr"] = std::sqrt(fail_rate * (1 - fail_rate) / (double)cfg.reps);
    x["rank_failure_bound"] = concentration_bound(cfg.d, (double)n1, cfg.resolved_eps());
    x["four_p_failure"] = 4 * fail_rate;
    x["localisation_failures"] = res.local_failures;
    x["success_only_mean"] = res.success_loss.mean();
    x["theory_times_n_over_n2"] = theory * (double)cfg.n / (double)n2;
    x["substitution"] =
        "second-stage data replaced by one draw of the limiting Gaussian experiment at the localised parameter; "
        "heterodyne outcomes sampled from their closed-form laws";
    if (!res.buckets.empty()) {
        json buckets = json::array();
        double worst = 0;
        for (const auto &b : res.buckets) {
            buckets.push_back({{"mean", b.mean()}, {"stderr", b.stderr_of_mean()}, {"reps", b.count()}});
            worst = std::max(worst, b.mean());
        }
        x["grid_buckets"] = buckets;
        x["worst_bucket"] = worst;
    }
    if (!cfg.n_grid.empty()) {
        json table = json::array();
        for (uint64_t n : cfg.n_grid) {
            TwoStageOutcome g = two_stage_at(cfg, n);
            table.push_back({{"n", n},
                             {"mc_estimate", g.loss.mean()},
                             {"mc_stderr", g.loss.stderr_of_mean()},
                             {"relative_bias", g.loss.mean() / theory - 1},
                             {"rank_failures", g.rank_failures}});
        }
        x["n_grid"] = table;
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

RiskReport run_gaussian_risk(const ExperimentConfig &cfg) {
    Timer timer;
    CenterState center = center_of(cfg);
    GaussianLimitModel model = build_model(center);
    Rng theta_rng = make_rng(cfg.seed);
    LocalParams theta = random_local_params(cfg.d, cfg.r, cfg.theta_radius, theta_rng);
    McStats stats;
    for (uint64_t rep = 0; rep < cfg.reps; rep++) {
        Rng rng = make_rng(cfg.seed + rep);
        LocalParams est = covariant_estimate(sample_covariant(model, theta, rng));
        stats.add(theta_loss(center, theta, est));
    }
    RiskReport rep = base_report(cfg, stats);
    rep.theory = minimax_constant(model);
    rep.extras["theta_norm"] = theta.norm();
    rep.elapsed_ms = timer.ms();
    return rep;
}

RiskReport run_bayes_risk(const ExperimentConfig &cfg) {
    Timer timer;
    GaussianLimitModel model = build_model(center_of(cfg));
    double s0 = cfg.sigma0_2.value_or(1.0);
    size_t modes = model.mode_index.size();
    std::vector<McStats> per_mode(modes);
    McStats total;
    std::normal_distribution<double> g(0.0, 1.0);
    for (uint64_t rep = 0; rep < cfg.reps; rep++) {
        Rng rng = make_rng(cfg.seed + rep);
        double loss = 0;
        for (size_t m = 0; m < modes; m++) {
            double s2 = model.variances[m];
            double sd = std::sqrt((2 * s2 + 1) / 2);
            Pair xi{std::sqrt(s0) * g(rng), std::sqrt(s0) * g(rng)};
            Pair x{xi[0] + sd * g(rng), xi[1] + sd * g(rng)};
            Pair est = bayes_shrinkage(x, s2, s0);
            double l = (est[0] - xi[0]) * (est[0] - xi[0]) + (est[1] - xi[1]) * (est[1] - xi[1]);
            per_mode[m].add(l);
            loss += l;
        }
        total.add(loss);
    }
    RiskReport rep = base_report(cfg, total);
    double theory = 0;
    json table = json::array();
    for (size_t m = 0; m < modes; m++) {
        double t = bayes_risk_mode(model.variances[m], s0);
        theory += t;
        json row{{"i", model.mode_index[m].i + 1},
                 {"j", model.mode_index[m].j + 1},
                 {"sigma2", model.variances[m]},
                 {"mc_estimate", per_mode[m].mean()},
                 {"mc_stderr", per_mode[m].stderr_of_mean()},
                 {"theory", t},
                 {"unshrunk_risk", 2 * model.variances[m] + 1}};
        if (std::isinf(model.temperatures[m])) {
            double classical = 2 * s0 / (2 * s0 + 1);
            row["classical_comparison"] = classical;
            row["quantum_exceeds_classical"] = t > classical;
        }
        table.push_back(row);
    }
    rep.theory = theory;
    rep.extras["sigma0_2"] = s0;
    rep.extras["modes"] = table;
    rep.elapsed_ms = timer.ms();
    return rep;
}

RiskReport run_functional(const ExperimentConfig &cfg) {
    Timer timer;
    CenterState center = center_of(cfg);
    Matrix a;
    if (cfg.observable) {
        a = observable_from_json(*cfg.observable, cfg.d);
    } else {
        Rng rng = make_rng(cfg.seed);
        a = random_hermitian(cfg.d, rng);
    }
    FunctionalProblem problem = make_functional_problem(center, Observable::validate(a));
    RiskReport rep = functional_minimax_check(problem, cfg.n, cfg.reps, cfg.seed, cfg.prior_b.value_or(1.0));
    rep.experiment = cfg.experiment;
    rep.config = cfg.to_json();
    rep.extras["variance_at_center"] = variance(DensityMatrix::validate(center.density()), problem.a);
    rep.elapsed_ms = timer.ms();
    return rep;
}

RiskReport run_tomography_concentration(const ExperimentConfig &cfg) {
    Timer timer;
    CenterState center = center_of(cfg);
    DensityMatrix rho = DensityMatrix::validate(center.density());
    TwoDesign design = make_two_design(cfg.d);
    double eps = cfg.resolved_eps();
    double threshold = 25.0 * cfg.r * eps * eps;
    McStats tail;
    McStats hs2;
    uint64_t rank_ok = 0;
    for (uint64_t rep = 0; rep < cfg.reps; rep++) {
        Rng rng = make_rng(cfg.seed + rep);
        ThresholdResult res = preliminary_estimate(rho, design, cfg.n, eps, rng);
        double dist2 = (rho.entries() - res.estimate.entries()).squaredNorm();
        hs2.add(dist2);
        tail.add(dist2 >= threshold ? 1.0 : 0.0);
        rank_ok += res.detected_rank == cfg.r;
    }
    RiskReport rep = base_report(cfg, tail);
    rep.theory = concentration_bound(cfg.d, (double)cfg.n, eps);
    rep.extras["statistic"] = "fraction of replicates with squared HS error >= 25 r eps^2";
    rep.extras["eps"] = eps;
    rep.extras["rank_correct_rate"] = (double)rank_ok / (double)cfg.reps;
    rep.extras["mean_hs2"] = hs2.mean();
    rep.extras["design_size"] = design.size();
    rep.extras["design_residual"] = design_residual(design);
    rep.elapsed_ms = timer.ms();
    return rep;
}

VerificationReport run_schurweyl_verify(const ExperimentConfig &cfg) {
    SchurWeylLimits limits;
    if ((int)cfg.n > limits.n_max) {
        throw Error(ErrorCode::TooLarge, "schurweyl-verify supports n up to n_max", (double)cfg.n);
    }
    return schur_weyl_suite(cfg.d, (int)cfg.n, cfg.seed, limits);
}

json reproducible_part(const json &report) {
    json j = report;
    j.erase("elapsed_ms");
    return j;
}

void write_json(const std::string &path, const json &j) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::ConfigError, "cannot write " + path);
    }
    out << j.dump(2) << "\n";
}

void append_campaign_row(const std::string &path, const ExperimentConfig &cfg, const RiskReport &report) {
    bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw Error(ErrorCode::ConfigError, "cannot append to " + path);
    }
    if (fresh) {
        out << "experiment,d,r,n,reps,seed,mc_estimate,mc_stderr,theory,elapsed_ms\n";
    }
    out.precision(17);
    out << report.experiment << "," << cfg.d << "," << cfg.r << "," << cfg.n << "," << report.reps << ","
        << report.seed << "," << report.mc_estimate << "," << report.mc_stderr << ",";
    if (report.theory) {
        out << *report.theory;
    }
    out << "," << report.elapsed_ms << "\n";
}

}  // namespace qlan
