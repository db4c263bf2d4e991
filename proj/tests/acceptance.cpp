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

// Acceptance gate. One line per criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "qlan/functional.hpp"
#include "qlan/gaussian.hpp"
#include "qlan/harness.hpp"
#include "qlan/local_model.hpp"
#include "qlan/schur_weyl.hpp"
#include "qlan/tomography.hpp"

using namespace qlan;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kSigmas = 3.0;
constexpr double kTwoStageRel = 0.05;
constexpr double kFunctionalRel = 0.02;
constexpr double kIdentityTol = 1e-8;
constexpr double kTraceTol = 1e-10;
constexpr double kDesignTol = 1e-12;
constexpr double kRankRate = 0.99;
constexpr double kGapShrink = 3.0;
constexpr double kScalingTol = 1e-12;
constexpr double kDeterminantTol = 1e-10;
constexpr double kBlockTol = 1e-10;
constexpr double kForcedZeroTol = 1e-12;
constexpr double kMinimaxSeconds = 60;
constexpr double kTwoStageSeconds = 300;
constexpr double kSchurWeylSeconds = 120;

struct Outcome {
    bool pass;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, double a = 0, double b = 0, double c = 0, double d = 0) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

CenterState random_center(int d, int r, double floor_mu, Rng &rng) {
    for (;;) {
        RealVector mu(r);
        for (int k = 0; k < r; k++) {
            mu[k] = std::uniform_real_distribution<double>(0, 1)(rng);
        }
        std::sort(mu.data(), mu.data() + r, std::greater<double>());
        mu /= mu.sum();
        bool ok = mu[r - 1] >= floor_mu;
        for (int k = 0; k + 1 < r; k++) {
            ok &= mu[k] - mu[k + 1] >= 0.02;
        }
        if (ok) {
            return CenterState(mu, random_unitary(d, rng));
        }
    }
}

Outcome gaussian_minimax() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig c = parse_config(
        {{"experiment", "gaussian-risk"}, {"d", 2}, {"mu", {0.75, 0.25}}, {"reps", 1000000}, {"seed", 1}});
    RiskReport rep = run_gaussian_risk(c);
    double secs = seconds_since(t0);
    double target = 0.75 * 0.25 + 0.25 * 0.75 + 2 * 0.75;
    bool ok = std::abs(rep.mc_estimate - target) <= kSigmas * rep.mc_stderr && rep.mc_stderr / target <= 0.01 &&
              secs <= kMinimaxSeconds && std::abs(*rep.theory - target) < 1e-14;
    return {ok, fmt("mc=%.5f se=%.5f target=%.4f time=%.1fs", rep.mc_estimate, rep.mc_stderr, target, secs)};
}

Outcome two_stage() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig thermal = parse_config(
        {{"experiment", "two-stage"}, {"d", 2}, {"mu", {0.75, 0.25}}, {"n", 1000000}, {"reps", 2000}, {"seed", 1}});
    ExperimentConfig pure = parse_config(
        {{"experiment", "two-stage"}, {"d", 2}, {"mu", {1.0}}, {"n", 1000000}, {"reps", 2000}, {"seed", 1}});
    RiskReport a = run_two_stage(thermal);
    RiskReport b = run_two_stage(pure);
    double secs = seconds_since(t0);
    double ra = a.mc_estimate / 1.875 - 1;
    double rb = b.mc_estimate / 2.0 - 1;
    bool ok = std::abs(ra) <= kTwoStageRel && std::abs(rb) <= kTwoStageRel && secs <= kTwoStageSeconds;
    return {ok, fmt("thermal=%.4f (rel %+.4f) pure=%.4f (rel %+.4f)", a.mc_estimate, ra, b.mc_estimate, rb) +
                    fmt(" time=%.1fs", secs)};
}

Outcome bayes() {
    bool ok = true;
    std::ostringstream detail;
    detail.precision(4);
    for (double s0 : {0.5, 1.0, 2.0}) {
        json base{{"experiment", "bayes-risk"}, {"d", 2}, {"reps", 1000000}, {"seed", 1}, {"prior_vars", {{"sigma0_2", s0}}}};
        base["mu"] = {0.75, 0.25};
        RiskReport th = run_bayes_risk(parse_config(base));
        base["mu"] = {1.0};
        RiskReport pu = run_bayes_risk(parse_config(base));
        // mu = (3/4, 1/4): beta = ln 3, sigma^2 = 1.
        double s2 = 1.0;
        double th_target = 2 * s0 * (2 * s2 + 1) / (2 * (s0 + s2) + 1);
        double pu_target = 2 * s0 / (s0 + 1);
        double classical = 2 * s0 / (2 * s0 + 1);
        ok &= std::abs(th.mc_estimate - th_target) <= kSigmas * th.mc_stderr;
        ok &= std::abs(pu.mc_estimate - pu_target) <= kSigmas * pu.mc_stderr;
        ok &= std::abs(*th.theory - th_target) < 1e-12 && std::abs(*pu.theory - pu_target) < 1e-12;
        ok &= pu_target > classical && pu.mc_estimate - kSigmas * pu.mc_stderr > classical;
        detail << "s0=" << s0 << ": thermal " << th.mc_estimate << "/" << th_target << ", pure " << pu.mc_estimate << "/"
               << pu_target << " > " << classical << "; ";
    }
    return {ok, detail.str()};
}

Outcome tomography() {
    ExperimentConfig c = parse_config({{"experiment", "tomo-concentration"},
                                       {"d", 2},
                                       {"mu", {0.8, 0.2}},
                                       {"eps", 0.02},
                                       {"n", 100000},
                                       {"reps", 1000},
                                       {"seed", 1}});
    RiskReport rep = run_tomography_concentration(c);
    double rank_rate = rep.extras["rank_correct_rate"];
    double bound = 2 * std::exp(-3 * 1e5 * 0.02 * 0.02 / (16 * 2));
    double p = std::min(bound, 1.0);
    double allowed = p + kSigmas * std::sqrt(p * (1 - p) / 1000.0);
    double worst_design = 0;
    for (int d : {2, 3, 4, 5}) {
        worst_design = std::max(worst_design, design_residual(make_two_design(d)));
    }
    bool ok = rank_rate >= kRankRate && rep.mc_estimate <= allowed && worst_design <= kDesignTol;
    return {ok, fmt("rank_rate=%.4f tail=%.4f allowed=%.4f design_residual=%.2e", rank_rate, rep.mc_estimate, allowed,
                    worst_design)};
}

Outcome functional() {
    Rng rng = make_rng(2026);
    bool ok = true;
    double worst_rel = 0;
    for (int k = 0; k < 20; k++) {
        int d = 2 + k % 3;
        CenterState c = random_center(d, d, 0.02, rng);
        FunctionalProblem p = make_functional_problem(c, Observable::validate(random_hermitian(d, rng)));
        RiskReport rep = functional_minimax_check(p, 10000, 100000, 100 + (uint64_t)k);
        double rel = std::abs(rep.mc_estimate / p.y - 1);
        worst_rel = std::max(worst_rel, rel);
        ok &= rel <= kFunctionalRel;
    }
    double worst_id = 0, worst_tr = 0;
    for (int k = 0; k < 100; k++) {
        int d = 2 + k % 3;
        CenterState c = random_center(d, 1 + k % d, 0.02, rng);
        Matrix a = random_hermitian(d, rng);
        FunctionalProblem p = make_functional_problem(c, Observable::validate(a));
        LowerBoundIdentity lb = lower_bound_identity(p);
        worst_id = std::max(worst_id, std::abs(lb.qform * p.y - 1));
        LeastFavorable lf = least_favorable_family(p);
        const Matrix &h = lf.hhat.entries();
        worst_tr = std::max(worst_tr, std::abs(h.trace()));
        worst_tr = std::max(worst_tr, std::abs((a * h).trace() - 1.0));
    }
    ok &= worst_id <= kIdentityTol && worst_tr <= kTraceTol;
    return {ok, fmt("worst n*MSE/V^2 gap=%.4f identity=%.2e trace=%.2e", worst_rel, worst_id, worst_tr)};
}

Outcome quadratic_loss() {
    Rng rng = make_rng(7);
    bool ok = true;
    double weakest = 1e300;
    for (int k = 0; k < 20; k++) {
        int d = 2 + k % 3;
        int r = 1 + k % d;
        CenterState c = random_center(d, r, 0.15, rng);
        LocalParams a = random_local_params(d, r, 1.0, rng);
        LocalParams b = random_local_params(d, r, 1.0, rng);
        auto rows = quadratic_loss_check(c, a, b, {1e2, 1e4, 1e6});
        double g0 = std::abs(rows.front().ratio - 1);
        double g1 = std::abs(rows.back().ratio - 1);
        double shrink = g1 > 0 ? g0 / g1 : std::numeric_limits<double>::infinity();
        if (g0 == 0 && g1 == 0) {
            continue;
        }
        weakest = std::min(weakest, shrink);
        ok &= shrink >= kGapShrink;
    }
    return {ok, fmt("smallest gap shrink factor 1e2 -> 1e6 over 20 pairs = %.1f", weakest)};
}

Outcome schur_weyl() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    double worst_p = 0, worst_det = 0, worst_block = 0, worst_forced = 0, worst_vanish = 0;
    int completeness = 0;
    for (int d : {2, 3}) {
        VerificationReport rep = schur_weyl_suite(d, 6, 1);
        ok &= rep.all_pass();
        for (const auto &r : rep.records) {
            if (r.check == "schur_weyl_completeness") {
                completeness++;
                ok &= r.residual == 0 && r.pass;
            } else if (r.check == "row_projector_square_scaling") {
                worst_p = std::max(worst_p, r.residual);
            } else if (r.check == "determinant_inner_product_identity") {
                worst_det = std::max(worst_det, r.residual);
            } else if (r.check == "block_probabilities_sum_to_one") {
                worst_block = std::max(worst_block, r.residual);
            } else if (r.check == "block_probabilities_vanish_beyond_rank") {
                worst_vanish = std::max(worst_vanish, r.residual);
            } else if (r.check == "quasi_orthogonality_forced_zero") {
                worst_forced = std::max(worst_forced, r.residual);
            }
        }
    }
    double secs = seconds_since(t0);
    ok &= completeness == 12 && worst_p <= kScalingTol && worst_det <= kDeterminantTol && worst_block <= kBlockTol &&
          worst_vanish == 0 && worst_forced <= kForcedZeroTol && secs <= kSchurWeylSeconds;
    return {ok, fmt("p^2=%.1e det=%.1e block_sum=%.1e forced_zero=%.1e", worst_p, worst_det, worst_block,
                    worst_forced) +
                    fmt(" completeness rows=%g time=%.1fs", completeness, secs)};
}

Outcome determinism() {
    fs::path dir = fs::temp_directory_path() / "qlan_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::vector<json> configs{
        {{"experiment", "two-stage"}, {"d", 2}, {"mu", {0.75, 0.25}}, {"n", 100000}, {"reps", 100}},
        {{"experiment", "gaussian-risk"}, {"d", 3}, {"mu", {0.5, 0.3, 0.2}}, {"reps", 1000}},
        {{"experiment", "bayes-risk"}, {"d", 3}, {"mu", {0.6, 0.4}}, {"reps", 1000}},
        {{"experiment", "functional"}, {"d", 3}, {"mu", {0.6, 0.3, 0.1}}, {"n", 1000}, {"reps", 1000}},
        {{"experiment", "tomo-concentration"}, {"d", 3}, {"mu", {0.6, 0.4}}, {"n", 10000}, {"reps", 100}},
        {{"experiment", "schurweyl-verify"}, {"d", 2}, {"n", 4}},
    };
    bool ok = true;
    int runs = 0;
    for (size_t k = 0; k < configs.size(); k++) {
        fs::path cfg = dir / ("cfg" + std::to_string(k) + ".json");
        fs::path out = dir / ("out" + std::to_string(k) + ".json");
        std::ofstream(cfg) << configs[k].dump();
        std::string name = configs[k]["experiment"];
        std::string cmd = std::string(QLAN_CLI_PATH) + " " + name + " --config " + cfg.string() + " --seed 5 --out " +
                          out.string() + " --campaign " + (dir / "rows.csv").string();
        json first;
        for (int pass = 0; pass < 2; pass++) {
            int status = std::system(cmd.c_str());
            ok &= WIFEXITED(status) && WEXITSTATUS(status) == 0;
            std::ifstream in(out);
            json j = json::parse(in);
            if (pass == 0) {
                first = reproducible_part(j);
            } else {
                ok &= first == reproducible_part(j);
            }
            runs++;
        }
    }
    return {ok, "paired CLI runs for " + std::to_string(configs.size()) + " experiments, " + std::to_string(runs) +
                    " invocations"};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 gaussian minimax constant", gaussian_minimax},
        {"2 two-stage risk", two_stage},
        {"3 bayes risks", bayes},
        {"4 tomography concentration", tomography},
        {"5 functional estimation", functional},
        {"6 local quadratic loss", quadratic_loss},
        {"7 schur-weyl suite", schur_weyl},
        {"8 determinism", determinism},
    };
    int failures = 0;
    for (const auto &[name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail << std::endl;
    }
    return failures;
}
