#include "blocknorm/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

namespace blocknorm {

namespace {

struct TrialResult {
    Trichotomy cls = Trichotomy::BothHold;
    double gap = -std::numeric_limits<double>::infinity();
    std::optional<ProblemInstance> instance;
    std::optional<ViolationCertificate> violation;
};

Matrix psd_project(const Matrix& m, const ToleranceConfig& tol) {
    const EigenDecomposition eig = herm_eigen(m, tol);
    const std::size_t n = m.rows();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex sum(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                const double lam = std::max(0.0, eig.values[k]);
                sum += eig.vectors(i, k) * lam * std::conj(eig.vectors(j, k));
            }
            out(i, j) = sum;
        }
    }
    return hermitize(out);
}

/// B = X* A^-1 X + slack with the slack direction normalized and scaled
/// relative to the feasibility floor.
Matrix sample_feasible_b(const Matrix& a, const Matrix& x, double slack_scale, RngStream& rng,
                         const ToleranceConfig& tol) {
    const Matrix base = hermitize(x.adjoint() * pd_inverse(a, tol) * x);
    const Matrix w = gaussian_matrix(a.rows(), a.cols(), rng);
    const Matrix dir = hermitize(w * w.adjoint());
    const double dir_norm = operator_norm(dir);
    if (dir_norm <= 0.0) return base;
    return hermitize(base + dir * (slack_scale / dir_norm));
}

TrialResult run_trial(const SearchConfig& config, int trial) {
    RngStream rng(config.seed, static_cast<std::uint64_t>(trial));
    const std::size_t n = static_cast<std::size_t>(config.dim);
    const ToleranceConfig& tol = config.tol;
    TrialResult result;

    switch (config.mode) {
        case SearchMode::Problem1: {
            const Matrix a = random_pd(n, config.condition_cap, rng);
            const Matrix x = gaussian_matrix(n, n, rng);
            const Matrix base = hermitize(x.adjoint() * pd_inverse(a, tol) * x);
            const double scale =
                rng.log_uniform(1e-6, 10.0) * std::max(1.0, operator_norm(base));
            const Matrix b = sample_feasible_b(a, x, scale, rng, tol);
            ProblemInstance inst = make_problem_instance(a, x, b, tol);
            result.cls = classify_trichotomy(a, x, tol);
            result.gap = norm_gap(inst);
            result.instance = inst;
            break;
        }
        case SearchMode::Problem2: {
            const Matrix a = random_pd(n, config.condition_cap, rng);
            const Matrix x = gaussian_matrix(n, n, rng);
            const Matrix b = hermitize(x.adjoint() * pd_inverse(a, tol) * x);
            ProblemInstance inst = make_problem_instance(a, x, b, tol);
            result.cls = classify_trichotomy(a, x, tol);
            result.gap = norm_gap(inst);
            result.instance = inst;
            break;
        }
        case SearchMode::Problem5: {
            Matrix x(n, n);
            if (trial == 0) {
                x = planted_violation_x(n);
            } else {
                const std::vector<double> dvals = distinct_positive_values(n, rng);
                const Matrix u = random_unitary(n, rng);
                x = Matrix::diagonal(dvals) * u;
            }
            const PolarPair polar = polar_left(x, tol);
            result.cls = classify_trichotomy(polar.d, x, tol);
            const FalsifyOutcome outcome = peel_falsify(x, tol);
            if (const auto* violation = std::get_if<ViolationOutcome>(&outcome)) {
                result.violation = violation->certificate;
                result.instance = violation->certificate.instance;
                result.gap = violation->certificate.gap;
            } else {
                result.gap = -norm_additivity_gap(polar.d, polar.u, tol);
            }
            break;
        }
    }

    // Positive-gap instances get polished and must re-certify; the
    // certificate, not the raw trial, is what lands in the report.
    if (result.instance) {
        const ViolationEvaluation ev = evaluate_violation(*result.instance, tol);
        if (ev.certified) {
            ProblemInstance candidate =
                hill_climb(*result.instance, config.hill_climb_steps, rng, tol);
            auto cert = certify(candidate, tol);
            if (!cert) cert = certify(*result.instance, tol);
            if (cert) {
                result.violation = cert;
                result.instance = cert->instance;
                result.gap = cert->gap;
            }
        }
    }
    return result;
}

}  // namespace

const char* search_mode_name(SearchMode mode) {
    switch (mode) {
        case SearchMode::Problem1: return "problem1";
        case SearchMode::Problem2: return "problem2";
        case SearchMode::Problem5: return "problem5";
    }
    return "unknown";
}

std::optional<SearchMode> parse_search_mode(const std::string& name) {
    if (name == "problem1") return SearchMode::Problem1;
    if (name == "problem2") return SearchMode::Problem2;
    if (name == "problem5") return SearchMode::Problem5;
    return std::nullopt;
}

void SearchConfig::validate() const {
    tol.validate();
    if (dim < 2) throw Error(Errc::InvalidConfig, "dim must be at least 2");
    if (trials < 0) throw Error(Errc::InvalidConfig, "trials must be nonnegative");
    if (hill_climb_steps < 0) throw Error(Errc::InvalidConfig, "hill_climb_steps must be nonnegative");
    if (!(condition_cap > 1.0)) throw Error(Errc::InvalidConfig, "condition_cap must exceed 1");
    if (threads < 1) throw Error(Errc::InvalidConfig, "threads must be at least 1");
}

SearchReport search(const SearchConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    std::vector<TrialResult> results(static_cast<std::size_t>(config.trials));
    if (config.trials > 0) {
        const int workers = std::min(config.threads, config.trials);
        if (workers <= 1) {
            for (int t = 0; t < config.trials; ++t) results[t] = run_trial(config, t);
        } else {
            std::atomic<int> next{0};
            std::vector<std::thread> pool;
            pool.reserve(static_cast<std::size_t>(workers));
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (int t = next.fetch_add(1); t < config.trials; t = next.fetch_add(1)) {
                        results[static_cast<std::size_t>(t)] = run_trial(config, t);
                    }
                });
            }
            for (std::thread& th : pool) th.join();
        }
    }

    // Reduce strictly in trial order so the report is schedule independent.
    SearchReport report;
    report.config = config;
    report.best_gap = -std::numeric_limits<double>::infinity();
    for (const TrialResult& r : results) {
        switch (r.cls) {
            case Trichotomy::DirectHolds: ++report.counts.direct_holds; break;
            case Trichotomy::SwappedHolds: ++report.counts.swapped_holds; break;
            case Trichotomy::BothHold: ++report.counts.equal_band; break;
        }
        if (r.gap > report.best_gap) {
            report.best_gap = r.gap;
            report.best_instance = r.instance;
        }
        if (r.violation) report.violations.push_back(*r.violation);
    }

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

ProblemInstance hill_climb(const ProblemInstance& inst, int steps, RngStream& rng,
                           const ToleranceConfig& tol) {
    if (steps <= 0) return inst;
    const std::size_t n = inst.a.rows();

    ProblemInstance current = inst;
    double current_gap = norm_gap(current);
    Matrix slack = psd_project(
        hermitize(current.b - current.x.adjoint() * pd_inverse(current.a, tol) * current.x), tol);

    const double base_scale = std::max(
        {operator_norm(inst.a), operator_norm(inst.x), operator_norm(inst.b), 1.0});
    double step_size = 0.1 * base_scale;

    for (int step = 0; step < steps; ++step) {
        const Matrix da = hermitian_gaussian(n, rng);
        const Matrix dx = gaussian_matrix(n, n, rng);
        const Matrix ds = hermitian_gaussian(n, rng);

        const Matrix a_next = hermitize(current.a + da * step_size);
        const EigenDecomposition aeig = herm_eigen(a_next, tol);
        if (aeig.values.back() <= 1e-8) {
            step_size = std::max(step_size * 0.95, 1e-8);
            continue;
        }
        const Matrix x_next = current.x + dx * step_size;
        const Matrix slack_next = psd_project(hermitize(slack + ds * step_size), tol);
        const Matrix b_next =
            hermitize(x_next.adjoint() * pd_inverse(a_next, tol) * x_next + slack_next);

        ProblemInstance candidate;
        try {
            candidate = make_problem_instance(a_next, x_next, b_next, tol);
        } catch (const Error&) {
            step_size = std::max(step_size * 0.95, 1e-8);
            continue;
        }
        const double candidate_gap = norm_gap(candidate);
        if (candidate.feasible && candidate_gap > current_gap) {
            current = candidate;
            current_gap = candidate_gap;
            slack = slack_next;
        } else {
            step_size = std::max(step_size * 0.95, 1e-8);
        }
    }
    return current;
}

Matrix planted_violation_x(std::size_t n) {
    if (n < 2) throw Error(Errc::InvalidConfig, "planted violation needs n >= 2");
    Matrix x(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double weight = (i + 1 < n) ? static_cast<double>(i + 2) : 1.0;
        x(i, (i + 1) % n) = weight;
    }
    return x;
}

}  // namespace blocknorm
