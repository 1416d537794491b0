// Copyright 2026 The sobolev-lab Authors
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

#include "sobolev/certify.hpp"

#include "sobolev/entropy.hpp"
#include "sobolev/models.hpp"
#include "sobolev/nelder_mead.hpp"
#include "sobolev/parallel.hpp"
#include "sobolev/rng.hpp"
#include "sobolev/spectral.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sobolev {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kStateFloor = 1e-8;

}  // namespace

void CheckReport::add(std::uint64_t seed, double t, double value, double slack, double scale,
                      std::string tag) {
    records.push_back({seed, t, std::move(tag), value, slack, tolerance.abs + tolerance.rel * std::abs(scale)});
}

void CheckReport::finalize() {
    worst_slack = records.empty() ? 0.0 : kInf;
    worst_margin = records.empty() ? 0.0 : kInf;
    violations = 0;
    for (const auto& r : records) {
        worst_slack = std::min(worst_slack, r.slack);
        const double margin = r.slack + r.allowed;
        worst_margin = std::min(worst_margin, margin);
        if (!(margin >= 0.0)) ++violations;
    }
    if (informational)
        verdict = Verdict::Informational;
    else
        verdict = violations > 0 ? Verdict::Fail : Verdict::Pass;
}

void CheckReport::merge(const CheckReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
    trials += other.trials;
    finalize();
}

AlgebraElement random_state(const AlgebraPtr& alg, std::uint64_t seed) {
    const std::uint64_t s = splitmix64(seed);
    switch (s % 3) {
        case 0:
            return normalized(random_positive(alg, 1.0, 1e-3, s));
        case 1:
            return normalized(random_positive(alg, 0.5, 1e-2, s));
        default: {
            AlgebraElement h = random_hermitian(alg, s);
            return normalized(AlgebraElement::identity(alg) + (0.5 / h.norm()) * h);
        }
    }
}

std::optional<double> try_sobolev_ratio(const Generator& a, const ScalarFunction& f,
                                        const AlgebraElement& rho) {
    const double d = entropy_vs_subalgebra(f, rho, a.fixed_point_expectation()).value;
    if (!(d > kRatioDenominatorFloor)) return std::nullopt;
    return fisher_generator(a, f, rho) / d;
}

double sobolev_ratio(const Generator& a, const ScalarFunction& f, const AlgebraElement& rho) {
    auto r = try_sobolev_ratio(a, f, rho);
    if (!r) throw DomainError("sobolev_ratio: state is (numerically) a fixed point");
    return *r;
}

std::optional<std::pair<double, double>> paper_bracket(const Generator& a, const ScalarFunction& f) {
    const std::string& fam = a.info().family;
    const bool power = f.tag() == FunctionTag::Power && f.exponent() > 1.0 && f.exponent() < 2.0;
    const bool xlogx = f.tag() == FunctionTag::XLogX;
    if (!power && !xlogx) return std::nullopt;
    const double lower = power ? f.exponent() : 1.0;
    if (fam == "random_transposition") return std::make_pair(lower, 4.0);
    if (fam == "bernoulli_laplace") return std::make_pair(lower / 2.0, 2.0);
    if (fam == "depolarizing") return std::make_pair(lower, kInf);
    return std::nullopt;
}

std::string describe_model(const Generator& a) {
    const auto& info = a.info();
    std::ostringstream os;
    os << info.family;
    if (info.family == "random_transposition")
        os << "(n=" << info.n << ",k=" << info.k << ")";
    else if (info.family == "bernoulli_laplace")
        os << "(n=" << info.n << ",r=" << info.r << ",k=" << info.k << ")";
    return os.str();
}

namespace {

struct Parametrization {
    AlgebraPtr alg;
    std::vector<int> offsets;
    int size = 0;

    explicit Parametrization(AlgebraPtr a) : alg(std::move(a)) {
        for (std::size_t s = 0; s < alg->num_sites(); ++s) {
            offsets.push_back(size);
            size += 2 * alg->dim(s) * alg->dim(s);
        }
    }

    AlgebraElement state(const Eigen::VectorXd& x) const {
        std::vector<Matrix> b;
        for (std::size_t s = 0; s < alg->num_sites(); ++s) {
            const int k = alg->dim(s);
            Matrix g(k, k);
            for (int i = 0; i < k * k; ++i)
                g(i / k, i % k) = cplx(x(offsets[s] + 2 * i), x(offsets[s] + 2 * i + 1));
            Matrix m = g * g.adjoint() + kStateFloor * Matrix::Identity(k, k);
            b.push_back(0.5 * (m + m.adjoint()));
        }
        return normalized(AlgebraElement(alg, std::move(b)));
    }

    // G = (rho - floor)^{1/2}, so that state(params(rho)) reproduces rho.
    Eigen::VectorXd params(const AlgebraElement& rho) const {
        Eigen::VectorXd x(size);
        auto spec = eigh(rho);
        AlgebraElement g = spec.apply([](double v) { return std::sqrt(std::max(v - kStateFloor, 0.0)); });
        for (std::size_t s = 0; s < alg->num_sites(); ++s) {
            const int k = alg->dim(s);
            for (int i = 0; i < k * k; ++i) {
                x(offsets[s] + 2 * i) = g.block(s)(i / k, i % k).real();
                x(offsets[s] + 2 * i + 1) = g.block(s)(i / k, i % k).imag();
            }
        }
        return x;
    }
};

// A generic Hermitian element of the spectral-gap eigenspace, scaled to
// operator norm 1.
std::optional<AlgebraElement> gap_direction(const Generator& a, std::uint64_t seed) {
    if (!a.has_dense()) return std::nullopt;
    const auto& sp = a.spectrum();
    Eigen::Index first = 0;
    while (first < sp.eigenvalues.size() && sp.eigenvalues(first) <= kGapTol) ++first;
    if (first == sp.eigenvalues.size()) return std::nullopt;
    const double gap = sp.eigenvalues(first);
    Rng rng(seed);
    Vector v = Vector::Zero(sp.eigenvectors.rows());
    for (Eigen::Index j = first; j < sp.eigenvalues.size() && sp.eigenvalues(j) <= gap + 1e-8 * (1.0 + gap); ++j)
        v += rng.normal() * sp.eigenvectors.col(j);
    AlgebraElement phi = from_vector(a.algebra(), v).hermitian_part();
    const double nrm = phi.norm();
    if (!(nrm > 0.0)) return std::nullopt;
    return (1.0 / nrm) * phi;
}

}  // namespace

CertificationResult estimate_constant(const Generator& a, const ScalarFunction& f, int k,
                                      const Budget& budget) {
    if (budget.restarts < 1 || budget.iters < 1) throw ContractError("estimate_constant: empty budget");
    Generator ak = ampliate_generator(a, k);
    if (!ak.has_dense()) throw ContractError("estimate_constant: model exceeds the dense size limit");
    Parametrization par(ak.algebra());
    const Rng root(budget.seed);
    auto phi = gap_direction(ak, root.split(0xfeed).seed());

    struct Run {
        Eigen::VectorXd x;
        double value = kInf;
        long samples = 0;
        long rejected = 0;
    };
    std::vector<Run> runs(budget.restarts);
    // Starts 0-3 perturb the identity along a gap eigenfunction (both signs,
    // a large and a small step); the linearized ratio there is 2 * gap.
    static constexpr double kSteps[] = {0.5, -0.5, 1e-3, -1e-3};

    parallel_for(runs.size(), [&](std::size_t j) {
        Run& run = runs[j];
        Eigen::VectorXd x0;
        NelderMeadOptions opt;
        opt.max_iters = budget.iters;
        opt.rel_tol = 1e-9;
        if (j < 4 && phi) {
            const double eps = kSteps[j];
            x0 = par.params(AlgebraElement::identity(ak.algebra()) + eps * *phi);
            opt.initial_scale = std::abs(eps);
        } else {
            Rng rng = root.split(j);
            x0.resize(par.size);
            for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = rng.normal();
            opt.initial_scale = 0.5;
        }
        auto objective = [&](const Eigen::VectorXd& x) {
            ++run.samples;
            try {
                auto r = try_sobolev_ratio(ak, f, par.state(x));
                if (!r) {
                    ++run.rejected;
                    return kInf;
                }
                return *r;
            } catch (const DomainError&) {
                ++run.rejected;
                return kInf;
            }
        };
        auto res = nelder_mead(objective, x0, opt);
        run.x = res.x;
        run.value = res.value;
    });

    CertificationResult out;
    out.model = describe_model(ak);
    out.f = f.name();
    out.k = k;
    out.restarts = budget.restarts;
    std::size_t best = 0;
    for (std::size_t j = 0; j < runs.size(); ++j) {
        out.samples += runs[j].samples;
        out.rejected += runs[j].rejected;
        out.restart_best.push_back(runs[j].value);
        if (runs[j].value < runs[best].value) best = j;
    }
    if (!std::isfinite(runs[best].value)) throw NumericalError("estimate_constant: every sample was degenerate");
    out.witness = par.state(runs[best].x);
    out.estimate = sobolev_ratio(ak, f, out.witness);
    out.bracket = paper_bracket(a, f);
    return out;
}

std::vector<double> default_t_grid() { return {0.0, 0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 4.0}; }

CheckReport decay_check(const Generator& a, const ScalarFunction& f, double lambda,
                        const AlgebraElement& rho, const std::vector<double>& t_grid, Tolerance tol) {
    if (!(lambda > 0.0)) throw ContractError("decay_check: lambda must be positive");
    CheckReport rep;
    rep.id = "decay";
    rep.model = describe_model(a);
    rep.f = f.name();
    rep.p = f.exponent();
    rep.k = a.info().k;
    rep.tolerance = tol;
    rep.trials = 1;
    const auto& e = a.fixed_point_expectation();
    const double d0 = entropy_vs_subalgebra(f, rho, e).value;
    for (double t : t_grid) {
        const double dt = entropy_vs_subalgebra(f, semigroup_apply(a, t, rho).hermitian_part(), e).value;
        rep.add(0, t, dt, std::exp(-lambda * t) * d0 - dt, d0);
    }
    rep.finalize();
    return rep;
}

CheckReport fisher_decay_check(const Generator& a, const ScalarFunction& f, double lambda,
                               const AlgebraElement& rho, const std::vector<double>& t_grid) {
    CheckReport rep;
    rep.id = "fisher-decay";
    rep.model = describe_model(a);
    rep.f = f.name();
    rep.p = f.exponent();
    rep.k = a.info().k;
    rep.tolerance = {0.0, 1e-9};
    rep.informational = true;
    rep.trials = 1;
    const double i0 = fisher_generator(a, f, rho);
    for (double t : t_grid) {
        const double it = fisher_generator(a, f, semigroup_apply(a, t, rho).hermitian_part());
        rep.add(0, t, it, std::exp(-lambda * t) * i0 - it, i0);
    }
    rep.finalize();
    return rep;
}

double tau_pnorm(const AlgebraElement& x, double p) {
    const auto& alg = *x.algebra();
    double acc = 0.0;
    for (std::size_t s = 0; s < alg.num_sites(); ++s) {
        Eigen::JacobiSVD<Matrix> svd(x.block(s));
        acc += alg.weight(s) / alg.dim(s) * svd.singularValues().array().pow(p).sum();
    }
    return std::pow(acc, 1.0 / p);
}

CheckReport pnorm_decay_check(const Generator& a, double p, double lambda, const AlgebraElement& rho,
                              const std::vector<double>& t_grid, Tolerance tol) {
    if (!(p > 1.0 && p < 2.0)) throw ContractError("pnorm_decay_check: p must lie in (1, 2)");
    CheckReport rep;
    rep.id = "pnorm-decay";
    rep.model = describe_model(a);
    rep.f = ScalarFunction::power(p).name();
    rep.p = p;
    rep.k = a.info().k;
    rep.tolerance = tol;
    rep.trials = 1;
    AlgebraElement er = a.fixed_point_expectation()(rho);
    const double nr = tau_pnorm(rho, p);
    const double ne = tau_pnorm(er, p);
    const double gapterm = std::max(std::pow(nr, p) - std::pow(ne, p), 0.0);
    const double c = std::sqrt(2.0 / (p * (p - 1.0))) * std::pow(nr, 1.0 - p / 2.0) * std::sqrt(gapterm);
    for (double t : t_grid) {
        const double lhs = tau_pnorm(semigroup_apply(a, t, rho) - er, p);
        const double rhs = std::exp(-lambda * t) * c;
        rep.add(0, t, lhs, rhs - lhs, rhs);
    }
    rep.finalize();
    return rep;
}

CheckReport lemma_rtl_check(int n, int k, int trials, double p, std::uint64_t seed, Tolerance tol) {
    if (n < 2 || k < 1 || !(p > 1.0 && p < 2.0)) throw ContractError("lemma_rtl_check: bad parameters");
    CheckReport rep;
    rep.id = "lemma-rtl";
    rep.model = "uniform(n=" + std::to_string(n) + ")";
    rep.f = ScalarFunction::power(p).name();
    rep.p = p;
    rep.k = k;
    rep.tolerance = tol;
    rep.trials = trials;
    auto alg = uniform_algebra(n, k);
    auto e = partition_average(alg, {[&] {
                                   std::vector<int> all(n);
                                   for (int i = 0; i < n; ++i) all[i] = i;
                                   return all;
                               }()});
    const auto fp = ScalarFunction::power(p);
    const auto fq = ScalarFunction::power(p - 1.0);
    const Rng root(seed);
    std::vector<CheckRecord> recs(trials);
    parallel_for(trials, [&](std::size_t t) {
        const std::uint64_t s = root.split(t).seed();
        AlgebraElement f = random_state(alg, s);
        const double lhs = entropy_vs_subalgebra(fp, f, e).value;
        AlgebraElement g = matrix_function(fq, f);
        double rhs = 0.0;
        const auto kt = [&](const Matrix& m) { return m.trace().real() / k; };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                rhs += kt((f.block(i) - f.block(j)) * (g.block(i) - g.block(j)));
        rhs /= 2.0 * n * n;
        recs[t] = {s, 0.0, "", lhs, rhs - lhs, 0.0};
        recs[t].allowed = tol.abs + tol.rel * std::abs(rhs);
    });
    rep.records = std::move(recs);
    rep.finalize();
    return rep;
}

double replay_constant_rt(int n, double p) {
    if (n < 2) throw ContractError("replay_constant_rt: n must be >= 2");
    double c = 2.0 * p;  // Delta_2 = 2 (I - E)
    for (int m = 2; m < n; ++m) c = 1.0 / ((m - 1.0) / (m * c) + 1.0 / (p * (m + 1.0)));
    return c;
}

double replay_constant_bl(int n, int r, double p) {
    if (r <= 0 || r >= n) return kInf;  // a single configuration
    if (r == 1 || r == n - 1) return p;  // Delta_{n,1} = Delta_{n,n-1} = I - E
    const double c = std::min(replay_constant_bl(n - 1, r, p), replay_constant_bl(n - 1, r - 1, p));
    return 1.0 / ((n - 2.0) / ((n - 1.0) * c) + 2.0 / (n * p));
}

CheckReport martingale_recursion_replay(ReplayFamily family, int n, int r, double p, int trials,
                                        std::uint64_t seed, int k, Tolerance tol) {
    if (!(p > 1.0 && p < 2.0)) throw ContractError("replay: p must lie in (1, 2)");
    const bool rt = family == ReplayFamily::RandomTransposition;
    Generator g = rt ? random_transposition(n + 1, k) : bernoulli_laplace(n + 1, r, k);
    CheckReport rep;
    rep.id = rt ? "replay-rt" : "replay-bl";
    rep.model = describe_model(g);
    rep.f = ScalarFunction::power(p).name();
    rep.p = p;
    rep.k = k;
    rep.tolerance = tol;
    rep.trials = trials;

    double coef1;
    double coef2;
    if (rt) {
        coef1 = (n - 1.0) / (n * replay_constant_rt(n, p));
        coef2 = 1.0 / (p * (n + 1.0));
    } else {
        const double c = std::min(replay_constant_bl(n, r, p), replay_constant_bl(n, r - 1, p));
        coef1 = std::isfinite(c) ? (n - 1.0) / (n * c) : 0.0;
        coef2 = 2.0 / ((n + 1.0) * p);
    }
    const auto fp = ScalarFunction::power(p);
    auto ens = martingale_subalgebra_expectations(g);
    const auto& e = g.fixed_point_expectation();
    const Rng root(seed);
    std::vector<CheckRecord> recs(2 * trials);
    parallel_for(trials, [&](std::size_t t) {
        const std::uint64_t s = root.split(t).seed();
        AlgebraElement f = random_state(g.algebra(), s);
        const double info = fisher_generator(g, fp, f);
        double cond = 0.0, avg = 0.0;
        for (const auto& ei : ens) {
            cond += entropy_vs_subalgebra(fp, f, ei).value;
            avg += entropy_vs_subalgebra(fp, ei(f).hermitian_part(), e).value;
        }
        cond /= ens.size();
        avg /= ens.size();
        const double r1 = coef1 * info, r2 = coef2 * info;
        recs[2 * t] = {s, 1.0, "conditioned", cond, r1 - cond, tol.abs + tol.rel * std::abs(r1)};
        recs[2 * t + 1] = {s, 2.0, "averaged", avg, r2 - avg, tol.abs + tol.rel * std::abs(r2)};
    });
    rep.records = std::move(recs);
    rep.finalize();
    return rep;
}

CheckReport ratio_lower_bound_check(const Generator& a, const ScalarFunction& f, double bound,
                                    int samples, std::uint64_t seed, Tolerance tol) {
    CheckReport rep;
    rep.id = "ratio-lower-bound";
    rep.model = describe_model(a);
    rep.f = f.name();
    rep.p = f.exponent();
    rep.k = a.info().k;
    rep.tolerance = tol;
    rep.trials = samples;
    const Rng root(seed);
    std::vector<std::optional<CheckRecord>> recs(samples);
    parallel_for(samples, [&](std::size_t t) {
        const std::uint64_t s = root.split(t).seed();
        auto r = try_sobolev_ratio(a, f, random_state(a.algebra(), s));
        if (r) recs[t] = CheckRecord{s, 0.0, "", *r, *r - bound, tol.abs};
    });
    int rejected = 0;
    for (auto& r : recs) {
        if (r)
            rep.records.push_back(*r);
        else
            ++rejected;
    }
    rep.note = "rejected=" + std::to_string(rejected);
    rep.finalize();
    return rep;
}

}  // namespace sobolev
