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

#include "sobolev/suite.hpp"

#include "sobolev/channel.hpp"
#include "sobolev/doi.hpp"
#include "sobolev/entropy.hpp"
#include "sobolev/expectation.hpp"
#include "sobolev/kernel.hpp"
#include "sobolev/models.hpp"
#include "sobolev/parallel.hpp"
#include "sobolev/rng.hpp"
#include "sobolev/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace sobolev {

namespace {

struct Ctx {
    const CheckSpec& spec;
    std::uint64_t seed;
    int trials;
    Tolerance tol;

    CheckReport report() const {
        CheckReport r;
        r.id = spec.id;
        r.tolerance = tol;
        r.trials = trials;
        r.informational = spec.informational;
        return r;
    }

    CheckRecord record(std::uint64_t s, double t, std::string tag, double value, double slack,
                       double scale) const {
        return {s, t, std::move(tag), value, slack, tol.abs + tol.rel * std::abs(scale)};
    }
};

using TrialFn = std::function<void(int, std::uint64_t, std::vector<CheckRecord>&)>;

void run_trials(CheckReport& rep, int trials, std::uint64_t seed, const TrialFn& fn) {
    std::vector<std::vector<CheckRecord>> per(trials);
    const Rng root(seed);
    parallel_for(trials, [&](std::size_t t) { fn(static_cast<int>(t), root.split(t).seed(), per[t]); });
    for (auto& v : per) rep.records.insert(rep.records.end(), v.begin(), v.end());
    rep.finalize();
}

std::vector<ScalarFunction> entropy_functions() {
    return {ScalarFunction::xlogx(), ScalarFunction::power(1.5)};
}

AlgebraPtr four_point_m2() {
    return make_algebra({{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}}, {0.1, 0.2, 0.3, 0.4});
}

// A handful of conditional expectations on small algebras, weighted and not.
std::vector<ConditionalExpectation> sample_expectations() {
    auto m4 = matrix_algebra(4);
    auto l4 = four_point_m2();
    auto l6 = uniform_algebra(6, 2);
    return {full_trace(m4),
            pinching(m4, {{2, 2}}),
            pinching(m4, {{1, 1, 2}}),
            full_trace(l4),
            center(l4),
            partition_average(l4, {{0, 1}, {2, 3}}),
            partition_average(l4, {{0, 3}, {1}, {2}}, true),
            martingale_subalgebra_expectation(random_transposition(3, 2), 0)};
}

Eigen::MatrixXd path_weights(int n) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) w(i, i + 1) = w(i + 1, i) = 0.1 * (1.0 + 0.5 * i);
    return w;
}

std::vector<Generator> small_models() {
    return {random_transposition(3),
            random_transposition(3, 2),
            bernoulli_laplace(3, 1),
            bernoulli_laplace(4, 2),
            depolarizing(full_trace(matrix_algebra(2))),
            depolarizing(pinching(matrix_algebra(3), {{1, 2}})),
            graph_laplacian(path_weights(4), {0.1, 0.2, 0.3, 0.4}, 2)};
}

// e^{-tA} x for any real t, straight from the dense spectrum.
AlgebraElement evolve(const Generator& a, double t, const AlgebraElement& x) {
    const auto& sp = a.spectrum();
    Eigen::VectorXcd decay = (-t * sp.eigenvalues.array()).exp().cast<cplx>();
    Vector coeff = sp.eigenvectors.adjoint() * to_vector(x);
    return from_vector(a.algebra(), sp.eigenvectors * (decay.asDiagonal() * coeff)).hermitian_part();
}

// Gauss-Legendre nodes and weights on [0, 1] (Golub-Welsch).
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) j(i, i - 1) = j(i - 1, i) = i / std::sqrt(4.0 * i * i - 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    Eigen::VectorXd x = (es.eigenvalues().array() + 1.0) / 2.0;
    Eigen::VectorXd w = es.eigenvectors().row(0).array().square();
    return {x, w};
}

double rtc_functional(const AlgebraElement& rho, const AlgebraElement& sigma, double p) {
    const auto q = ScalarFunction::power(p - 1.0);
    return trace_product_real(rho - sigma, matrix_function(q, rho) - matrix_function(q, sigma));
}

std::vector<Kernel> catalog_kernels() {
    return {log_kernel(), power_kernel(0.25), power_kernel(0.5), power_kernel(0.75),
            Kernel::diff_quot(ScalarFunction::power(1.5), 2), Kernel::constant(1.0)};
}

const std::vector<double> kHomLambdas{0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
const std::vector<double> kHomGrid{1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 10.0, 100.0, 1e3};

// ---- entropy -------------------------------------------------------------

CheckReport nonnegativity(const Ctx& c) {
    auto rep = c.report();
    std::vector<AlgebraPtr> algs{matrix_algebra(3), four_point_m2()};
    auto fs = entropy_functions();
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& alg = algs[t % algs.size()];
        const auto& f = fs[(t / algs.size()) % fs.size()];
        Rng rng(s);
        auto rho = random_state(alg, rng.split(1).seed());
        auto sigma = random_state(alg, rng.split(2).seed());
        const double d = bregman(f, rho, sigma).value;
        out.push_back(c.record(s, 0, "nonneg", d, d, 0));
        // A close pair: a value at rounding level must mean nearly equal states.
        auto near = (rho + 1e-3 * random_hermitian(alg, rng.split(3).seed())).hermitian_part();
        if (min_eigenvalue(near) > 0) {
            const double dn = bregman(f, rho, near).value;
            const double dist = (rho - near).norm();
            out.push_back(c.record(s, 1, "faithful", dn, dn > 1e-10 ? dn : 1e-4 - dist, 0));
        }
    });
    return rep;
}

CheckReport depolarizing_identity(const Ctx& c) {
    auto rep = c.report();
    auto m4 = matrix_algebra(4);
    auto l4 = four_point_m2();
    std::vector<ConditionalExpectation> es{full_trace(m4), pinching(m4, {{2, 2}}), full_trace(l4), center(l4),
                                           partition_average(l4, {{0, 1}, {2, 3}})};
    std::vector<Generator> gens;
    for (const auto& e : es) gens.push_back(depolarizing(e));
    auto fs = entropy_functions();
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& g = gens[t % gens.size()];
        const auto& e = g.fixed_point_expectation();
        auto rho = random_state(g.algebra(), s);
        auto er = e(rho).hermitian_part();
        for (const auto& f : fs) {
            const double info = fisher_generator(g, f, rho);
            const double diff = info - bregman(f, rho, er).value - bregman(f, er, rho).value;
            out.push_back(c.record(s, 0, f.name(), diff, -std::abs(diff), 1.0 + info));
        }
    });
    return rep;
}

CheckReport martingale_additivity(const Ctx& c) {
    auto rep = c.report();
    auto es = sample_expectations();
    auto fs = entropy_functions();
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& e = es[t % es.size()];
        Rng rng(s);
        auto rho = random_state(e.algebra(), rng.split(1).seed());
        auto sigma = e(random_state(e.algebra(), rng.split(2).seed())).hermitian_part();
        auto er = e(rho).hermitian_part();
        for (const auto& f : fs) {
            const double lhs = bregman(f, rho, sigma).value;
            const double rhs = entropy_vs_subalgebra(f, rho, e).value + bregman(f, er, sigma).value;
            out.push_back(c.record(s, 0, f.name(), lhs - rhs, -std::abs(lhs - rhs), lhs));
        }
    });
    return rep;
}

CheckReport infimum_characterization(const Ctx& c) {
    auto rep = c.report();
    auto es = sample_expectations();
    auto fs = entropy_functions();
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& e = es[t % es.size()];
        Rng rng(s);
        auto rho = random_state(e.algebra(), rng.split(1).seed());
        for (const auto& f : fs) {
            const double dk = entropy_vs_subalgebra(f, rho, e).value;
            for (int j = 0; j < 4; ++j) {
                auto sigma = e(random_state(e.algebra(), rng.split(10 + j).seed())).hermitian_part();
                const double d = bregman(f, rho, sigma).value;
                out.push_back(c.record(s, j, f.name(), dk, d - dk, d));
            }
        }
    });
    return rep;
}

// Block-local generators (I - center, I - pinching) are tau-self-adjoint for
// every choice of site weights, so the same A can be compared under two traces.
CheckReport change_of_measure(const Ctx& c) {
    auto rep = c.report();
    auto fs = entropy_functions();
    struct Trial {
        double ratio_target;
        double c1, c2;
        AlgebraPtr a1, a2;
    };
    auto setup = [](std::uint64_t s, double target) {
        Rng rng(s);
        std::vector<double> mu2(4), r(4);
        double tot = 0;
        for (auto& m : mu2) tot += (m = 0.2 + rng.uniform());
        for (auto& m : mu2) m /= tot;
        r[0] = 1.0;
        r[1] = target;
        r[2] = 1.0 + (target - 1.0) * rng.uniform();
        r[3] = 1.0 + (target - 1.0) * rng.uniform();
        std::vector<double> mu1(4);
        double z = 0;
        for (int i = 0; i < 4; ++i) z += (mu1[i] = mu2[i] * r[i]);
        for (auto& m : mu1) m /= z;
        Trial tr{target, 0, 0, nullptr, nullptr};
        tr.c1 = -1e300;
        tr.c2 = 1e300;
        for (int i = 0; i < 4; ++i) {
            tr.c1 = std::max(tr.c1, mu1[i] / mu2[i]);
            tr.c2 = std::min(tr.c2, mu1[i] / mu2[i]);
        }
        std::vector<Site> sites{{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}};
        tr.a1 = make_algebra(sites, mu1);
        tr.a2 = make_algebra(sites, mu2);
        return tr;
    };
    auto on = [](const AlgebraPtr& alg, const AlgebraElement& x) { return AlgebraElement(alg, x.blocks()); };
    const Rng root(c.seed);
    // Ratio spot check: one shared weight pair per target, shared witnesses.
    for (double target : {2.0, 10.0}) {
        auto tr = setup(root.split(target == 2.0 ? 1001 : 1002).seed(), target);
        Generator g1 = depolarizing(center(tr.a1));
        Generator g2 = depolarizing(center(tr.a2));
        const auto f = ScalarFunction::power(1.5);
        std::vector<AlgebraElement> ws;
        double inf2 = 1e300;
        for (int j = 0; j < 20; ++j) {
            auto rho = random_state(tr.a2, root.split(2000 + j + (target == 2.0 ? 0 : 100)).seed());
            ws.push_back(rho);
            if (auto r2 = try_sobolev_ratio(g2, f, rho)) inf2 = std::min(inf2, *r2);
        }
        for (std::size_t j = 0; j < ws.size(); ++j) {
            if (auto r1 = try_sobolev_ratio(g1, f, on(tr.a1, ws[j]))) {
                const double bound = tr.c2 / tr.c1 * inf2;
                CheckRecord rec = c.record(j, target, "ratio", *r1, *r1 - bound, 0);
                rec.allowed = 1e-6;
                rep.records.push_back(rec);
            }
        }
    }
    CheckReport tmp = c.report();
    run_trials(tmp, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        auto tr = setup(s, t % 2 == 0 ? 2.0 : 10.0);
        std::vector<std::pair<Generator, Generator>> gens;
        gens.emplace_back(depolarizing(center(tr.a1)), depolarizing(center(tr.a2)));
        gens.emplace_back(depolarizing(pinching(tr.a1, {{1, 1}, {2}, {1, 1}, {2}})),
                          depolarizing(pinching(tr.a2, {{1, 1}, {2}, {1, 1}, {2}})));
        Rng rng(s);
        auto rho2 = random_state(tr.a2, rng.split(1).seed());
        auto sig2 = random_state(tr.a2, rng.split(2).seed());
        auto rho1 = on(tr.a1, rho2);
        auto sig1 = on(tr.a1, sig2);
        for (const auto& f : fs) {
            for (const auto& [g1, g2] : gens) {
                const double i1 = fisher_generator(g1, f, rho1);
                const double i2 = fisher_generator(g2, f, rho2);
                out.push_back(c.record(s, tr.ratio_target, "fip:" + f.name(), i1, i1 - tr.c2 * i2, 0));
            }
            const double d1 = bregman(f, rho1, sig1).value;
            const double d2 = bregman(f, rho2, sig2).value;
            out.push_back(c.record(s, tr.ratio_target, "fdp:" + f.name(), d1, tr.c1 * d2 - d1, 0));
        }
    });
    rep.records.insert(rep.records.end(), tmp.records.begin(), tmp.records.end());
    rep.finalize();
    return rep;
}

CheckReport joint_convexity_rtc(const Ctx& c) {
    auto rep = c.report();
    auto m4 = matrix_algebra(4);
    const double ps[] = {1.25, 1.5, 1.75};
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const double p = ps[t % 3];
        Rng rng(s);
        auto r0 = random_state(m4, rng.split(1).seed()), s0 = random_state(m4, rng.split(2).seed());
        auto r1 = random_state(m4, rng.split(3).seed()), s1 = random_state(m4, rng.split(4).seed());
        const double avg = 0.5 * (rtc_functional(r0, s0, p) + rtc_functional(r1, s1, p));
        const double mid = rtc_functional(0.5 * (r0 + r1), 0.5 * (s0 + s1), p);
        out.push_back(c.record(s, p, "p=" + std::to_string(p).substr(0, 4), mid, avg - mid, 0));
    });
    return rep;
}

CheckReport joint_convexity_metric(const Ctx& c) {
    auto rep = c.report();
    std::vector<Kernel> ks;
    for (auto& k : catalog_kernels())
        if (homogeneity_check(k, kHomLambdas, kHomGrid)) ks.push_back(k);
    auto m3 = matrix_algebra(3);
    auto gamma = [](const Kernel& k, const AlgebraElement& r, const AlgebraElement& s, const AlgebraElement& a) {
        return monotone_metric(k, r, s, a, a).real();
    };
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& k = ks[t % ks.size()];
        Rng rng(s);
        auto r0 = random_state(m3, rng.split(1).seed()), s0 = random_state(m3, rng.split(2).seed());
        auto r1 = random_state(m3, rng.split(3).seed()), s1 = random_state(m3, rng.split(4).seed());
        auto a0 = random_element(m3, rng.split(5).seed()), a1 = random_element(m3, rng.split(6).seed());
        const double avg = 0.5 * (gamma(k, r0, s0, a0) + gamma(k, r1, s1, a1));
        const double mid = gamma(k, 0.5 * (r0 + r1), 0.5 * (s0 + s1), 0.5 * (a0 + a1));
        out.push_back(c.record(s, 0, k.name(), mid, avg - mid, avg));
    });
    return rep;
}

// d^f(rho||sigma) = int_0^1 (1 - t) gamma^{f[2]}_{g_t, g_t}(h, h) dt, g_t = sigma + t h.
// The integrand peaks near t = 1 when rho has small eigenvalues, so the mesh
// is graded geometrically toward 1.
double bregman_by_quadrature(const ScalarFunction& f, const AlgebraElement& rho, const AlgebraElement& sigma) {
    static const auto gl = gauss_legendre(10);
    const Kernel k2 = Kernel::diff_quot(f, 2);
    AlgebraElement h = rho - sigma;
    double acc = 0;
    for (int j = 0; j < 40; ++j) {
        const double a = 1.0 - std::ldexp(1.0, -j);
        const double b = j == 39 ? 1.0 : 1.0 - std::ldexp(1.0, -j - 1);
        for (Eigen::Index i = 0; i < gl.first.size(); ++i) {
            const double t = a + (b - a) * gl.first(i);
            auto g = (sigma + t * h).hermitian_part();
            acc += (b - a) * gl.second(i) * (1.0 - t) * monotone_metric(k2, g, g, h, h).real();
        }
    }
    return acc;
}

CheckReport dpi(const Ctx& c, bool restricted) {
    auto rep = c.report();
    auto fs = entropy_functions();
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const int d = t % 2 == 0 ? 3 : 4;
        auto alg = matrix_algebra(d);
        Rng rng(s);
        QuantumChannel ch = restricted ? random_mixed_unitary(d, 2 + t % 3, rng.split(1).seed())
                                       : random_channel(d, 1 + (t / 2) % 4, rng.split(1).seed());
        auto rho = random_state(alg, rng.split(2).seed());
        AlgebraElement sigma = restricted ? (0.5 + 1.5 * rng.uniform()) * AlgebraElement::identity(alg)
                                          : random_state(alg, rng.split(3).seed());
        auto prho = apply_channel(ch, rho).hermitian_part();
        auto psig = apply_channel(ch, sigma).hermitian_part();
        for (const auto& f : fs) {
            const double before = bregman(f, rho, sigma).value;
            const double after = bregman(f, prho, psig).value;
            out.push_back(c.record(s, d, f.name(), after, before - after, 0));
            if (restricted) {
                const double q = bregman_by_quadrature(f, rho, sigma);
                CheckRecord rec = c.record(s, d, "integral:" + f.name(), q, -std::abs(q - before), 0);
                rec.allowed = 1e-7 * (1.0 + before);
                out.push_back(rec);
            }
        }
    });
    return rep;
}

CheckReport fisher_nonnegativity(const Ctx& c) {
    auto rep = c.report();
    std::vector<Generator> gens;
    for (const auto& e : sample_expectations()) gens.push_back(depolarizing(e));
    auto fs = entropy_functions();
    fs.push_back(ScalarFunction::power(1.25));
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& g = gens[t % gens.size()];
        auto rho = random_state(g.algebra(), s);
        for (const auto& f : fs) {
            const double i = fisher_generator(g, f, rho);
            out.push_back(c.record(s, 0, f.name(), i, i, 0));
            auto r = try_sobolev_ratio(g, f, rho);
            if (r) {
                const double bound = f.tag() == FunctionTag::Power ? f.exponent() : 1.0;
                CheckRecord rec = c.record(s, 1, "ratio:" + f.name(), *r, *r - bound, 0);
                rec.allowed = 1e-8;
                out.push_back(rec);
            }
        }
    });
    return rep;
}

CheckReport fisher_derivation_consistency(const Ctx& c) {
    auto rep = c.report();
    auto fs = entropy_functions();
    auto m3 = matrix_algebra(3);
    Generator rt = random_transposition(3);
    Derivation drt = Derivation::difference(rt);
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        Rng rng(s);
        for (const auto& f : fs) {
            if (t % 2 == 0) {
                auto v = random_hermitian(m3, rng.split(1).seed());
                Derivation d = Derivation::commutator(v);
                Generator g = generator_from_derivation(d);
                auto rho = random_state(m3, rng.split(2).seed());
                const double a = fisher_derivation(d, f, rho), b = fisher_generator(g, f, rho);
                out.push_back(c.record(s, 0, "commutator:" + f.name(), a - b, -std::abs(a - b), b));
            } else {
                auto rho = random_state(rt.algebra(), rng.split(2).seed());
                const double a = fisher_derivation(drt, f, rho), b = fisher_generator(rt, f, rho);
                out.push_back(c.record(s, 0, "difference:" + f.name(), a - b, -std::abs(a - b), b));
            }
        }
    });
    return rep;
}

// ---- doi -----------------------------------------------------------------

CheckReport daleckii_krein(const Ctx& c) {
    auto rep = c.report();
    auto m4 = matrix_algebra(4);
    std::vector<ScalarFunction> fs{ScalarFunction::power(2.0), ScalarFunction::power(1.5), ScalarFunction::xlogx()};
    run_trials(rep, c.trials, c.seed, [&](int, std::uint64_t s, auto& out) {
        Rng rng(s);
        auto v = random_element(m4, rng.split(1).seed());
        auto rho = random_state(m4, rng.split(2).seed());
        auto spec = eigh(rho);
        for (const auto& f : fs) {
            auto fr = matrix_function(f, spec);
            auto lhs = v * fr - fr * v;
            auto rhs = schur_q(Kernel::diff_quot(f, 1), spec, v * rho - rho * v);
            const double err = (lhs - rhs).norm();
            out.push_back(c.record(s, 0, f.name(), err, -err, 1.0 + v.norm() * fr.norm()));
        }
    });
    return rep;
}

CheckReport inverse_kernel(const Ctx& c) {
    auto rep = c.report();
    std::vector<Kernel> ks{log_kernel(), power_kernel(0.5), Kernel::perspective(ScalarFunction::xlogx()),
                           Kernel::diff_quot(ScalarFunction::power(1.5), 2)};
    auto alg = four_point_m2();
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& k = ks[t % ks.size()];
        Rng rng(s);
        auto sr = eigh(normalized(random_positive(alg, 1.0, 0.05, rng.split(1).seed())));
        auto ss = eigh(normalized(random_positive(alg, 1.0, 0.05, rng.split(2).seed())));
        auto a = random_element(alg, rng.split(3).seed());
        auto back = schur_q(Kernel::inverse(k), sr, ss, schur_q(k, sr, ss, a));
        const double err = (back - a).norm();
        out.push_back(c.record(s, 0, k.name(), err, -err, a.norm()));
    });
    return rep;
}

CheckReport hermiticity(const Ctx& c) {
    auto rep = c.report();
    std::vector<Kernel> ks{log_kernel(), power_kernel(0.5), Kernel::diff_quot(ScalarFunction::xlogx(), 2),
                           Kernel::diff_quot(ScalarFunction::power(1.5), 1)};
    auto alg = four_point_m2();
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& k = ks[t % ks.size()];
        Rng rng(s);
        auto spec = eigh(random_state(alg, rng.split(1).seed()));
        auto out_q = schur_q(k, spec, random_hermitian(alg, rng.split(2).seed()));
        const double err = (out_q - out_q.adjoint()).norm();
        out.push_back(c.record(s, 0, k.name(), err, -err, out_q.norm()));
    });
    return rep;
}

CheckReport cluster_continuity(const Ctx& c) {
    auto rep = c.report();
    std::vector<Kernel> ks{log_kernel(), Kernel::diff_quot(ScalarFunction::xlogx(), 1),
                           Kernel::diff_quot(ScalarFunction::power(1.5), 2), power_kernel(0.5)};
    auto m4 = matrix_algebra(4);
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& k = ks[t % ks.size()];
        Rng rng(s);
        Matrix u = haar_unitary(4, rng);
        Eigen::VectorXd lam(4);
        for (int i = 0; i < 4; ++i) lam(i) = 0.2 + rng.uniform();
        lam(1) = lam(0);
        Eigen::VectorXd lam2 = lam;
        lam2(1) += 1e-12;
        auto build = [&](const Eigen::VectorXd& l) {
            Matrix m = u * l.cast<cplx>().asDiagonal() * u.adjoint();
            return AlgebraElement(m4, {Matrix(0.5 * (m + m.adjoint()))});
        };
        auto a = random_element(m4, rng.split(7).seed());
        auto q1 = schur_q(k, eigh(build(lam)), a);
        auto q2 = schur_q(k, eigh(build(lam2)), a);
        const double err = (q1 - q2).norm();
        out.push_back(c.record(s, 0, k.name(), err, -err, a.norm()));
    });
    return rep;
}

CheckReport cone_membership(const Ctx& c, bool unital_only) {
    auto rep = c.report();
    std::vector<Kernel> ks{log_kernel(), power_kernel(0.25), power_kernel(0.5), power_kernel(0.75)};
    for (std::size_t i = 0; i < ks.size(); ++i) {
        ConeTestOptions opt;
        opt.trials = c.trials;
        opt.seed = Rng(c.seed).split(i).seed();
        opt.unital_only = unital_only;
        auto r = cone_test(ks[i], ConeSide::Plus, opt);
        rep.records.push_back(c.record(opt.seed, 0, ks[i].name(), r.min_eig, r.min_relative_eig, 0));
    }
    rep.trials = c.trials * static_cast<int>(ks.size());
    rep.finalize();
    return rep;
}

CheckReport translation_invariance(const Ctx& c) {
    auto rep = c.report();
    std::vector<Kernel> base{log_kernel(), power_kernel(0.5)};
    const std::pair<double, double> shifts[] = {{0.5, 0.5}, {2.0, 2.0}, {0.5, 2.0}};
    int idx = 0;
    for (const auto& k : base)
        for (auto [tt, ss] : shifts) {
            ConeTestOptions opt;
            opt.trials = c.trials;
            opt.seed = Rng(c.seed).split(idx++).seed();
            auto kt = Kernel::translated(k, tt, ss);
            auto r = cone_test(kt, ConeSide::Plus, opt);
            rep.records.push_back(c.record(opt.seed, tt, kt.name(), r.min_eig, r.min_relative_eig, 0));
        }
    rep.finalize();
    return rep;
}

// ---- models --------------------------------------------------------------

CheckReport generator_invariants(const Ctx& c) {
    auto rep = c.report();
    auto models = small_models();
    for (const auto& g : models) g.spectrum();
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& g = models[t % models.size()];
        const auto& alg = g.algebra();
        const auto& e = g.fixed_point_expectation();
        Rng rng(s);
        auto x = random_element(alg, rng.split(1).seed());
        auto y = random_element(alg, rng.split(2).seed());
        const double sa = std::abs(inner(g(x), y) - inner(x, g(y)));
        out.push_back(c.record(s, 0, "self-adjoint", sa, -sa, x.norm() * y.norm()));
        const double one = g(AlgebraElement::identity(alg)).norm();
        CheckRecord r1 = c.record(s, 0, "unital-kernel", one, -one, 0);
        r1.allowed = 1e-12;
        out.push_back(r1);
        const double mine = g.spectrum().eigenvalues.minCoeff();
        out.push_back(c.record(s, 0, "positive", mine, mine, 0));
        const double mod = (e(x * e(y)) - e(x) * e(y)).norm();
        CheckRecord r2 = c.record(s, 0, "module", mod, -mod, 0);
        r2.allowed = 1e-9 * (1.0 + x.norm() * y.norm());
        out.push_back(r2);
        const double unit = (e(AlgebraElement::identity(alg)) - AlgebraElement::identity(alg)).norm();
        out.push_back(c.record(s, 0, "expectation-unital", unit, -unit, 1.0));
        auto rho = random_state(alg, rng.split(3).seed());
        const double pos = min_eigenvalue(e(rho).hermitian_part());
        out.push_back(c.record(s, 0, "expectation-positive", pos, pos, rho.norm()));
        const double idem = (e(e(x)) - e(x)).norm();
        out.push_back(c.record(s, 0, "idempotent", idem, -idem, x.norm()));
        const double tp = std::abs(trace(e(x)) - trace(x));
        out.push_back(c.record(s, 0, "trace-preserving", tp, -tp, x.norm()));
    });
    return rep;
}

CheckReport ergodicity(const Ctx& c) {
    auto rep = c.report();
    std::vector<Generator> models{random_transposition(2), random_transposition(3), random_transposition(4),
                                  random_transposition(3, 2), bernoulli_laplace(3, 1), bernoulli_laplace(4, 2),
                                  bernoulli_laplace(5, 2), bernoulli_laplace(4, 2, 2)};
    std::vector<CheckRecord> recs(models.size());
    parallel_for(models.size(), [&](std::size_t i) {
        const auto& ev = models[i].spectrum().eigenvalues;
        const int ker = static_cast<int>((ev.array() <= kGapTol).count());
        const int k = models[i].info().k;
        recs[i] = c.record(i, 0, describe_model(models[i]), ker, -std::abs(ker - k * k), 0);
    });
    rep.records = std::move(recs);
    rep.trials = static_cast<int>(models.size());
    rep.finalize();
    return rep;
}

CheckReport complete_positivity(const Ctx& c) {
    auto rep = c.report();
    std::vector<Generator> models;
    for (const auto& g : small_models()) models.push_back(ampliate_generator(g, 2));
    const double ts[] = {0.05, 0.3, 1.0, 3.0};
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& g = models[t % models.size()];
        auto rho = normalized(random_positive(g.algebra(), 0.5, 0.0, s));
        for (double tt : ts) {
            const double m = min_eigenvalue(semigroup_apply(g, tt, rho).hermitian_part());
            out.push_back(c.record(s, tt, describe_model(g), m, m, rho.norm()));
        }
    });
    return rep;
}

CheckReport monotone_decay(const Ctx& c) {
    auto rep = c.report();
    auto models = small_models();
    auto fs = entropy_functions();
    const auto grid = default_t_grid();
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& g = models[t % models.size()];
        const auto& f = fs[(t / models.size()) % fs.size()];
        auto rho = random_state(g.algebra(), s);
        double prev = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double d =
                entropy_vs_subalgebra(f, semigroup_apply(g, grid[i], rho).hermitian_part(), g.fixed_point_expectation())
                    .value;
            if (i > 0) out.push_back(c.record(s, grid[i], f.name(), d, prev - d, prev));
            prev = d;
        }
    });
    return rep;
}

CheckReport semigroup_law(const Ctx& c) {
    auto rep = c.report();
    auto models = small_models();
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& g = models[t % models.size()];
        Rng rng(s);
        auto x = random_element(g.algebra(), rng.split(1).seed());
        const double a = 2.0 * rng.uniform(), b = 2.0 * rng.uniform();
        const double err = (semigroup_apply(g, a, semigroup_apply(g, b, x)) - semigroup_apply(g, a + b, x)).norm();
        out.push_back(c.record(s, a + b, describe_model(g), err, -err, x.norm()));
        const double id = (semigroup_apply(g, 0.0, x) - x).norm();
        out.push_back(c.record(s, 0, "identity", id, -id, x.norm()));
    });
    return rep;
}

CheckReport gradient_identity(const Ctx& c) {
    auto rep = c.report();
    auto models = small_models();
    models.push_back(random_transposition(4));
    for (const auto& g : models) g.spectrum();
    auto fs = entropy_functions();
    const double h = 1e-4;
    const double ts[] = {0.0, 0.1, 1.0};
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& g = models[t % models.size()];
        const auto& f = fs[(t / models.size()) % fs.size()];
        const auto& e = g.fixed_point_expectation();
        auto rho = normalized(random_positive(g.algebra(), 1.0, 0.05, s));
        auto d = [&](double tt) { return entropy_vs_subalgebra(f, evolve(g, tt, rho), e).value; };
        for (double tt : ts) {
            const double fd = (d(tt + h) - d(tt - h)) / (2 * h);
            const double info = fisher_generator(g, f, evolve(g, tt, rho));
            out.push_back(c.record(s, tt, describe_model(g) + ":" + f.name(), fd, -std::abs(fd + info), 1.0 + info));
        }
    });
    return rep;
}

// ---- certify -------------------------------------------------------------

CheckReport decay_family(const Ctx& c, bool rt) {
    auto rep = c.report();
    std::vector<Generator> models;
    for (int k : {1, 2}) {
        if (rt) {
            models.push_back(random_transposition(3, k));
            models.push_back(random_transposition(4, k));
        } else {
            models.push_back(bernoulli_laplace(3, 1, k));
            models.push_back(bernoulli_laplace(4, 2, k));
        }
    }
    for (const auto& g : models) g.spectrum();
    const std::vector<double> ps{0.0, 1.25, 1.5, 1.75};
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& g = models[t % models.size()];
        const double p = ps[(t / models.size()) % ps.size()];
        const auto f = p > 0 ? ScalarFunction::power(p) : ScalarFunction::xlogx();
        const double lam = (p > 0 ? p : 1.0) * (rt ? 1.0 : 0.5);
        auto r = decay_check(g, f, lam, random_state(g.algebra(), s), default_t_grid(), c.tol);
        for (auto rec : r.records) {
            rec.seed = s;
            rec.tag = describe_model(g) + ":" + f.name();
            out.push_back(rec);
        }
    });
    return rep;
}

CheckReport pnorm_decay(const Ctx& c) {
    auto rep = c.report();
    std::vector<Generator> models{random_transposition(3, 1), random_transposition(3, 2)};
    for (const auto& g : models) g.spectrum();
    run_trials(rep, c.trials, c.seed, [&](int t, std::uint64_t s, auto& out) {
        const auto& g = models[t % 2];
        auto r = pnorm_decay_check(g, 1.5, 0.75, random_state(g.algebra(), s), default_t_grid(), c.tol);
        for (auto rec : r.records) {
            rec.seed = s;
            rec.tag = describe_model(g);
            out.push_back(rec);
        }
    });
    return rep;
}

CheckReport lemma_rtl(const Ctx& c) {
    auto rep = c.report();
    int idx = 0;
    for (int n : {2, 3, 4})
        for (int k : {1, 2})
            for (double p : {1.25, 1.75}) {
                auto r = lemma_rtl_check(n, k, c.trials, p, Rng(c.seed).split(idx++).seed(), c.tol);
                for (auto& rec : r.records) rec.tag = "n=" + std::to_string(n) + ",k=" + std::to_string(k);
                rep.records.insert(rep.records.end(), r.records.begin(), r.records.end());
            }
    rep.trials = c.trials * idx;
    rep.finalize();
    return rep;
}

CheckReport replay(const Ctx& c, ReplayFamily fam) {
    auto rep = c.report();
    std::vector<std::pair<int, int>> cases;
    if (fam == ReplayFamily::RandomTransposition)
        cases = {{2, 0}, {3, 0}, {4, 0}};
    else
        cases = {{3, 1}, {3, 2}, {4, 2}};
    int idx = 0;
    for (auto [n, r] : cases)
        for (double p : {1.25, 1.5, 1.75}) {
            auto out = martingale_recursion_replay(fam, n, r, p, c.trials, Rng(c.seed).split(idx++).seed(), 1, c.tol);
            for (auto& rec : out.records) rec.tag = out.model + ":" + rec.tag;
            rep.records.insert(rep.records.end(), out.records.begin(), out.records.end());
        }
    rep.trials = c.trials * idx;
    rep.finalize();
    return rep;
}

CheckReport tensorization(const Ctx& c) {
    Generator g = tensor_generator(random_transposition(3), depolarizing(full_trace(matrix_algebra(2))));
    auto rep = ratio_lower_bound_check(g, ScalarFunction::power(1.5), 1.5, c.trials, c.seed, c.tol);
    rep.id = c.spec.id;
    rep.informational = c.spec.informational;
    rep.finalize();
    return rep;
}

CheckReport brackets(const Ctx& c, bool rt) {
    auto rep = c.report();
    struct Case {
        int n, r, k;
        double p;
    };
    std::vector<Case> cases;
    for (int n : {3, 4})
        for (int k : {1, 2})
            for (double p : {0.0, 1.25, 1.5, 1.75}) cases.push_back({n, rt ? 0 : n / 2 == 1 ? 1 : 2, k, p});
    int idx = 0;
    for (const auto& cs : cases) {
        Generator g = rt ? random_transposition(cs.n) : bernoulli_laplace(cs.n, cs.r);
        const auto f = cs.p > 0 ? ScalarFunction::power(cs.p) : ScalarFunction::xlogx();
        Budget b;
        b.seed = Rng(c.seed).split(idx++).seed();
        if (c.trials > 0) b.restarts = c.trials;
        auto res = estimate_constant(g, f, cs.k, b);
        auto [lo, hi] = *res.bracket;
        rep.records.push_back(c.record(b.seed, cs.k, res.model + ":" + res.f + ":lower", res.estimate,
                                       res.estimate - lo, 0));
        rep.records.push_back(c.record(b.seed, cs.k, res.model + ":" + res.f + ":upper", res.estimate,
                                       hi - res.estimate, 0));
        const double rej = res.samples > 0 ? double(res.rejected) / double(res.samples) : 0.0;
        rep.records.push_back(c.record(b.seed, cs.k, res.model + ":" + res.f + ":rejects", rej, 0.01 - rej, 0));
    }
    rep.trials = idx;
    rep.finalize();
    return rep;
}

std::vector<CheckSpec> build_registry() {
    std::vector<CheckSpec> r;
    auto add = [&](std::string id, std::string desc, int trials, Tolerance tol, bool info, bool def,
                   std::function<CheckReport(const Ctx&)> fn) {
        r.push_back({std::move(id), std::move(desc), trials, tol, info, def, nullptr});
        const std::size_t i = r.size() - 1;
        r[i].run = [fn, i](const CheckOptions& o) {
            const CheckSpec& spec = check_registry()[i];
            Ctx c{spec, o.seed, o.trials > 0 ? o.trials : spec.default_trials,
                  o.tolerance.value_or(spec.default_tolerance)};
            return fn(c);
        };
    };
    add("nonnegativity", "Bregman entropy is nonnegative and faithful", 100, {1e-10, 0}, false, true,
        nonnegativity);
    add("depolarizing-identity", "Fisher information of I - E is the symmetrized entropy", 100, {0, 1e-8},
        false, true, depolarizing_identity);
    add("martingale-additivity", "entropy splits along a conditional expectation", 100, {1e-10, 0}, false,
        true, martingale_additivity);
    add("infimum-characterization", "entropy to a subalgebra is the infimum over its states", 100,
        {1e-10, 0}, false, true, infimum_characterization);
    add("change-of-measure", "Fisher and entropy bounds under a change of weights", 100, {1e-10, 0}, false,
        true, change_of_measure);
    add("joint-convexity-rtc", "midpoint convexity of tau[(x - y)(x^(p-1) - y^(p-1))]", 200, {1e-10, 0},
        false, true, joint_convexity_rtc);
    add("joint-convexity-metric", "midpoint convexity of monotone metrics for homogeneous catalog kernels",
        200, {1e-10, 1e-10}, false, true, joint_convexity_metric);
    add("dpi", "data processing for unital channels with sigma = c 1", 200, {1e-9, 0}, false, true,
        [](const Ctx& c) { return dpi(c, true); });
    add("dpi-unrestricted", "data processing for general channels and states", 200, {1e-9, 0}, true, true,
        [](const Ctx& c) { return dpi(c, false); });
    add("fisher-nonnegativity", "Fisher information is nonnegative; ratio of I - E above its bound", 100,
        {1e-10, 0}, false, true, fisher_nonnegativity);
    add("fisher-derivation", "derivation and generator forms of the Fisher information agree", 40,
        {1e-8, 1e-8}, false, true, fisher_derivation_consistency);
    add("daleckii-krein", "[v, f(rho)] equals the divided-difference Schur multiplier of [v, rho]", 100,
        {0, 1e-8}, false, true, daleckii_krein);
    add("inverse-kernel", "Schur multiplier of 1/F inverts that of F", 100, {1e-9, 1e-9}, false, true,
        inverse_kernel);
    add("hermiticity", "symmetric kernels map Hermitian to Hermitian", 100, {1e-13, 1e-12}, false, true,
        hermiticity);
    add("cluster-continuity", "Schur multipliers are stable at near-degenerate spectra", 100, {0, 1e-6},
        false, true, cluster_continuity);
    add("cone-membership", "cone test of the log and power kernels over general channels", 500, {1e-8, 0},
        false, false, [](const Ctx& c) { return cone_membership(c, false); });
    add("cone-membership-unital", "cone test restricted to mixed-unitary channels", 500, {1e-8, 0}, false,
        false, [](const Ctx& c) { return cone_membership(c, true); });
    add("translation-invariance", "cone test of translated kernels", 100, {1e-8, 0}, true, false,
        translation_invariance);
    add("generator-invariants", "self-adjoint, positive, A(1) = 0, E a conditional expectation", 70,
        {1e-10, 1e-10}, false, true, generator_invariants);
    add("ergodicity", "kernel of the built-in generators is constants tensor M_k", 0, {0, 0}, false, true,
        ergodicity);
    add("complete-positivity", "semigroups preserve positivity after ampliation", 70, {1e-10, 1e-10}, false,
        true, complete_positivity);
    add("monotone-decay", "entropy to the fixed points is nonincreasing in t", 70, {1e-12, 1e-10}, false,
        true, monotone_decay);
    add("semigroup-law", "T_s T_t = T_(s+t)", 70, {1e-10, 1e-10}, false, true, semigroup_law);
    add("gradient-identity", "d/dt of entropy is minus the Fisher information", 48, {0, 1e-5}, false, true,
        gradient_identity);
    add("decay-rt", "entropy decay for random transposition", 100, {0, 1e-9}, false, true,
        [](const Ctx& c) { return decay_family(c, true); });
    add("decay-bl", "entropy decay for Bernoulli-Laplace", 100, {0, 1e-9}, false, true,
        [](const Ctx& c) { return decay_family(c, false); });
    add("pnorm-decay", "p-norm convergence for random transposition", 50, {0, 1e-9}, false, true,
        pnorm_decay);
    add("lemma-rtl", "two-point p-entropy bound for matrix-valued tuples", 100, {1e-9, 1e-9}, false, true,
        lemma_rtl);
    add("replay-rt", "induction step inequalities, random transposition", 30, {1e-10, 1e-9}, false, true,
        [](const Ctx& c) { return replay(c, ReplayFamily::RandomTransposition); });
    add("replay-bl", "induction step inequalities, Bernoulli-Laplace", 30, {1e-10, 1e-9}, false, true,
        [](const Ctx& c) { return replay(c, ReplayFamily::BernoulliLaplace); });
    add("tensorization", "ratios on a product generator stay above the smaller bound", 200, {1e-6, 0},
        false, true, tensorization);
    add("brackets-rt", "estimated constants of random transposition within known brackets", 32, {1e-6, 0},
        false, false, [](const Ctx& c) { return brackets(c, true); });
    add("brackets-bl", "estimated constants of Bernoulli-Laplace within known brackets", 32, {1e-6, 0},
        false, false, [](const Ctx& c) { return brackets(c, false); });
    return r;
}

}  // namespace

const std::vector<CheckSpec>& check_registry() {
    static const std::vector<CheckSpec> reg = build_registry();
    return reg;
}

const CheckSpec& find_check(const std::string& id) {
    for (const auto& s : check_registry())
        if (s.id == id) return s;
    throw ContractError("unknown check id: " + id);
}

std::vector<std::string> default_check_ids() {
    std::vector<std::string> ids;
    for (const auto& s : check_registry())
        if (s.in_default_suite) ids.push_back(s.id);
    return ids;
}

CheckReport run_check(const std::string& id, const CheckOptions& options) {
    return find_check(id).run(options);
}

std::uint64_t check_seed(std::uint64_t suite_seed, const std::string& id) {
    std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
    for (unsigned char ch : id) h = (h ^ ch) * 0x100000001b3ull;
    return splitmix64(suite_seed ^ h);
}

std::vector<CheckReport> suite_run(const SuiteConfig& config) {
    for (const auto& id : config.checks) find_check(id);
    for (const auto& [id, ov] : config.overrides) find_check(id);
    std::vector<CheckReport> out;
    for (const auto& id : config.checks) {
        CheckOptions o;
        o.seed = check_seed(config.seed, id);
        if (auto it = config.overrides.find(id); it != config.overrides.end()) {
            if (it->second.trials) o.trials = *it->second.trials;
            o.tolerance = it->second.tolerance;
        }
        out.push_back(run_check(id, o));
    }
    return out;
}

Verdict aggregate_verdict(const std::vector<CheckReport>& reports) {
    for (const auto& r : reports)
        if (r.verdict == Verdict::Fail) return Verdict::Fail;
    return Verdict::Pass;
}

}  // namespace sobolev
