/*
   qp_oracle.cpp

   Copyright 2026 the amypet authors.

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */

#include "support/qp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace amypet::testing {

namespace {

double kernel(const QpOracleProblem& p, std::span<const double> a, std::span<const double> b) {
    double dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    const double t = p.kernel_offset + dot / (p.kernel_scale * p.kernel_scale);
    return t * t * t;
}

/// Projection of v onto {0 <= a <= C, y.a == 0} by bisection on the
/// hyperplane multiplier.
std::vector<double> project(const std::vector<double>& v, const std::vector<int>& y, double c) {
    const auto constraint = [&](double nu) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double yi = y[i];
            s += yi * std::clamp(v[i] - nu * yi, 0.0, c);
        }
        return s; // monotone non-increasing in nu
    };
    double span = c + 1.0;
    for (double x : v) span = std::max(span, std::abs(x));
    double lo = -2.0 * span, hi = 2.0 * span;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (constraint(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double nu = 0.5 * (lo + hi);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = std::clamp(v[i] - nu * static_cast<double>(y[i]), 0.0, c);
    return out;
}

} // namespace

QpOracleResult solve_svm_dual(const QpOracleProblem& p, double residual_tol,
                              int max_iterations) {
    const std::size_t n = p.rows.size();
    std::vector<double> q(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            q[i * n + j] = p.labels[i] * p.labels[j] * kernel(p, p.rows[i], p.rows[j]);

    const auto grad = [&](const std::vector<double>& a) {
        std::vector<double> g(n, 1.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g[i] -= q[i * n + j] * a[j];
        return g;
    };
    const auto objective = [&](const std::vector<double>& a) {
        double lin = 0.0, quad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            lin += a[i];
            for (std::size_t j = 0; j < n; ++j) quad += a[i] * q[i * n + j] * a[j];
        }
        return lin - 0.5 * quad;
    };

    // Step size from the largest eigenvalue (power iteration, trace fallback).
    double lmax = 0.0;
    {
        std::vector<double> v(n, 1.0);
        for (int it = 0; it < 200; ++it) {
            std::vector<double> w(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) w[i] += q[i * n + j] * v[j];
            double norm = 0.0;
            for (double x : w) norm += x * x;
            norm = std::sqrt(norm);
            if (norm < 1e-300) break;
            lmax = norm;
            for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        }
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += std::abs(q[i * n + i]);
        lmax = std::max({lmax, trace * 1e-3, 1e-12});
        lmax *= 1.05; // slack against power-iteration underestimate
    }

    const auto step = [&](const std::vector<double>& a) {
        auto g = grad(a);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = a[i] + g[i] / lmax;
        return project(v, p.labels, p.c);
    };
    const auto residual = [&](const std::vector<double>& a) {
        const auto next = step(a);
        double r = 0.0;
        for (std::size_t i = 0; i < n; ++i) r = std::max(r, std::abs(next[i] - a[i]));
        return r;
    };

    // FISTA with objective restart.
    std::vector<double> x(n, 0.0);
    std::vector<double> z = x;
    double fx = objective(x);
    double t = 1.0;
    const double tol = residual_tol * std::max(1.0, p.c);
    int iterations = 0;
    for (; iterations < max_iterations; ++iterations) {
        auto x_new = step(z);
        double f_new = objective(x_new);
        if (f_new < fx) { // momentum overshoot, restart from x
            z = x;
            t = 1.0;
            x_new = step(z);
            f_new = objective(x_new);
        }
        const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        z.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            z[i] = x_new[i] + ((t - 1.0) / t_new) * (x_new[i] - x[i]);
        const bool check = iterations % 8 == 0;
        x = std::move(x_new);
        fx = f_new;
        t = t_new;
        if (check && residual(x) < tol) break;
    }
    if (iterations >= max_iterations)
        throw std::runtime_error("qp oracle did not reach the requested residual");

    QpOracleResult result;
    result.alpha = x;
    result.dual_objective = objective(x);
    result.iterations = iterations;

    // Bias: mean over free support vectors, else the KKT-interval midpoint.
    std::vector<double> g_val(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            g_val[j] += x[i] * p.labels[i] * kernel(p, p.rows[i], p.rows[j]);
    const double margin = 1e-7 * p.c;
    double sum = 0.0;
    int free_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] > margin && x[i] < p.c - margin) {
            sum += p.labels[i] - g_val[i];
            ++free_count;
        }
    }
    if (free_count > 0) {
        result.bias = sum / free_count;
    } else {
        double lower = -std::numeric_limits<double>::infinity();
        double upper = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            const double v = p.labels[i] - g_val[i];
            const bool at_zero = x[i] <= margin;
            const bool is_lower = (at_zero && p.labels[i] > 0) || (!at_zero && p.labels[i] < 0);
            if (is_lower)
                lower = std::max(lower, v);
            else
                upper = std::min(upper, v);
        }
        if (!std::isfinite(lower))
            result.bias = upper;
        else if (!std::isfinite(upper))
            result.bias = lower;
        else
            result.bias = 0.5 * (lower + upper);
    }
    return result;
}

double oracle_decision_value(const QpOracleProblem& p, const QpOracleResult& solution,
                             std::span<const double> probe) {
    double f = solution.bias;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        if (solution.alpha[i] <= 0.0) continue;
        f += solution.alpha[i] * p.labels[i] * kernel(p, p.rows[i], probe);
    }
    return f;
}

double mann_whitney_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    double wins = 0.0;
    std::int64_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] <= 0) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] > 0) continue;
            ++pairs;
            if (scores[i] > scores[j])
                wins += 1.0;
            else if (scores[i] == scores[j])
                wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

} // namespace amypet::testing
