/*
   smo.cpp

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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "amypet/errors.hpp"
#include "amypet/rng.hpp"
#include "amypet/svm.hpp"

namespace amypet {

namespace {

/// One SMO run over standardized rows: Platt's heuristics with a running
/// threshold and a full error cache E_i = f(x_i) - y_i.
class SmoSolver {
public:
    SmoSolver(std::vector<std::vector<double>> rows, std::vector<int> labels,
              KernelParams kernel, const SmoConfig& cfg)
        : rows_(std::move(rows)),
          y_(std::move(labels)),
          kernel_(kernel),
          cfg_(cfg),
          n_(rows_.size()),
          rng_(cfg.seed) {
        alpha_.assign(n_, 0.0);
        // Full kernel matrix; cohorts are small enough to afford it.
        gram_.assign(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                const double k = cubic_kernel(rows_[i], rows_[j], kernel_);
                gram_[i * n_ + j] = k;
                gram_[j * n_ + i] = k;
            }
        // All alphas start at zero, so f == 0 and E_i == -y_i.
        errors_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) errors_[i] = -static_cast<double>(y_[i]);
    }

    void run() {
        const int max_passes = cfg_.max_pass_factor * static_cast<int>(n_);
        bool examine_all = true;
        for (passes_ = 0;; ++passes_) {
            if (passes_ >= max_passes) {
                // The working set can keep flickering on alpha_tol-sized
                // steps; accept the iterate if it already meets the
                // contract when measured exactly.
                const double violation = recompute_max_violation(final_bias());
                if (violation <= cfg_.tol) break;
                throw NoConvergence("smo_train: pass budget (" + std::to_string(max_passes) +
                                    ") exhausted; max KKT violation " +
                                    std::to_string(violation));
            }
            int changed = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                if (!examine_all && !is_free(alpha_[i])) continue;
                changed += examine(i);
            }
            if (examine_all) {
                if (changed == 0) break; // no violators at tolerance
                examine_all = false;
            } else if (changed == 0) {
                examine_all = true;
            }
        }
    }

    /// Bias per the model contract: mean of (y_j - g_j) over free support
    /// vectors, or the KKT-interval midpoint when none are free.
    double final_bias() const {
        std::vector<double> g(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n_; ++i)
                if (alpha_[i] > 0.0) s += alpha_[i] * y_[i] * gram_[i * n_ + j];
            g[j] = s;
        }
        double sum = 0.0;
        int free_count = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (is_free(alpha_[i])) {
                sum += y_[i] - g[i];
                ++free_count;
            }
        }
        if (free_count > 0) return sum / free_count;

        double lower = -std::numeric_limits<double>::infinity();
        double upper = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n_; ++i) {
            const double v = y_[i] - g[i];
            const bool at_zero = alpha_[i] == 0.0;
            const bool is_lower_bound = (at_zero && y_[i] > 0) || (!at_zero && y_[i] < 0);
            if (is_lower_bound)
                lower = std::max(lower, v);
            else
                upper = std::min(upper, v);
        }
        if (!std::isfinite(lower)) return upper;
        if (!std::isfinite(upper)) return lower;
        return 0.5 * (lower + upper);
    }

    double recompute_max_violation(double bias) const {
        double worst = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            double f = bias;
            for (std::size_t j = 0; j < n_; ++j)
                if (alpha_[j] > 0.0) f += alpha_[j] * y_[j] * gram_[j * n_ + i];
            const double margin = y_[i] * f;
            double v = 0.0;
            if (alpha_[i] == 0.0)
                v = std::max(0.0, 1.0 - margin);
            else if (alpha_[i] == cfg_.c)
                v = std::max(0.0, margin - 1.0);
            else
                v = std::abs(margin - 1.0);
            worst = std::max(worst, v);
        }
        return worst;
    }

    /// Exact O(n^2) dual objective, used to bound incremental drift.
    double recompute_dual_objective() const {
        double lin = 0.0, quad = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (alpha_[i] == 0.0) continue;
            lin += alpha_[i];
            for (std::size_t j = 0; j < n_; ++j) {
                if (alpha_[j] == 0.0) continue;
                quad += alpha_[i] * alpha_[j] * y_[i] * y_[j] * gram_[i * n_ + j];
            }
        }
        return lin - 0.5 * quad;
    }

    const std::vector<double>& alphas() const { return alpha_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    const std::vector<int>& labels() const { return y_; }
    int passes() const { return passes_; }
    std::int64_t accepted_updates() const { return updates_; }

private:
    bool is_free(double a) const { return a > 0.0 && a < cfg_.c; }

    int examine(std::size_t j) {
        const double ej = errors_[j];
        const double rj = ej * static_cast<double>(y_[j]); // y_j f_j - 1
        // The loop runs at half the requested tolerance: the final bias is
        // recomputed from free support vectors afterwards and may shift
        // margins by up to the loop tolerance.
        const double tol = 0.5 * cfg_.tol;
        const bool violated =
            (rj < -tol && alpha_[j] < cfg_.c) || (rj > tol && alpha_[j] > 0.0);
        if (!violated) return 0;

        // Second choice: maximize |E_i - E_j| over free points, lowest
        // index on ties.
        std::size_t best = n_;
        double best_gap = -1.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (i == j || !is_free(alpha_[i])) continue;
            const double gap = std::abs(errors_[i] - ej);
            if (gap > best_gap) {
                best_gap = gap;
                best = i;
            }
        }
        if (best < n_ && take_step(best, j)) return 1;

        // Fallbacks: sweep free points, then everything, from a seeded start.
        const std::size_t start1 = static_cast<std::size_t>(rng_.uniform_below(n_));
        for (std::size_t k = 0; k < n_; ++k) {
            const std::size_t i = (start1 + k) % n_;
            if (i == j || !is_free(alpha_[i])) continue;
            if (take_step(i, j)) return 1;
        }
        const std::size_t start2 = static_cast<std::size_t>(rng_.uniform_below(n_));
        for (std::size_t k = 0; k < n_; ++k) {
            const std::size_t i = (start2 + k) % n_;
            if (i == j || is_free(alpha_[i])) continue;
            if (take_step(i, j)) return 1;
        }
        return 0;
    }

    bool take_step(std::size_t i, std::size_t j) {
        if (i == j) return false;
        const double ai_old = alpha_[i], aj_old = alpha_[j];
        const double yi = y_[i], yj = y_[j];
        const double s = yi * yj;
        const double ei = errors_[i], ej = errors_[j];
        const double c = cfg_.c;

        double lo, hi;
        if (yi != yj) {
            lo = std::max(0.0, aj_old - ai_old);
            hi = std::min(c, c + aj_old - ai_old);
        } else {
            lo = std::max(0.0, ai_old + aj_old - c);
            hi = std::min(c, ai_old + aj_old);
        }
        if (lo >= hi) return false;

        const double kii = gram_[i * n_ + i];
        const double kjj = gram_[j * n_ + j];
        const double kij = gram_[i * n_ + j];
        const double eta = kii + kjj - 2.0 * kij; // curvature along the pair

        double aj_new;
        if (eta > 0.0) {
            aj_new = aj_old + yj * (ei - ej) / eta;
            aj_new = std::clamp(aj_new, lo, hi);
        } else {
            // Flat direction: evaluate the dual at both segment endpoints.
            // v_k excludes the (i,j) contributions, as in Platt's update.
            const double gi = ei + yi - bias_;
            const double gj = ej + yj - bias_;
            const double vi = gi - yi * ai_old * kii - yj * aj_old * kij;
            const double vj = gj - yi * ai_old * kij - yj * aj_old * kjj;
            const auto pair_objective = [&](double a2) {
                const double a1 = ai_old + s * (aj_old - a2);
                return a1 + a2 - 0.5 * kii * a1 * a1 - 0.5 * kjj * a2 * a2 -
                       s * kij * a1 * a2 - yi * a1 * vi - yj * a2 * vj;
            };
            const double w_lo = pair_objective(lo);
            const double w_hi = pair_objective(hi);
            if (w_lo > w_hi + 1e-12)
                aj_new = lo;
            else if (w_hi > w_lo + 1e-12)
                aj_new = hi;
            else
                return false;
        }

        if (std::abs(aj_new - aj_old) < cfg_.alpha_tol) return false;
        double ai_new = ai_old - s * (aj_new - aj_old);

        // Snap near-bound alphas onto the exact bound, compensating the
        // partner so y.alpha is conserved exactly. Sub-epsilon residues
        // would otherwise linger as phantom KKT violators.
        const double snap = 1e-8 * c;
        if (aj_new > 0.0 && aj_new < snap) {
            ai_new += s * aj_new;
            aj_new = 0.0;
        } else if (aj_new < c && aj_new > c - snap) {
            ai_new += s * (aj_new - c);
            aj_new = c;
        }
        if (ai_new > 0.0 && ai_new < snap) {
            aj_new += s * ai_new;
            ai_new = 0.0;
        } else if (ai_new < c && ai_new > c - snap) {
            aj_new += s * (ai_new - c);
            ai_new = c;
        }
        ai_new = std::clamp(ai_new, 0.0, c);
        aj_new = std::clamp(aj_new, 0.0, c);
        if (ai_new == ai_old && aj_new == aj_old) return false;
        const double di = ai_new - ai_old;
        const double dj = aj_new - aj_old;

        // Dual objective change in O(1), from pre-update biasless values.
        const double gi = ei + yi - bias_;
        const double gj = ej + yj - bias_;
        const double delta_obj = di + dj - yi * di * gi - yj * dj * gj -
                                 0.5 * (di * di * kii + dj * dj * kjj) - s * di * dj * kij;
        if (delta_obj < -1e-9 * (1.0 + std::abs(objective_)))
            throw NoConvergence("smo_train: dual objective decreased by " +
                                std::to_string(-delta_obj) + " on an accepted step");
        objective_ += delta_obj;

        constraint_drift_ += yi * di + yj * dj;
        if (std::abs(constraint_drift_) > 1e-8 * c * static_cast<double>(n_))
            throw NoConvergence("smo_train: equality constraint drifted to " +
                                std::to_string(constraint_drift_));

        // Platt's threshold update: force a zero error on whichever of the
        // pair ends up free, else split the difference.
        const double b1 = bias_ - ei - yi * di * kii - yj * dj * kij;
        const double b2 = bias_ - ej - yi * di * kij - yj * dj * kjj;
        double bias_new;
        if (ai_new > 0.0 && ai_new < c)
            bias_new = b1;
        else if (aj_new > 0.0 && aj_new < c)
            bias_new = b2;
        else
            bias_new = 0.5 * (b1 + b2);

        alpha_[i] = ai_new;
        alpha_[j] = aj_new;
        const double bias_delta = bias_new - bias_;
        bias_ = bias_new;
        for (std::size_t k = 0; k < n_; ++k)
            errors_[k] +=
                yi * di * gram_[i * n_ + k] + yj * dj * gram_[j * n_ + k] + bias_delta;
        ++updates_;
        return true;
    }

    std::vector<std::vector<double>> rows_;
    std::vector<int> y_;
    KernelParams kernel_;
    SmoConfig cfg_;
    std::size_t n_;
    Rng rng_;
    std::vector<double> gram_;
    std::vector<double> alpha_;
    std::vector<double> errors_; // E_i = f(x_i) - y_i, bias included
    double bias_ = 0.0;          // running threshold
    double objective_ = 0.0;
    double constraint_drift_ = 0.0;
    int passes_ = 0;
    std::int64_t updates_ = 0;
};

} // namespace

SvmModel smo_train(const FeatureMatrix& features, const std::vector<int>& labels,
                   const SmoConfig& config, SmoDiagnostics* diagnostics) {
    if (features.n_rows() != labels.size())
        throw LengthMismatch("feature rows and labels differ in length");
    if (features.n_rows() < 2) throw TooFewRows("training needs at least 2 rows");
    bool has_pos = false, has_neg = false;
    for (int y : labels) {
        if (y == +1)
            has_pos = true;
        else if (y == -1)
            has_neg = true;
        else
            throw DataError("labels must be +1 or -1");
    }
    if (!has_pos || !has_neg) throw SingleClass("training data contains a single class");
    for (const auto& row : features.rows)
        for (double v : row)
            if (std::isnan(v)) throw DataError("NaN feature value in training data");
    if (!(config.c > 0.0)) throw DataError("box constraint must be positive");

    const auto stats = standardize_fit(features.rows);
    std::vector<std::vector<double>> standardized;
    standardized.reserve(features.n_rows());
    for (const auto& row : features.rows) standardized.push_back(stats.apply(row));

    KernelParams kernel;
    kernel.scale =
        config.kernel_scale.value_or(std::sqrt(static_cast<double>(features.n_features())));
    kernel.offset = config.kernel_offset;
    if (!(kernel.scale > 0.0)) throw DataError("kernel scale must be positive");

    SmoSolver solver(std::move(standardized), labels, kernel, config);
    solver.run();

    SvmModel model;
    model.kernel = kernel;
    model.box_constraint = config.c;
    model.standardization = stats;
    model.feature_region_ids = features.region_ids;
    model.bias = solver.final_bias();
    for (std::size_t i = 0; i < solver.alphas().size(); ++i) {
        const double a = solver.alphas()[i];
        if (a > 0.0) {
            model.support_vectors.push_back(solver.rows()[i]);
            model.dual_coeffs.push_back(a * solver.labels()[i]);
        }
    }

    if (diagnostics != nullptr) {
        diagnostics->passes = solver.passes();
        diagnostics->accepted_updates = solver.accepted_updates();
        diagnostics->dual_objective = solver.recompute_dual_objective();
        diagnostics->max_kkt_violation = solver.recompute_max_violation(model.bias);
        diagnostics->support_vector_count = model.support_vectors.size();
    }
    return model;
}

} // namespace amypet
