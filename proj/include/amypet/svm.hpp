/*
   svm.hpp

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

#ifndef AMYPET_SVM_HPP
#define AMYPET_SVM_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amypet/features.hpp"

namespace amypet {

/// Inhomogeneous cubic kernel K(x,z) = (offset + <x,z>/scale^2)^3.
struct KernelParams {
    int degree = 3;
    double scale = 1.0;
    double offset = 1.0;
};

double cubic_kernel(std::span<const double> x, std::span<const double> z,
                    const KernelParams& k);

/// Per-column mean and population standard deviation. Columns with stddev
/// below 1e-12 are flagged and their divisor forced to 1.
struct Standardization {
    std::vector<double> means;
    std::vector<double> stds;
    std::vector<int> constant_columns;

    std::vector<double> apply(std::span<const double> row) const;
};

Standardization standardize_fit(const std::vector<std::vector<double>>& rows);

/// Sigmoid map from decision values to P(Pos): p = 1 / (1 + exp(a*f + b)).
/// `a` comes out negative whenever larger decision values mean Pos.
struct PlattCalibration {
    double a = 0.0;
    double b = 0.0;

    double positive_probability(double decision_value) const;
};

/// Fits (a, b) by minimizing the smoothed negative log-likelihood with
/// Newton steps and backtracking. Targets use the (N+1)/(N+2), 1/(N+2)
/// smoothing so perfectly separated scores stay finite.
PlattCalibration platt_calibrate(const std::vector<double>& decision_values,
                                 const std::vector<int>& labels, int max_iter = 100);

struct SvmModel {
    KernelParams kernel;
    double box_constraint = 1.0;
    double bias = 0.0;
    Standardization standardization;
    std::vector<std::vector<double>> support_vectors; // standardized rows
    std::vector<double> dual_coeffs;                  // alpha_i * y_i, nonzero
    std::optional<PlattCalibration> calibration;
    std::vector<int> feature_region_ids;

    std::size_t n_features() const { return standardization.means.size(); }

    /// f(x) = sum_i dual_coeff_i K(sv_i, standardize(x)) + bias.
    /// Classification is sign(f) with ties (f == 0) counted Pos.
    double decision_value(std::span<const double> raw_features) const;

    /// Same, for a row already in standardized space (used by LIME).
    double decision_value_standardized(std::span<const double> row) const;
};

inline int classify(double decision_value) { return decision_value >= 0.0 ? +1 : -1; }

struct SmoConfig {
    double c = 1.0;
    std::optional<double> kernel_scale; // default sqrt(feature count)
    double kernel_offset = 1.0;
    double tol = 1e-3;          // KKT violation tolerance
    double alpha_tol = 1e-12;   // minimum accepted alpha change
    int max_pass_factor = 10;   // pass budget = max_pass_factor * n
    std::uint64_t seed = 0;
};

struct SmoDiagnostics {
    int passes = 0;
    std::int64_t accepted_updates = 0;
    double dual_objective = 0.0;
    double max_kkt_violation = 0.0;
    std::size_t support_vector_count = 0;
};

/// Sequential minimal optimization on the soft-margin dual. Standardization
/// is fitted on the given rows and stored in the model, so cross-validation
/// callers pass training rows only. Throws SingleClass when one class is
/// missing and NoConvergence when the pass budget runs out.
SvmModel smo_train(const FeatureMatrix& features, const std::vector<int>& labels,
                   const SmoConfig& config, SmoDiagnostics* diagnostics = nullptr);

/// JSON round-trip of a trained model. load throws SchemaViolation on parse
/// errors, missing fields, or a version mismatch (message names both).
std::string save_model(const SvmModel& model);
SvmModel load_model(const std::string& json_text);
void save_model_file(const SvmModel& model, const std::filesystem::path& path);
SvmModel load_model_file(const std::filesystem::path& path);

} // namespace amypet

#endif // AMYPET_SVM_HPP
