/*
   lime.hpp

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

#ifndef AMYPET_LIME_HPP
#define AMYPET_LIME_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "amypet/features.hpp"
#include "amypet/parcellation.hpp"
#include "amypet/svm.hpp"
#include "amypet/volume.hpp"

namespace amypet {

struct LimeConfig {
    int n_samples = 5000;
    double kernel_width = 0.0; // <= 0 means 0.75 * sqrt(feature count)
    double ridge_lambda = 1.0;
    int top_k = 10;
    std::uint64_t seed = 0;

    double effective_width(std::size_t n_features) const;
    void validate(std::size_t n_features) const;
};

/// One instance's local surrogate: signed weights for the top_k regions,
/// positive pushing toward Abeta+.
struct Explanation {
    std::string scan_id;
    int predicted = 0; // +1 / -1
    std::vector<std::pair<int, double>> region_weights; // (region_id, weight)
    double intercept = 0.0;
    double local_fidelity_r2 = 0.0;
};

struct RegionAggregate {
    int region_id = 0;
    double mean_weight = 0.0; // absent-from-top-k counted as 0
    double frequency = 0.0;   // fraction of instances selecting the region
};

struct AggregateExplanation {
    int label_class = 0;                  // +1 / -1
    std::vector<RegionAggregate> regions; // ranked by |mean_weight| desc
};

/// Gaussian perturbations around a standardized row; row 0 is the row
/// itself, remaining rows add unit-variance noise per feature. Seeded.
std::vector<std::vector<double>> sample_perturbations(std::span<const double> standardized_row,
                                                      const LimeConfig& cfg);

/// Exponential kernel exp(-d^2 / width^2) on Euclidean distance.
std::vector<double> kernel_weights(const std::vector<std::vector<double>>& samples,
                                   std::span<const double> center, double width);

struct RidgeFit {
    std::vector<double> coefficients;
    double intercept = 0.0;
};

/// Minimizes sum_i w_i (y_i - b.x_i - b0)^2 + lambda |b|^2, intercept
/// unpenalized, via normal equations and an LDLT factorization. Throws
/// SingularSystem when lambda == 0 and the system is rank-deficient.
RidgeFit weighted_ridge(const std::vector<std::vector<double>>& samples,
                        const std::vector<double>& targets,
                        const std::vector<double>& sample_weights, double lambda);

/// A scalar black box over standardized feature rows.
using BlackBox = std::function<double(std::span<const double>)>;

/// LIME around one standardized row for an arbitrary black box. Weights are
/// the surrogate's coefficients for the top_k features by |coefficient|
/// (ties to the lower region id); r2 is the kernel-weighted fit quality,
/// 0 by convention for a constant black box.
Explanation explain_black_box(const BlackBox& fn, std::span<const double> standardized_row,
                              const std::vector<int>& region_ids, const LimeConfig& cfg);

/// LIME for a trained model: the target is the calibrated Abeta+
/// probability when the model carries calibration, else the raw decision
/// value. The per-instance sampler seed is derived from (cfg.seed,
/// scan_id), so explanation order never matters.
Explanation explain_instance(const SvmModel& model, const FeatureVector& instance,
                             const LimeConfig& cfg);

/// Per-class mean signed weight and selection frequency, ranked by
/// |mean weight|. Throws EmptyClass when no explanations are given.
std::map<int, AggregateExplanation> aggregate_explanations(
    const std::vector<Explanation>& explanations);

/// Paints each region's aggregate mean weight over its atlas voxels;
/// background and cerebellar voxels stay 0. Throws UnknownRegion for ids
/// the atlas does not know.
Volume3D project_weights(const AggregateExplanation& aggregate, const AtlasParcellation& atlas);

} // namespace amypet

#endif // AMYPET_LIME_HPP
