/*
   lime.cpp

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

#include "amypet/lime.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "amypet/errors.hpp"
#include "amypet/rng.hpp"

namespace amypet {

double LimeConfig::effective_width(std::size_t n_features) const {
    if (kernel_width > 0.0) return kernel_width;
    return 0.75 * std::sqrt(static_cast<double>(n_features));
}

void LimeConfig::validate(std::size_t n_features) const {
    if (n_samples < 100) throw DataError("LIME needs n_samples >= 100");
    if (ridge_lambda < 0.0) throw DataError("ridge_lambda must be non-negative");
    if (top_k < 1 || static_cast<std::size_t>(top_k) > n_features)
        throw DataError("top_k must be in [1, feature count]");
}

std::vector<std::vector<double>> sample_perturbations(std::span<const double> standardized_row,
                                                      const LimeConfig& cfg) {
    Rng rng(cfg.seed);
    std::vector<std::vector<double>> samples;
    samples.reserve(static_cast<std::size_t>(cfg.n_samples));
    samples.emplace_back(standardized_row.begin(), standardized_row.end());
    for (int s = 1; s < cfg.n_samples; ++s) {
        std::vector<double> row(standardized_row.size());
        for (std::size_t j = 0; j < row.size(); ++j)
            row[j] = standardized_row[j] + rng.normal();
        samples.push_back(std::move(row));
    }
    return samples;
}

std::vector<double> kernel_weights(const std::vector<std::vector<double>>& samples,
                                   std::span<const double> center, double width) {
    std::vector<double> weights(samples.size());
    const double w2 = width * width;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < center.size(); ++j) {
            const double d = samples[i][j] - center[j];
            d2 += d * d;
        }
        weights[i] = std::exp(-d2 / w2);
    }
    return weights;
}

RidgeFit weighted_ridge(const std::vector<std::vector<double>>& samples,
                        const std::vector<double>& targets,
                        const std::vector<double>& sample_weights, double lambda) {
    if (samples.empty()) throw DataError("weighted_ridge: no samples");
    if (samples.size() != targets.size() || samples.size() != sample_weights.size())
        throw LengthMismatch("weighted_ridge: samples/targets/weights disagree in length");
    const std::size_t d = samples[0].size();
    const std::size_t m = d + 1; // intercept first

    // Normal equations on the augmented design [1 X].
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                              static_cast<Eigen::Index>(m));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    Eigen::VectorXd xi(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        xi(0) = 1.0;
        for (std::size_t j = 0; j < d; ++j) xi(static_cast<Eigen::Index>(j + 1)) = samples[i][j];
        a.noalias() += sample_weights[i] * (xi * xi.transpose());
        rhs.noalias() += sample_weights[i] * targets[i] * xi;
    }
    for (std::size_t j = 1; j < m; ++j)
        a(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += lambda;

    const Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
        ldlt.vectorD().minCoeff() < 1e-12 * std::max(1.0, ldlt.vectorD().maxCoeff()))
        throw SingularSystem("weighted_ridge: normal equations are singular (lambda == 0 and "
                             "rank-deficient design?)");
    const Eigen::VectorXd beta = ldlt.solve(rhs);

    RidgeFit fit;
    fit.intercept = beta(0);
    fit.coefficients.resize(d);
    for (std::size_t j = 0; j < d; ++j) fit.coefficients[j] = beta(static_cast<Eigen::Index>(j + 1));
    return fit;
}

Explanation explain_black_box(const BlackBox& fn, std::span<const double> standardized_row,
                              const std::vector<int>& region_ids, const LimeConfig& cfg) {
    const std::size_t d = standardized_row.size();
    if (region_ids.size() != d)
        throw LengthMismatch("region ids and feature row disagree in length");
    cfg.validate(d);

    const auto samples = sample_perturbations(standardized_row, cfg);
    const auto weights = kernel_weights(samples, standardized_row, cfg.effective_width(d));
    std::vector<double> targets(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) targets[i] = fn(samples[i]);

    const RidgeFit fit = weighted_ridge(samples, targets, weights, cfg.ridge_lambda);

    // Weighted R^2 of the surrogate; 0 by convention for a constant target.
    double wsum = 0.0, wmean = 0.0, wmsq = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        wsum += weights[i];
        wmean += weights[i] * targets[i];
        wmsq += weights[i] * targets[i] * targets[i];
    }
    wmean /= wsum;
    wmsq /= wsum;
    double ss_tot = 0.0, ss_res = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double pred = fit.intercept;
        for (std::size_t j = 0; j < d; ++j) pred += fit.coefficients[j] * samples[i][j];
        const double dev = targets[i] - wmean;
        const double res = targets[i] - pred;
        ss_tot += weights[i] * dev * dev;
        ss_res += weights[i] * res * res;
    }

    Explanation ex;
    ex.intercept = fit.intercept;
    const bool constant_target = ss_tot / wsum <= 1e-12 * std::max(1.0, wmsq);
    ex.local_fidelity_r2 = constant_target ? 0.0 : 1.0 - ss_res / ss_tot;

    std::vector<std::size_t> order(d);
    for (std::size_t j = 0; j < d; ++j) order[j] = j;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double wa = std::abs(fit.coefficients[a]);
        const double wb = std::abs(fit.coefficients[b]);
        if (wa != wb) return wa > wb;
        return region_ids[a] < region_ids[b];
    });
    for (int k = 0; k < cfg.top_k; ++k) {
        const std::size_t j = order[static_cast<std::size_t>(k)];
        ex.region_weights.emplace_back(region_ids[j], fit.coefficients[j]);
    }
    return ex;
}

Explanation explain_instance(const SvmModel& model, const FeatureVector& instance,
                             const LimeConfig& cfg) {
    if (instance.values.size() != model.n_features())
        throw LengthMismatch("instance has " + std::to_string(instance.values.size()) +
                             " features, model has " + std::to_string(model.n_features()));

    const auto standardized = model.standardization.apply(instance.values);
    LimeConfig instance_cfg = cfg;
    instance_cfg.seed = hash_combine(cfg.seed, instance.scan_id);

    BlackBox fn;
    if (model.calibration) {
        fn = [&model](std::span<const double> row) {
            return model.calibration->positive_probability(model.decision_value_standardized(row));
        };
    } else {
        fn = [&model](std::span<const double> row) {
            return model.decision_value_standardized(row);
        };
    }

    Explanation ex = explain_black_box(fn, standardized, model.feature_region_ids, instance_cfg);
    ex.scan_id = instance.scan_id;
    ex.predicted = classify(model.decision_value_standardized(standardized));
    return ex;
}

std::map<int, AggregateExplanation> aggregate_explanations(
    const std::vector<Explanation>& explanations) {
    if (explanations.empty()) throw EmptyClass("no explanations to aggregate");

    std::map<int, std::vector<const Explanation*>> by_class;
    for (const auto& ex : explanations) by_class[ex.predicted].push_back(&ex);

    std::map<int, AggregateExplanation> out;
    for (const auto& [cls, members] : by_class) {
        // Every region seen in any member's top-k participates; instances
        // that did not select it contribute weight 0.
        std::map<int, std::pair<double, int>> sums; // id -> (weight sum, hits)
        for (const auto* ex : members)
            for (const auto& [id, w] : ex->region_weights) {
                sums[id].first += w;
                sums[id].second += 1;
            }
        AggregateExplanation agg;
        agg.label_class = cls;
        const double n = static_cast<double>(members.size());
        for (const auto& [id, sw] : sums) {
            RegionAggregate ra;
            ra.region_id = id;
            ra.mean_weight = sw.first / n;
            ra.frequency = static_cast<double>(sw.second) / n;
            agg.regions.push_back(ra);
        }
        std::sort(agg.regions.begin(), agg.regions.end(),
                  [](const RegionAggregate& a, const RegionAggregate& b) {
                      const double wa = std::abs(a.mean_weight);
                      const double wb = std::abs(b.mean_weight);
                      if (wa != wb) return wa > wb;
                      return a.region_id < b.region_id;
                  });
        out[cls] = std::move(agg);
    }
    return out;
}

Volume3D project_weights(const AggregateExplanation& aggregate, const AtlasParcellation& atlas) {
    std::map<int, double> weight_of;
    for (const auto& ra : aggregate.regions) {
        const RegionInfo* info = atlas.regions().find(ra.region_id);
        if (info == nullptr)
            throw UnknownRegion("region " + std::to_string(ra.region_id) +
                                " is not in the atlas");
        if (!info->cerebellar) weight_of[ra.region_id] = ra.mean_weight;
    }

    const Volume3D& labels = atlas.label_volume();
    Volume3D out;
    out.dims = labels.dims;
    out.spacing = labels.spacing;
    out.affine = labels.affine;
    out.intent = Intent::Weights;
    out.data.assign(labels.data.size(), 0.0);
    for (std::size_t i = 0; i < labels.data.size(); ++i) {
        const int label = static_cast<int>(labels.data[i]);
        if (label == 0) continue;
        const auto it = weight_of.find(label);
        if (it != weight_of.end()) out.data[i] = it->second;
    }
    return out;
}

} // namespace amypet
