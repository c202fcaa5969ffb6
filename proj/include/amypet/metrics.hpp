/*
   metrics.hpp

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

#ifndef AMYPET_METRICS_HPP
#define AMYPET_METRICS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace amypet {

/// Positive class is Abeta+ throughout.
struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + fp + tn + fn; }
};

/// Metrics with undefined denominators reported as absent, never 0 or NaN.
struct MetricSet {
    std::optional<double> accuracy;
    std::optional<double> precision;
    std::optional<double> sensitivity;
    std::optional<double> specificity;
    std::optional<double> f1;
};

MetricSet compute_metrics(const ConfusionCounts& c);

/// Harmonic mean of precision and sensitivity.
double f1_score(double precision, double sensitivity);

/// Threshold sweep over distinct score values (ties grouped), descending.
/// points[k] is the (fpr, tpr) reached once scores >= thresholds[k] are
/// called positive; the curve starts at (0,0) with threshold +inf and ends
/// at (1,1).
struct RocCurve {
    std::vector<double> thresholds;
    std::vector<std::pair<double, double>> points; // (fpr, tpr)
};

struct RocResult {
    RocCurve curve;
    double auc = 0.0; // trapezoidal; equals the Mann-Whitney statistic
};

/// labels are +1/-1; throws SingleClass when one class is missing.
RocResult roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

/// Confusion counts at a fixed threshold: score >= threshold is Pos.
ConfusionCounts confusion_at_threshold(const std::vector<double>& scores,
                                       const std::vector<int>& labels,
                                       double threshold = 0.0);

} // namespace amypet

#endif // AMYPET_METRICS_HPP
