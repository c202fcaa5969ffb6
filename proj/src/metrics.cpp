/*
   metrics.cpp

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

#include "amypet/metrics.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "amypet/errors.hpp"

namespace amypet {

double f1_score(double precision, double sensitivity) {
    return 2.0 * precision * sensitivity / (precision + sensitivity);
}

MetricSet compute_metrics(const ConfusionCounts& c) {
    MetricSet m;
    const auto n = c.total();
    if (n >= 1) m.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(n);
    if (c.tp + c.fp > 0)
        m.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    if (c.tp + c.fn > 0)
        m.sensitivity = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    if (c.tn + c.fp > 0)
        m.specificity = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
    if (m.precision && m.sensitivity && (*m.precision + *m.sensitivity) > 0.0)
        m.f1 = f1_score(*m.precision, *m.sensitivity);
    return m;
}

RocResult roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    if (scores.size() != labels.size())
        throw LengthMismatch("scores and labels differ in length");
    std::int64_t n_pos = 0, n_neg = 0;
    for (int y : labels) (y > 0 ? n_pos : n_neg) += 1;
    if (n_pos == 0 || n_neg == 0) throw SingleClass("ROC needs both classes");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });

    RocResult out;
    out.curve.thresholds.push_back(std::numeric_limits<double>::infinity());
    out.curve.points.emplace_back(0.0, 0.0);

    std::int64_t tp = 0, fp = 0;
    double auc = 0.0;
    double prev_fpr = 0.0, prev_tpr = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        const double threshold = scores[order[i]];
        // group tied scores into a single sweep step
        while (i < order.size() && scores[order[i]] == threshold) {
            (labels[order[i]] > 0 ? tp : fp) += 1;
            ++i;
        }
        const double fpr = static_cast<double>(fp) / static_cast<double>(n_neg);
        const double tpr = static_cast<double>(tp) / static_cast<double>(n_pos);
        auc += 0.5 * (tpr + prev_tpr) * (fpr - prev_fpr);
        out.curve.thresholds.push_back(threshold);
        out.curve.points.emplace_back(fpr, tpr);
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    out.auc = auc;
    return out;
}

ConfusionCounts confusion_at_threshold(const std::vector<double>& scores,
                                       const std::vector<int>& labels, double threshold) {
    if (scores.size() != labels.size())
        throw LengthMismatch("scores and labels differ in length");
    ConfusionCounts c;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool pred_pos = scores[i] >= threshold;
        const bool is_pos = labels[i] > 0;
        if (pred_pos && is_pos) ++c.tp;
        else if (pred_pos && !is_pos) ++c.fp;
        else if (!pred_pos && is_pos) ++c.fn;
        else ++c.tn;
    }
    return c;
}

} // namespace amypet
