/*
   cross_validation.hpp

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

#ifndef AMYPET_CROSS_VALIDATION_HPP
#define AMYPET_CROSS_VALIDATION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "amypet/features.hpp"
#include "amypet/metrics.hpp"
#include "amypet/svm.hpp"

namespace amypet {

/// Seeded stratified split: within each class, indices are shuffled and
/// dealt round-robin, so per-fold class counts never deviate from perfect
/// proportionality by more than one. Throws BadK (k < 2) or ClassTooSmall.
std::vector<std::vector<std::size_t>> stratified_kfold(const std::vector<int>& labels, int k,
                                                       std::uint64_t seed);

struct Prediction {
    std::string scan_id;
    int fold = 0;
    double score = 0.0;
    int predicted = 0; // +1 / -1
    int label = 0;
};

struct FoldResult {
    int fold = 0;
    ConfusionCounts counts;
    MetricSet metrics;
};

struct CvResult {
    ConfusionCounts pooled_counts;
    MetricSet pooled_metrics; // micro-averaged over held-out predictions
    RocResult pooled_roc;
    std::vector<FoldResult> folds;
    std::vector<Prediction> predictions; // cohort order
};

/// Observer invoked per fold after training; used by tests to verify that
/// held-out rows never leak into the standardization statistics.
using FoldObserver = std::function<void(int fold, const std::vector<std::size_t>& train_indices,
                                        const std::vector<std::size_t>& test_indices,
                                        const SvmModel& model)>;

/// k-fold cross-validation: per fold, standardize+train on the other folds
/// and score the held-out rows with raw decision values. Pooled metrics are
/// micro-averaged over the concatenated held-out predictions. Deterministic
/// given the seed; per-fold training seeds are derived from it.
CvResult cross_validate(const FeatureMatrix& features, const std::vector<int>& labels, int k,
                        std::uint64_t seed, const SmoConfig& svm_config,
                        const FoldObserver& observer = nullptr);

} // namespace amypet

#endif // AMYPET_CROSS_VALIDATION_HPP
