/*
   cross_validation.cpp

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

#include "amypet/cross_validation.hpp"

#include <algorithm>

#include "amypet/errors.hpp"
#include "amypet/rng.hpp"

namespace amypet {

std::vector<std::vector<std::size_t>> stratified_kfold(const std::vector<int>& labels, int k,
                                                       std::uint64_t seed) {
    if (k < 2) throw BadK("k must be >= 2, got " + std::to_string(k));
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] > 0 ? pos : neg).push_back(i);
    if (pos.size() < static_cast<std::size_t>(k))
        throw ClassTooSmall("positive class has " + std::to_string(pos.size()) +
                            " members, need >= " + std::to_string(k));
    if (neg.size() < static_cast<std::size_t>(k))
        throw ClassTooSmall("negative class has " + std::to_string(neg.size()) +
                            " members, need >= " + std::to_string(k));

    Rng rng(hash_combine(seed, "stratified_kfold"));
    rng.shuffle(pos);
    rng.shuffle(neg);

    std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < pos.size(); ++i) folds[i % k].push_back(pos[i]);
    for (std::size_t i = 0; i < neg.size(); ++i) folds[i % k].push_back(neg[i]);
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

CvResult cross_validate(const FeatureMatrix& features, const std::vector<int>& labels, int k,
                        std::uint64_t seed, const SmoConfig& svm_config,
                        const FoldObserver& observer) {
    if (features.n_rows() != labels.size())
        throw LengthMismatch("feature rows and labels differ in length");
    const auto folds = stratified_kfold(labels, k, seed);

    CvResult result;
    result.predictions.resize(features.n_rows());

    for (int fold = 0; fold < k; ++fold) {
        const auto& test_idx = folds[static_cast<std::size_t>(fold)];
        std::vector<std::size_t> train_idx;
        train_idx.reserve(features.n_rows() - test_idx.size());
        for (int other = 0; other < k; ++other) {
            if (other == fold) continue;
            const auto& f = folds[static_cast<std::size_t>(other)];
            train_idx.insert(train_idx.end(), f.begin(), f.end());
        }
        std::sort(train_idx.begin(), train_idx.end());

        FeatureMatrix train;
        train.region_ids = features.region_ids;
        std::vector<int> train_labels;
        for (const auto idx : train_idx) {
            train.scan_ids.push_back(features.scan_ids[idx]);
            train.rows.push_back(features.rows[idx]);
            train_labels.push_back(labels[idx]);
        }

        SmoConfig fold_config = svm_config;
        fold_config.seed = hash_combine(seed, "fold" + std::to_string(fold));
        const SvmModel model = smo_train(train, train_labels, fold_config);
        if (observer) observer(fold, train_idx, test_idx, model);

        FoldResult fr;
        fr.fold = fold;
        std::vector<double> fold_scores;
        std::vector<int> fold_labels;
        for (const auto idx : test_idx) {
            const double score = model.decision_value(features.rows[idx]);
            Prediction& p = result.predictions[idx];
            p.scan_id = features.scan_ids[idx];
            p.fold = fold;
            p.score = score;
            p.predicted = classify(score);
            p.label = labels[idx];
            fold_scores.push_back(score);
            fold_labels.push_back(labels[idx]);
        }
        fr.counts = confusion_at_threshold(fold_scores, fold_labels);
        fr.metrics = compute_metrics(fr.counts);
        result.folds.push_back(std::move(fr));
    }

    std::vector<double> all_scores;
    std::vector<int> all_labels;
    all_scores.reserve(result.predictions.size());
    for (const auto& p : result.predictions) {
        all_scores.push_back(p.score);
        all_labels.push_back(p.label);
    }
    result.pooled_counts = confusion_at_threshold(all_scores, all_labels);
    result.pooled_metrics = compute_metrics(result.pooled_counts);
    result.pooled_roc = roc_auc(all_scores, all_labels);
    return result;
}

} // namespace amypet
