/*
   cohort.hpp

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

#ifndef AMYPET_COHORT_HPP
#define AMYPET_COHORT_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "amypet/features.hpp"

namespace amypet {

enum class ReaderLabel { Pos, Neg };
enum class Consensus { Pos, Neg, Discordant };

struct ScanRecord {
    std::string scan_id;
    ReaderLabel reader1 = ReaderLabel::Neg;
    ReaderLabel reader2 = ReaderLabel::Neg;
    std::optional<ReaderLabel> adjudicated; // optional tie-break for discordant scans

    Consensus consensus() const {
        if (reader1 == reader2)
            return reader1 == ReaderLabel::Pos ? Consensus::Pos : Consensus::Neg;
        return Consensus::Discordant;
    }
};

/// The labeled cohort: per-scan reader calls plus (optionally) the feature
/// matrix aligned by scan id. Immutable once assembled.
struct Cohort {
    std::vector<ScanRecord> records;
    FeatureMatrix features; // may be empty for agreement-only workflows

    /// Loads `scan_id,reader1,reader2[,adjudicated]`; labels are pos|neg,
    /// case-insensitive; an empty adjudicated cell means none.
    static Cohort from_labels_csv(const std::filesystem::path& path);

    /// Binds a feature matrix; every record must have a feature row.
    void attach_features(FeatureMatrix m);
};

/// Fraction of records where the two readers agree. Throws EmptyCohort.
double agreement_rate(const Cohort& cohort);

/// Unweighted 2x2 Cohen's kappa; expected agreement from the product of the
/// per-reader marginals. Throws DegenerateMarginals when chance agreement
/// is exactly 1.
double cohens_kappa(const Cohort& cohort);

/// Concordant records only, consensus becoming the training label. Feature
/// rows are carried over for the surviving records.
Cohort consensus_subset(const Cohort& cohort);

/// Records usable for training under the adjudicated policy: concordant ones
/// plus discordant ones that carry an adjudicated label.
Cohort adjudicated_subset(const Cohort& cohort);

/// Training label (+1 Pos / -1 Neg) of a record within a subset produced by
/// consensus_subset or adjudicated_subset.
int training_label(const ScanRecord& record);

} // namespace amypet

#endif // AMYPET_COHORT_HPP
