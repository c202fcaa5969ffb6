/*
   cohort.cpp

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

#include "amypet/cohort.hpp"

#include <algorithm>
#include <set>

#include "amypet/csv.hpp"
#include "amypet/errors.hpp"

namespace amypet {

namespace {

ReaderLabel parse_label(std::string s, const std::string& context) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "pos") return ReaderLabel::Pos;
    if (s == "neg") return ReaderLabel::Neg;
    throw DataError(context + ": label must be pos or neg, got '" + s + "'");
}

} // namespace

Cohort Cohort::from_labels_csv(const std::filesystem::path& path) {
    const auto table = read_csv(path);
    const auto id_col = table.column("scan_id", path.string());
    const auto r1_col = table.column("reader1", path.string());
    const auto r2_col = table.column("reader2", path.string());
    std::optional<std::size_t> adj_col;
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == "adjudicated") adj_col = i;

    Cohort cohort;
    std::set<std::string> seen;
    for (const auto& row : table.rows) {
        ScanRecord rec;
        rec.scan_id = row[id_col];
        if (!seen.insert(rec.scan_id).second)
            throw DataError(path.string() + ": duplicate scan_id '" + rec.scan_id + "'");
        rec.reader1 = parse_label(row[r1_col], path.string());
        rec.reader2 = parse_label(row[r2_col], path.string());
        if (adj_col && !row[*adj_col].empty())
            rec.adjudicated = parse_label(row[*adj_col], path.string());
        cohort.records.push_back(std::move(rec));
    }
    return cohort;
}

void Cohort::attach_features(FeatureMatrix m) {
    for (const auto& rec : records) {
        if (!m.row_of(rec.scan_id))
            throw DataError("no feature row for scan '" + rec.scan_id + "'");
    }
    features = std::move(m);
}

double agreement_rate(const Cohort& cohort) {
    if (cohort.records.empty()) throw EmptyCohort("agreement_rate on an empty cohort");
    std::size_t agree = 0;
    for (const auto& r : cohort.records)
        if (r.reader1 == r.reader2) ++agree;
    return static_cast<double>(agree) / static_cast<double>(cohort.records.size());
}

double cohens_kappa(const Cohort& cohort) {
    if (cohort.records.empty()) throw EmptyCohort("cohens_kappa on an empty cohort");
    const double n = static_cast<double>(cohort.records.size());
    double r1_pos = 0, r2_pos = 0, agree = 0;
    for (const auto& r : cohort.records) {
        if (r.reader1 == ReaderLabel::Pos) ++r1_pos;
        if (r.reader2 == ReaderLabel::Pos) ++r2_pos;
        if (r.reader1 == r.reader2) ++agree;
    }
    const double p_o = agree / n;
    const double p_e = (r1_pos / n) * (r2_pos / n) + ((n - r1_pos) / n) * ((n - r2_pos) / n);
    if (p_e >= 1.0)
        throw DegenerateMarginals("expected agreement is 1; kappa undefined");
    return (p_o - p_e) / (1.0 - p_e);
}

Cohort consensus_subset(const Cohort& cohort) {
    Cohort out;
    out.features.region_ids = cohort.features.region_ids;
    for (const auto& rec : cohort.records) {
        if (rec.consensus() == Consensus::Discordant) continue;
        out.records.push_back(rec);
        if (const auto row = cohort.features.row_of(rec.scan_id)) {
            out.features.scan_ids.push_back(rec.scan_id);
            out.features.rows.push_back(cohort.features.rows[*row]);
        }
    }
    return out;
}

Cohort adjudicated_subset(const Cohort& cohort) {
    Cohort out;
    out.features.region_ids = cohort.features.region_ids;
    for (const auto& rec : cohort.records) {
        if (rec.consensus() == Consensus::Discordant && !rec.adjudicated) continue;
        out.records.push_back(rec);
        if (const auto row = cohort.features.row_of(rec.scan_id)) {
            out.features.scan_ids.push_back(rec.scan_id);
            out.features.rows.push_back(cohort.features.rows[*row]);
        }
    }
    return out;
}

int training_label(const ScanRecord& record) {
    switch (record.consensus()) {
        case Consensus::Pos: return +1;
        case Consensus::Neg: return -1;
        case Consensus::Discordant:
            if (record.adjudicated)
                return *record.adjudicated == ReaderLabel::Pos ? +1 : -1;
            throw DataError("scan '" + record.scan_id +
                            "' is discordant and has no adjudicated label");
    }
    throw DataError("unreachable consensus state");
}

} // namespace amypet
