/*
   test_cohort.cpp

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

#include <cmath>

#include "amypet/csv.hpp"
#include "amypet/errors.hpp"
#include "amypet/rng.hpp"
#include "doctest.h"
#include "support/test_helpers.hpp"

using namespace amypet;
using amypet::testing::TempDir;

namespace {

Cohort contingency_cohort(int both_pos, int both_neg, int r1_only_pos, int r2_only_pos) {
    Cohort c;
    int id = 0;
    const auto add = [&](ReaderLabel r1, ReaderLabel r2) {
        ScanRecord rec;
        rec.scan_id = "s" + std::to_string(++id);
        rec.reader1 = r1;
        rec.reader2 = r2;
        c.records.push_back(rec);
    };
    for (int i = 0; i < both_pos; ++i) add(ReaderLabel::Pos, ReaderLabel::Pos);
    for (int i = 0; i < both_neg; ++i) add(ReaderLabel::Neg, ReaderLabel::Neg);
    for (int i = 0; i < r1_only_pos; ++i) add(ReaderLabel::Pos, ReaderLabel::Neg);
    for (int i = 0; i < r2_only_pos; ++i) add(ReaderLabel::Neg, ReaderLabel::Pos);
    return c;
}

} // namespace

TEST_CASE("agreement: perfect, half, and the 150-of-163 case") {
    CHECK(agreement_rate(contingency_cohort(3, 2, 0, 0)) == 1.0);
    CHECK(agreement_rate(contingency_cohort(1, 0, 1, 0)) == 0.5);
    const auto c = contingency_cohort(90, 60, 6, 7);
    CHECK(agreement_rate(c) == doctest::Approx(150.0 / 163.0).epsilon(1e-15));
    CHECK(agreement_rate(c) == doctest::Approx(0.9202).epsilon(1e-4));
}

TEST_CASE("kappa: perfect agreement with mixed labels is 1") {
    CHECK(cohens_kappa(contingency_cohort(5, 7, 0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("kappa on the 90/60/6/7 contingency") {
    const auto c = contingency_cohort(90, 60, 6, 7);
    // exact rational arithmetic: (p_o - p_e) / (1 - p_e)
    //   p_o = 150/163, p_e = (96*97 + 67*66) / 163^2
    //   kappa = (150*163 - 13734) / (163^2 - 13734) = 10716 / 12835
    const double expected = 10716.0 / 12835.0;
    CHECK(cohens_kappa(c) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(std::abs(cohens_kappa(c) - 0.835) < 0.005);
}

TEST_CASE("kappa tends to zero for an independent coin-flip reader") {
    Rng rng(20240);
    Cohort c;
    for (int i = 0; i < 100000; ++i) {
        ScanRecord rec;
        rec.scan_id = "s" + std::to_string(i);
        rec.reader1 = rng.uniform01() < 0.6 ? ReaderLabel::Pos : ReaderLabel::Neg;
        rec.reader2 = rng.uniform01() < 0.5 ? ReaderLabel::Pos : ReaderLabel::Neg;
        c.records.push_back(rec);
    }
    CHECK(std::abs(cohens_kappa(c)) < 0.05);
}

TEST_CASE("kappa identity: kappa*(1-p_e) + p_e == p_o to machine precision") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int a = 1 + static_cast<int>(rng.uniform_below(50));
        const int b = 1 + static_cast<int>(rng.uniform_below(50));
        const int c1 = static_cast<int>(rng.uniform_below(20));
        const int d = static_cast<int>(rng.uniform_below(20));
        const auto c = contingency_cohort(a, b, c1, d);
        const double n = static_cast<double>(a + b + c1 + d);
        const double p_o = agreement_rate(c);
        const double r1_pos = (a + c1) / n, r2_pos = (a + d) / n;
        const double p_e = r1_pos * r2_pos + (1 - r1_pos) * (1 - r2_pos);
        if (p_e >= 1.0) continue;
        const double kappa = cohens_kappa(c);
        CHECK(kappa * (1.0 - p_e) + p_e == doctest::Approx(p_o).epsilon(1e-14));
    }
}

TEST_CASE("label-swap symmetry leaves kappa and agreement unchanged") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = contingency_cohort(1 + static_cast<int>(rng.uniform_below(30)),
                                          1 + static_cast<int>(rng.uniform_below(30)),
                                          static_cast<int>(rng.uniform_below(10)),
                                          static_cast<int>(rng.uniform_below(10)));
        Cohort swapped = c;
        for (auto& rec : swapped.records) {
            rec.reader1 = rec.reader1 == ReaderLabel::Pos ? ReaderLabel::Neg : ReaderLabel::Pos;
            rec.reader2 = rec.reader2 == ReaderLabel::Pos ? ReaderLabel::Neg : ReaderLabel::Pos;
        }
        CHECK(agreement_rate(c) == agreement_rate(swapped));
        CHECK(cohens_kappa(c) == doctest::Approx(cohens_kappa(swapped)).epsilon(1e-12));
    }
}

TEST_CASE("degenerate marginals raise") {
    // both readers call everything positive: p_e == 1
    CHECK_THROWS_AS(cohens_kappa(contingency_cohort(5, 0, 0, 0)), DegenerateMarginals);
}

TEST_CASE("empty cohort raises") {
    Cohort c;
    CHECK_THROWS_AS(agreement_rate(c), EmptyCohort);
    CHECK_THROWS_AS(cohens_kappa(c), EmptyCohort);
}

TEST_CASE("consensus subset keeps concordant records and their features") {
    auto c = contingency_cohort(90, 60, 6, 7);
    CHECK(consensus_subset(c).records.size() == 150);

    const auto all_discordant = contingency_cohort(0, 0, 3, 3);
    CHECK(consensus_subset(all_discordant).records.empty());

    const auto all_concordant = contingency_cohort(4, 4, 0, 0);
    CHECK(consensus_subset(all_concordant).records.size() == 8);

    // feature rows travel with their records
    FeatureMatrix m;
    m.region_ids = {1};
    for (const auto& rec : c.records) {
        m.scan_ids.push_back(rec.scan_id);
        m.rows.push_back({1.0});
    }
    c.attach_features(m);
    const auto sub = consensus_subset(c);
    CHECK(sub.features.n_rows() == 150);
    CHECK(sub.features.scan_ids[0] == sub.records[0].scan_id);
}

TEST_CASE("training labels come from consensus, or adjudication when present") {
    ScanRecord rec;
    rec.scan_id = "x";
    rec.reader1 = ReaderLabel::Pos;
    rec.reader2 = ReaderLabel::Pos;
    CHECK(training_label(rec) == +1);
    rec.reader2 = ReaderLabel::Neg;
    CHECK_THROWS_AS(training_label(rec), DataError);
    rec.adjudicated = ReaderLabel::Neg;
    CHECK(training_label(rec) == -1);
}

TEST_CASE("labels CSV parses case-insensitively with optional adjudicated column") {
    TempDir dir("cohort_csv");
    const auto path = dir.path() / "labels.csv";
    write_file_atomic(path,
                      "scan_id,reader1,reader2,adjudicated\n"
                      "a,POS,pos,\n"
                      "b,neg,Neg,\n"
                      "c,Pos,neg,pos\n");
    const auto c = Cohort::from_labels_csv(path);
    REQUIRE(c.records.size() == 3);
    CHECK(c.records[0].consensus() == Consensus::Pos);
    CHECK(c.records[1].consensus() == Consensus::Neg);
    CHECK(c.records[2].consensus() == Consensus::Discordant);
    CHECK(c.records[2].adjudicated == ReaderLabel::Pos);
    CHECK(adjudicated_subset(c).records.size() == 3);
    CHECK(consensus_subset(c).records.size() == 2);

    write_file_atomic(path, "scan_id,reader1,reader2\na,pos,maybe\n");
    CHECK_THROWS_AS(Cohort::from_labels_csv(path), DataError);

    write_file_atomic(path, "scan_id,reader1,reader2\na,pos,pos\na,neg,neg\n");
    CHECK_THROWS_AS(Cohort::from_labels_csv(path), DataError);
}
