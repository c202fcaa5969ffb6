/*
   phantom.hpp

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

#ifndef AMYPET_PHANTOM_HPP
#define AMYPET_PHANTOM_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "amypet/parcellation.hpp"

namespace amypet {

/// Synthetic cohort recipe. Positive scans carry suvr_pos in the signal
/// regions, negative ones suvr_neg; everything is deterministic given seed.
struct PhantomSpec {
    int n_scans = 150;
    double pos_fraction = 0.6;
    std::vector<int> signal_regions;
    double suvr_pos = 1.8;
    double suvr_neg = 1.1;
    double baseline = 1.0;
    double noise_sigma = 0.15;       // relative, multiplicative
    double reader_flip_prob = 0.04;  // per simulated reader
    std::uint64_t seed = 0;

    void validate(const AtlasParcellation& atlas) const; // throws BadSpec
};

struct PhantomOutput {
    std::filesystem::path scans_dir;
    std::filesystem::path labels_csv;
    std::filesystem::path truth_csv;
    std::filesystem::path spec_json;
    std::vector<std::string> scan_ids;
    std::vector<int> true_labels; // +1 / -1, aligned with scan_ids
};

/// Writes scans/<id>.nii.gz, labels.csv (two simulated readers), truth.csv
/// and a spec.json echo under out_dir. Cerebellar voxels get baseline,
/// signal regions baseline*suvr per class, remaining regions
/// baseline*suvr_neg*0.9, then multiplicative Gaussian noise. Per-scan
/// seeds derive from (seed, scan index).
PhantomOutput generate_cohort(const PhantomSpec& spec, const AtlasParcellation& atlas,
                              const std::filesystem::path& out_dir);

} // namespace amypet

#endif // AMYPET_PHANTOM_HPP
