/*
   phantom.cpp

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

#include "amypet/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "amypet/csv.hpp"
#include "amypet/errors.hpp"
#include "amypet/nifti.hpp"
#include "amypet/rng.hpp"

#include "json.hpp"

namespace amypet {

void PhantomSpec::validate(const AtlasParcellation& atlas) const {
    if (n_scans < 2) throw BadSpec("n_scans must be >= 2");
    if (!(pos_fraction > 0.0 && pos_fraction < 1.0))
        throw BadSpec("pos_fraction must be in (0,1)");
    if (!(suvr_pos > suvr_neg)) throw BadSpec("suvr_pos must exceed suvr_neg");
    if (!(suvr_neg > 0.0)) throw BadSpec("suvr_neg must be positive");
    if (!(baseline > 0.0)) throw BadSpec("baseline must be positive");
    if (noise_sigma < 0.0) throw BadSpec("noise_sigma must be non-negative");
    if (!(reader_flip_prob >= 0.0 && reader_flip_prob < 0.5))
        throw BadSpec("reader_flip_prob must be in [0, 0.5)");
    if (signal_regions.empty()) throw BadSpec("signal_regions must not be empty");
    std::set<int> seen;
    for (int id : signal_regions) {
        if (!seen.insert(id).second)
            throw BadSpec("duplicate signal region " + std::to_string(id));
        const RegionInfo* info = atlas.regions().find(id);
        if (info == nullptr)
            throw BadSpec("signal region " + std::to_string(id) + " is not in the atlas");
        if (info->cerebellar)
            throw BadSpec("signal region " + std::to_string(id) +
                          " is cerebellar; signal must stay out of the reference");
    }
}

PhantomOutput generate_cohort(const PhantomSpec& spec, const AtlasParcellation& atlas,
                              const std::filesystem::path& out_dir) {
    spec.validate(atlas);

    PhantomOutput out;
    out.scans_dir = out_dir / "scans";
    out.labels_csv = out_dir / "labels.csv";
    out.truth_csv = out_dir / "truth.csv";
    out.spec_json = out_dir / "spec.json";
    std::error_code ec;
    std::filesystem::create_directories(out.scans_dir, ec);
    if (ec) throw IoFailure("cannot create " + out.scans_dir.string() + ": " + ec.message());

    const std::set<int> signal(spec.signal_regions.begin(), spec.signal_regions.end());
    const Volume3D& labels = atlas.label_volume();
    const int n_pos = static_cast<int>(std::lround(spec.pos_fraction * spec.n_scans));

    std::string labels_rows, truth_rows;
    for (int s = 0; s < spec.n_scans; ++s) {
        char id_buf[32];
        std::snprintf(id_buf, sizeof(id_buf), "scan_%04d", s + 1);
        const std::string scan_id = id_buf;
        const bool positive = s < n_pos;
        const double suvr = positive ? spec.suvr_pos : spec.suvr_neg;

        Rng rng(hash_combine(spec.seed, "scan" + std::to_string(s)));
        Volume3D vol;
        vol.dims = labels.dims;
        vol.spacing = labels.spacing;
        vol.affine = labels.affine;
        vol.intent = Intent::Uptake;
        vol.data.assign(labels.data.size(), 0.0);
        for (std::size_t i = 0; i < labels.data.size(); ++i) {
            const int label = static_cast<int>(labels.data[i]);
            if (label == 0) continue; // background stays zero
            const RegionInfo* info = atlas.regions().find(label);
            double v;
            if (info->cerebellar)
                v = spec.baseline;
            else if (signal.count(label) > 0)
                v = spec.baseline * suvr;
            else
                v = spec.baseline * spec.suvr_neg * 0.9;
            if (spec.noise_sigma > 0.0) v *= 1.0 + spec.noise_sigma * rng.normal();
            vol.data[i] = v;
        }
        write_nifti(vol, out.scans_dir / (scan_id + ".nii.gz"),
                    "amypet phantom seed=" + std::to_string(spec.seed));

        const bool flip1 = rng.uniform01() < spec.reader_flip_prob;
        const bool flip2 = rng.uniform01() < spec.reader_flip_prob;
        const bool r1 = positive != flip1;
        const bool r2 = positive != flip2;
        labels_rows += scan_id;
        labels_rows += r1 ? ",pos" : ",neg";
        labels_rows += r2 ? ",pos\n" : ",neg\n";
        truth_rows += scan_id;
        truth_rows += positive ? ",pos\n" : ",neg\n";

        out.scan_ids.push_back(scan_id);
        out.true_labels.push_back(positive ? +1 : -1);
    }

    write_file_atomic(out.labels_csv, "scan_id,reader1,reader2\n" + labels_rows);
    write_file_atomic(out.truth_csv, "scan_id,true_label\n" + truth_rows);

    nlohmann::json doc;
    doc["n_scans"] = spec.n_scans;
    doc["pos_fraction"] = spec.pos_fraction;
    doc["signal_regions"] = spec.signal_regions;
    doc["suvr_pos"] = spec.suvr_pos;
    doc["suvr_neg"] = spec.suvr_neg;
    doc["baseline"] = spec.baseline;
    doc["noise_sigma"] = spec.noise_sigma;
    doc["reader_flip_prob"] = spec.reader_flip_prob;
    doc["seed"] = spec.seed;
    write_file_atomic(out.spec_json, doc.dump(2) + "\n");
    return out;
}

} // namespace amypet
