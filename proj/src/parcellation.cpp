/*
   parcellation.cpp

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

#include "amypet/parcellation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "amypet/csv.hpp"
#include "amypet/errors.hpp"

namespace amypet {

RegionTable RegionTable::from_csv(const std::filesystem::path& path) {
    const auto table = read_csv(path);
    const auto id_col = table.column("region_id", path.string());
    const auto name_col = table.column("name", path.string());
    const auto cer_col = table.column("is_cerebellar", path.string());

    RegionTable out;
    for (const auto& row : table.rows) {
        RegionInfo info;
        try {
            info.id = std::stoi(row[id_col]);
        } catch (const std::exception&) {
            throw DataError(path.string() + ": non-integer region_id '" + row[id_col] + "'");
        }
        info.name = row[name_col];
        const std::string& flag = row[cer_col];
        if (flag == "1" || flag == "true" || flag == "TRUE" || flag == "True")
            info.cerebellar = true;
        else if (flag == "0" || flag == "false" || flag == "FALSE" || flag == "False")
            info.cerebellar = false;
        else
            throw DataError(path.string() + ": bad is_cerebellar value '" + flag + "'");
        out.regions.push_back(std::move(info));
    }
    std::sort(out.regions.begin(), out.regions.end(),
              [](const RegionInfo& a, const RegionInfo& b) { return a.id < b.id; });
    out.validate();
    return out;
}

void RegionTable::validate() const {
    if (regions.empty()) throw DataError("region table is empty");
    std::set<int> seen;
    bool any_cer = false, any_non = false;
    for (const auto& r : regions) {
        if (r.id <= 0) throw DataError("region id must be positive, got " + std::to_string(r.id));
        if (!seen.insert(r.id).second)
            throw DataError("duplicate region id " + std::to_string(r.id));
        (r.cerebellar ? any_cer : any_non) = true;
    }
    if (!any_cer) throw DataError("region table has no cerebellar region");
    if (!any_non) throw DataError("region table has no non-cerebellar region");
}

const RegionInfo* RegionTable::find(int id) const {
    const auto it = std::lower_bound(
        regions.begin(), regions.end(), id,
        [](const RegionInfo& r, int key) { return r.id < key; });
    if (it == regions.end() || it->id != id) return nullptr;
    return &*it;
}

std::vector<int> RegionTable::non_cerebellar_ids() const {
    std::vector<int> ids;
    for (const auto& r : regions)
        if (!r.cerebellar) ids.push_back(r.id);
    return ids;
}

std::vector<int> RegionTable::cerebellar_ids() const {
    std::vector<int> ids;
    for (const auto& r : regions)
        if (r.cerebellar) ids.push_back(r.id);
    return ids;
}

AtlasParcellation::AtlasParcellation(Volume3D label_volume, RegionTable table)
    : labels_(std::move(label_volume)), table_(std::move(table)) {
    if (labels_.intent != Intent::Labels)
        throw InvalidVolume("atlas volume must have Labels intent");
    labels_.validate();
    table_.validate();

    for (std::size_t i = 0; i < table_.regions.size(); ++i)
        id_to_index_[table_.regions[i].id] = static_cast<int>(i);
    voxel_counts_.assign(table_.regions.size(), 0);

    for (const double v : labels_.data) {
        const int label = static_cast<int>(v);
        if (label == 0) continue;
        const auto it = id_to_index_.find(label);
        if (it == id_to_index_.end())
            throw UnknownLabel("atlas voxel label " + std::to_string(label) +
                               " is not in the region table");
        ++voxel_counts_[static_cast<std::size_t>(it->second)];
    }
    for (std::size_t i = 0; i < table_.regions.size(); ++i) {
        if (voxel_counts_[i] == 0)
            throw EmptyRegion("region " + std::to_string(table_.regions[i].id) + " (" +
                              table_.regions[i].name + ") has no voxels in the atlas");
    }
}

std::int64_t AtlasParcellation::region_voxel_count(int region_id) const {
    const int idx = region_index(region_id);
    return idx < 0 ? 0 : voxel_counts_[static_cast<std::size_t>(idx)];
}

int AtlasParcellation::region_index(int region_id) const {
    const auto it = id_to_index_.find(region_id);
    return it == id_to_index_.end() ? -1 : it->second;
}

namespace {

struct Accumulator {
    double sum = 0.0;
    std::int64_t count = 0;
};

void check_grids(const Volume3D& scan, const AtlasParcellation& atlas) {
    if (scan.dims != atlas.label_volume().dims)
        throw DimensionMismatch("scan grid does not match atlas grid");
    if (scan.intent != Intent::Uptake)
        throw InvalidVolume("region statistics expect an Uptake volume");
}

} // namespace

RegionMeans region_means(const Volume3D& scan, const AtlasParcellation& atlas) {
    check_grids(scan, atlas);

    const auto& labels = atlas.label_volume().data;
    const auto& table = atlas.regions().regions;
    std::vector<Accumulator> acc(table.size());
    std::int64_t excluded = 0;

    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int label = static_cast<int>(labels[i]);
        if (label == 0) continue;
        const double v = scan.data[i];
        if (std::isnan(v) || v < 0.0) {
            ++excluded;
            continue;
        }
        auto& a = acc[static_cast<std::size_t>(atlas.region_index(label))];
        a.sum += v;
        ++a.count;
    }

    RegionMeans out;
    out.excluded_voxels = excluded;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (acc[i].count == 0)
            throw EmptyRegion("region " + std::to_string(table[i].id) +
                              " has no usable voxels after NaN/negative exclusion");
        out.means[table[i].id] = acc[i].sum / static_cast<double>(acc[i].count);
    }
    return out;
}

FeatureVector extract_features(const Volume3D& scan, const AtlasParcellation& atlas,
                               const std::string& scan_id) {
    check_grids(scan, atlas);

    const auto& labels = atlas.label_volume().data;
    const auto& table = atlas.regions().regions;
    std::vector<Accumulator> acc(table.size());
    double cer_sum = 0.0;
    std::int64_t cer_count = 0;

    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int label = static_cast<int>(labels[i]);
        if (label == 0) continue;
        const double v = scan.data[i];
        if (std::isnan(v) || v < 0.0) continue;
        const auto idx = static_cast<std::size_t>(atlas.region_index(label));
        if (table[idx].cerebellar) {
            cer_sum += v;
            ++cer_count;
        } else {
            acc[idx].sum += v;
            ++acc[idx].count;
        }
    }

    if (cer_count == 0) throw ZeroReference("no usable cerebellar voxels");
    const double reference = cer_sum / static_cast<double>(cer_count);
    if (!(reference > 0.0))
        throw ZeroReference("pooled cerebellar mean is not positive: " +
                            std::to_string(reference));

    FeatureVector fv;
    fv.scan_id = scan_id;
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i].cerebellar) continue;
        if (acc[i].count == 0)
            throw EmptyRegion("region " + std::to_string(table[i].id) +
                              " has no usable voxels after NaN/negative exclusion");
        fv.region_ids.push_back(table[i].id);
        fv.values.push_back(acc[i].sum / static_cast<double>(acc[i].count) / reference);
    }
    return fv;
}

void FeatureMatrix::add(const FeatureVector& fv) {
    if (region_ids.empty() && rows.empty()) region_ids = fv.region_ids;
    if (fv.region_ids != region_ids)
        throw LengthMismatch("feature vector for " + fv.scan_id +
                             " has different region ids than the matrix");
    scan_ids.push_back(fv.scan_id);
    rows.push_back(fv.values);
}

std::optional<std::size_t> FeatureMatrix::row_of(const std::string& scan_id) const {
    for (std::size_t i = 0; i < scan_ids.size(); ++i)
        if (scan_ids[i] == scan_id) return i;
    return std::nullopt;
}

std::string FeatureMatrix::to_csv(const std::string& comment) const {
    std::string out;
    if (!comment.empty()) out += "# " + comment + "\n";
    out += "scan_id";
    for (const int id : region_ids) out += ",region_" + std::to_string(id);
    out += "\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out += scan_ids[r];
        for (const double v : rows[r]) {
            out += ',';
            out += format_double(v);
        }
        out += "\n";
    }
    return out;
}

FeatureMatrix FeatureMatrix::from_csv(const std::filesystem::path& path) {
    const auto table = read_csv(path);
    if (table.header.empty() || table.header[0] != "scan_id")
        throw DataError(path.string() + ": first column must be scan_id");

    FeatureMatrix m;
    for (std::size_t c = 1; c < table.header.size(); ++c) {
        const std::string& h = table.header[c];
        if (h.rfind("region_", 0) != 0)
            throw DataError(path.string() + ": feature column '" + h +
                            "' does not look like region_<id>");
        try {
            m.region_ids.push_back(std::stoi(h.substr(7)));
        } catch (const std::exception&) {
            throw DataError(path.string() + ": bad region column '" + h + "'");
        }
    }
    for (const auto& row : table.rows) {
        m.scan_ids.push_back(row[0]);
        std::vector<double> values;
        values.reserve(row.size() - 1);
        for (std::size_t c = 1; c < row.size(); ++c) {
            try {
                values.push_back(std::stod(row[c]));
            } catch (const std::exception&) {
                throw DataError(path.string() + ": non-numeric feature value '" + row[c] + "'");
            }
        }
        m.rows.push_back(std::move(values));
    }
    return m;
}

} // namespace amypet
