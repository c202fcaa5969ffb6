/*
   test_helpers.hpp

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

#ifndef AMYPET_TESTS_TEST_HELPERS_HPP
#define AMYPET_TESTS_TEST_HELPERS_HPP

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "amypet/parcellation.hpp"
#include "amypet/volume.hpp"

namespace amypet::testing {

/// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("amypet_test_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// A tiny two-region-plus-cerebellum atlas on a 4x4x4 grid:
///   z in {0,1}: region 1;  z == 2: region 2;  z == 3: region 3 (cerebellar).
inline AtlasParcellation tiny_atlas() {
    Volume3D labels;
    labels.dims = {4, 4, 4};
    labels.intent = Intent::Labels;
    labels.data.assign(64, 0.0);
    for (int z = 0; z < 4; ++z)
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x)
                labels.at(x, y, z) = z <= 1 ? 1.0 : (z == 2 ? 2.0 : 3.0);
    RegionTable table;
    table.regions = {{1, "BlockA", false}, {2, "BlockB", false}, {3, "LittleBrain", true}};
    return AtlasParcellation(std::move(labels), std::move(table));
}

/// Uniform uptake volume on the same grid as `atlas`.
inline Volume3D constant_scan(const AtlasParcellation& atlas, double value) {
    const auto& l = atlas.label_volume();
    Volume3D scan;
    scan.dims = l.dims;
    scan.spacing = l.spacing;
    scan.affine = l.affine;
    scan.intent = Intent::Uptake;
    scan.data.assign(l.data.size(), value);
    return scan;
}

} // namespace amypet::testing

#endif // AMYPET_TESTS_TEST_HELPERS_HPP
