/*
   test_nifti.cpp

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

#include "amypet/nifti.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <vector>

#include "amypet/errors.hpp"
#include "amypet/rng.hpp"
#include "doctest.h"
#include "support/test_helpers.hpp"

using namespace amypet;
using amypet::testing::TempDir;

namespace {

Volume3D random_volume(std::uint64_t seed, Intent intent = Intent::Uptake) {
    Rng rng(seed);
    Volume3D v;
    v.dims = {4, 4, 4};
    v.spacing = {2.0, 2.0, 2.5};
    v.intent = intent;
    v.data.resize(64);
    for (double& x : v.data) {
        // values exactly representable as float32 so roundtrips stay bit-exact
        x = static_cast<double>(static_cast<float>(rng.normal()));
    }
    v.affine = identity_affine();
    v.affine[0][0] = 2.0;
    v.affine[1][1] = 2.0;
    v.affine[2][2] = 2.5;
    v.affine[0][3] = -32.0;
    v.affine[1][3] = 12.5;
    v.affine[2][3] = 4.0;
    return v;
}

// Hand-built little-endian NIfTI-1 file with full control over raw fields.
struct RawNifti {
    std::vector<unsigned char> bytes;

    RawNifti() : bytes(352, 0) {
        set_i32(0, 348);               // sizeof_hdr
        set_i16(40, 3);                // dim[0]
        set_i16(42, 2);                // dim[1..3]
        set_i16(44, 2);
        set_i16(46, 2);
        set_i16(70, 16);               // datatype float32
        set_i16(72, 32);               // bitpix
        set_f32(76, 1.0f);             // pixdim[0]
        set_f32(80, 1.0f);
        set_f32(84, 1.0f);
        set_f32(88, 1.0f);
        set_f32(108, 352.0f);          // vox_offset
        set_f32(112, 1.0f);            // scl_slope
        std::memcpy(bytes.data() + 344, "n+1\0", 4);
    }

    void set_i16(std::size_t off, std::int16_t v) { std::memcpy(bytes.data() + off, &v, 2); }
    void set_i32(std::size_t off, std::int32_t v) { std::memcpy(bytes.data() + off, &v, 4); }
    void set_f32(std::size_t off, float v) { std::memcpy(bytes.data() + off, &v, 4); }

    void append_f32(float v) {
        unsigned char raw[4];
        std::memcpy(raw, &v, 4);
        bytes.insert(bytes.end(), raw, raw + 4);
    }
    void append_i16(std::int16_t v) {
        unsigned char raw[2];
        std::memcpy(raw, &v, 2);
        bytes.insert(bytes.end(), raw, raw + 2);
    }

    void write(const std::filesystem::path& p) const {
        std::ofstream out(p, std::ios::binary);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
    }
};

} // namespace

TEST_CASE("write/read roundtrip preserves data, dims, spacing, affine") {
    TempDir dir("nifti_roundtrip");
    const auto v = random_volume(7);
    const auto path = dir.path() / "vol.nii";
    write_nifti(v, path);
    const auto r = read_nifti(path);
    CHECK(r.dims == v.dims);
    CHECK(r.spacing == v.spacing);
    CHECK(r.data == v.data);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(r.affine[i][j] == doctest::Approx(v.affine[i][j]).epsilon(1e-7));
}

TEST_CASE("gzip container roundtrips and is detected by magic, not extension") {
    TempDir dir("nifti_gz");
    const auto v = random_volume(11);
    const auto gz_path = dir.path() / "vol.nii.gz";
    write_nifti(v, gz_path);
    CHECK(read_nifti(gz_path).data == v.data);

    // same gzip bytes under a plain .nii name must still parse
    const auto renamed = dir.path() / "masquerading.nii";
    std::filesystem::copy_file(gz_path, renamed);
    CHECK(read_nifti(renamed).data == v.data);
}

TEST_CASE("labels roundtrip exactly as int16") {
    TempDir dir("nifti_labels");
    Volume3D v = random_volume(3, Intent::Labels);
    for (std::size_t i = 0; i < v.data.size(); ++i) v.data[i] = static_cast<double>(i % 117);
    v.data[5] = 116.0;
    const auto path = dir.path() / "labels.nii.gz";
    write_nifti(v, path);
    const auto r = read_nifti(path, Intent::Labels);
    CHECK(r.data == v.data);
    CHECK(r.intent == Intent::Labels);
}

TEST_CASE("all-zero weights volume reads back as zeros") {
    TempDir dir("nifti_zeros");
    Volume3D v = random_volume(1, Intent::Weights);
    std::fill(v.data.begin(), v.data.end(), 0.0);
    const auto path = dir.path() / "w.nii";
    write_nifti(v, path);
    const auto r = read_nifti(path, Intent::Weights);
    for (double x : r.data) CHECK(x == 0.0);
}

TEST_CASE("sizeof_hdr != 348 raises BadMagic") {
    TempDir dir("nifti_badhdr");
    RawNifti raw;
    raw.set_i32(0, 347);
    for (int i = 0; i < 8; ++i) raw.append_f32(0.0f);
    const auto path = dir.path() / "bad.nii";
    raw.write(path);
    CHECK_THROWS_AS(read_nifti(path), BadMagic);
}

TEST_CASE("bad magic string raises BadMagic") {
    TempDir dir("nifti_badmagic");
    RawNifti raw;
    std::memcpy(raw.bytes.data() + 344, "xxx\0", 4);
    for (int i = 0; i < 8; ++i) raw.append_f32(0.0f);
    const auto path = dir.path() / "bad.nii";
    raw.write(path);
    CHECK_THROWS_AS(read_nifti(path), BadMagic);
}

TEST_CASE("scl_slope/scl_inter scaling on an int16 payload") {
    TempDir dir("nifti_scaling");
    RawNifti raw;
    raw.set_i16(70, 4);      // datatype int16
    raw.set_i16(72, 16);     // bitpix
    raw.set_f32(112, 0.5f);  // scl_slope
    raw.set_f32(116, 1.0f);  // scl_inter
    for (int i = 0; i < 8; ++i) raw.append_i16(4);
    const auto path = dir.path() / "scaled.nii";
    raw.write(path);
    const auto r = read_nifti(path);
    for (double x : r.data) CHECK(x == doctest::Approx(3.0)); // 4 * 0.5 + 1
}

TEST_CASE("scaling property: random slopes and intercepts on float payloads") {
    TempDir dir("nifti_scale_prop");
    Rng rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        const float slope = static_cast<float>(rng.uniform01() * 4.0 - 2.0);
        const float inter = static_cast<float>(rng.uniform01() * 10.0 - 5.0);
        RawNifti raw;
        raw.set_f32(112, slope);
        raw.set_f32(116, inter);
        std::vector<float> stored(8);
        for (auto& s : stored) {
            s = static_cast<float>(rng.normal());
            raw.append_f32(s);
        }
        const auto path = dir.path() / ("t" + std::to_string(trial) + ".nii");
        raw.write(path);
        const auto r = read_nifti(path);
        for (std::size_t i = 0; i < stored.size(); ++i) {
            if (slope == 0.0f) {
                CHECK(r.data[i] == doctest::Approx(stored[i]));
            } else {
                CHECK(r.data[i] ==
                      doctest::Approx(static_cast<double>(stored[i]) * slope + inter)
                          .epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("truncated payload raises TruncatedFile") {
    TempDir dir("nifti_trunc");
    RawNifti raw;
    for (int i = 0; i < 5; ++i) raw.append_f32(1.0f); // 8 voxels declared, 5 present
    const auto path = dir.path() / "short.nii";
    raw.write(path);
    CHECK_THROWS_AS(read_nifti(path), TruncatedFile);
}

TEST_CASE("unsupported datatype raises UnsupportedDatatype") {
    TempDir dir("nifti_dtype");
    RawNifti raw;
    raw.set_i16(70, 32); // complex64, unsupported
    for (int i = 0; i < 16; ++i) raw.append_f32(0.0f);
    const auto path = dir.path() / "cplx.nii";
    raw.write(path);
    CHECK_THROWS_AS(read_nifti(path), UnsupportedDatatype);
}

TEST_CASE("non-3D volume raises DimensionMismatch, singleton 4th dim is squeezed") {
    TempDir dir("nifti_dims");
    {
        RawNifti raw;
        raw.set_i16(40, 4); // dim[0] = 4
        raw.set_i16(48, 3); // dim[4] = 3 time points
        for (int i = 0; i < 24; ++i) raw.append_f32(0.0f);
        const auto path = dir.path() / "4d.nii";
        raw.write(path);
        CHECK_THROWS_AS(read_nifti(path), DimensionMismatch);
    }
    {
        RawNifti raw;
        raw.set_i16(40, 4);
        raw.set_i16(48, 1); // singleton, squeezable
        for (int i = 0; i < 8; ++i) raw.append_f32(2.0f);
        const auto path = dir.path() / "4d_singleton.nii";
        raw.write(path);
        const auto r = read_nifti(path);
        CHECK(r.dims == std::array<int, 3>{2, 2, 2});
        CHECK(r.data[0] == 2.0);
    }
}

TEST_CASE("big-endian file is byte-swapped on read") {
    TempDir dir("nifti_endian");
    RawNifti raw;
    // rebuild every multi-byte field big-endian
    auto swap32 = [&](std::size_t off) { std::reverse(raw.bytes.begin() + off, raw.bytes.begin() + off + 4); };
    auto swap16 = [&](std::size_t off) { std::reverse(raw.bytes.begin() + off, raw.bytes.begin() + off + 2); };
    swap32(0);
    for (std::size_t off = 40; off < 56; off += 2) swap16(off);
    swap16(70);
    swap16(72);
    for (std::size_t off = 76; off <= 92; off += 4) swap32(off);
    swap32(108);
    swap32(112);
    for (int i = 0; i < 8; ++i) raw.append_f32(1.5f);
    for (int i = 0; i < 8; ++i)
        std::reverse(raw.bytes.end() - 32 + i * 4, raw.bytes.end() - 32 + i * 4 + 4);
    const auto path = dir.path() / "be.nii";
    raw.write(path);
    const auto r = read_nifti(path);
    CHECK(r.dims == std::array<int, 3>{2, 2, 2});
    for (double x : r.data) CHECK(x == 1.5);
}

TEST_CASE("missing file raises IoFailure") {
    CHECK_THROWS_AS(read_nifti("/nonexistent/path/vol.nii"), IoFailure);
}
