/*
   nifti.cpp

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

#include <zlib.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

#include "amypet/errors.hpp"

namespace amypet {

namespace {

// NIfTI-1 datatype codes.
constexpr std::int16_t DT_UINT8 = 2;
constexpr std::int16_t DT_INT16 = 4;
constexpr std::int16_t DT_INT32 = 8;
constexpr std::int16_t DT_FLOAT32 = 16;
constexpr std::int16_t DT_FLOAT64 = 64;

#pragma pack(push, 1)
struct Nifti1Header {
    std::int32_t sizeof_hdr;
    char data_type[10];
    char db_name[18];
    std::int32_t extents;
    std::int16_t session_error;
    char regular;
    char dim_info;
    std::int16_t dim[8];
    float intent_p1;
    float intent_p2;
    float intent_p3;
    std::int16_t intent_code;
    std::int16_t datatype;
    std::int16_t bitpix;
    std::int16_t slice_start;
    float pixdim[8];
    float vox_offset;
    float scl_slope;
    float scl_inter;
    std::int16_t slice_end;
    char slice_code;
    char xyzt_units;
    float cal_max;
    float cal_min;
    float slice_duration;
    float toffset;
    std::int32_t glmax;
    std::int32_t glmin;
    char descrip[80];
    char aux_file[24];
    std::int16_t qform_code;
    std::int16_t sform_code;
    float quatern_b;
    float quatern_c;
    float quatern_d;
    float qoffset_x;
    float qoffset_y;
    float qoffset_z;
    float srow_x[4];
    float srow_y[4];
    float srow_z[4];
    char intent_name[16];
    char magic[4];
};
#pragma pack(pop)
static_assert(sizeof(Nifti1Header) == 348, "NIfTI-1 header must be 348 bytes");

template <typename T>
void swap_bytes(T& v) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    v = std::bit_cast<T>(bytes);
}

void swap_header(Nifti1Header& h) {
    swap_bytes(h.sizeof_hdr);
    swap_bytes(h.extents);
    swap_bytes(h.session_error);
    for (auto& d : h.dim) swap_bytes(d);
    swap_bytes(h.intent_p1);
    swap_bytes(h.intent_p2);
    swap_bytes(h.intent_p3);
    swap_bytes(h.intent_code);
    swap_bytes(h.datatype);
    swap_bytes(h.bitpix);
    swap_bytes(h.slice_start);
    for (auto& p : h.pixdim) swap_bytes(p);
    swap_bytes(h.vox_offset);
    swap_bytes(h.scl_slope);
    swap_bytes(h.scl_inter);
    swap_bytes(h.slice_end);
    swap_bytes(h.cal_max);
    swap_bytes(h.cal_min);
    swap_bytes(h.slice_duration);
    swap_bytes(h.toffset);
    swap_bytes(h.glmax);
    swap_bytes(h.glmin);
    swap_bytes(h.qform_code);
    swap_bytes(h.sform_code);
    swap_bytes(h.quatern_b);
    swap_bytes(h.quatern_c);
    swap_bytes(h.quatern_d);
    swap_bytes(h.qoffset_x);
    swap_bytes(h.qoffset_y);
    swap_bytes(h.qoffset_z);
    for (auto& s : h.srow_x) swap_bytes(s);
    for (auto& s : h.srow_y) swap_bytes(s);
    for (auto& s : h.srow_z) swap_bytes(s);
}

class GzReader {
public:
    explicit GzReader(const std::filesystem::path& path) {
        // gzread is transparent for uncompressed input, so this is the
        // magic-byte detection the format contract asks for.
        file_ = gzopen(path.string().c_str(), "rb");
        if (file_ == nullptr) throw IoFailure("cannot open " + path.string());
    }
    ~GzReader() {
        if (file_ != nullptr) gzclose(file_);
    }
    GzReader(const GzReader&) = delete;
    GzReader& operator=(const GzReader&) = delete;

    // Reads exactly n bytes or throws TruncatedFile.
    void read_exact(void* dst, std::size_t n, const std::string& what) {
        std::size_t got = 0;
        auto* out = static_cast<unsigned char*>(dst);
        while (got < n) {
            const unsigned chunk =
                static_cast<unsigned>(std::min<std::size_t>(n - got, 1u << 28));
            const int r = gzread(file_, out + got, chunk);
            if (r < 0) throw IoFailure("gzread failed while reading " + what);
            if (r == 0) throw TruncatedFile("file ends inside " + what);
            got += static_cast<std::size_t>(r);
        }
    }

    void skip(std::size_t n) {
        std::vector<unsigned char> sink(std::min<std::size_t>(n, 65536));
        std::size_t left = n;
        while (left > 0) {
            const std::size_t chunk = std::min(left, sink.size());
            read_exact(sink.data(), chunk, "header extension");
            left -= chunk;
        }
    }

private:
    gzFile file_ = nullptr;
};

Affine affine_from_header(const Nifti1Header& h, const std::array<double, 3>& spacing) {
    Affine a = identity_affine();
    if (h.sform_code > 0) {
        for (int j = 0; j < 4; ++j) {
            a[0][j] = h.srow_x[j];
            a[1][j] = h.srow_y[j];
            a[2][j] = h.srow_z[j];
        }
        return a;
    }
    if (h.qform_code > 0) {
        const double b = h.quatern_b, c = h.quatern_c, d = h.quatern_d;
        double a0 = 1.0 - (b * b + c * c + d * d);
        a0 = a0 < 1e-7 ? 0.0 : std::sqrt(a0);
        const double qfac = h.pixdim[0] < 0.0f ? -1.0 : 1.0;
        const double r[3][3] = {
            {a0 * a0 + b * b - c * c - d * d, 2 * b * c - 2 * a0 * d, 2 * b * d + 2 * a0 * c},
            {2 * b * c + 2 * a0 * d, a0 * a0 + c * c - b * b - d * d, 2 * c * d - 2 * a0 * b},
            {2 * b * d - 2 * a0 * c, 2 * c * d + 2 * a0 * b, a0 * a0 + d * d - c * c - b * b}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a[i][j] = r[i][j] * spacing[j] * (j == 2 ? qfac : 1.0);
        a[0][3] = h.qoffset_x;
        a[1][3] = h.qoffset_y;
        a[2][3] = h.qoffset_z;
        return a;
    }
    for (int i = 0; i < 3; ++i) a[i][i] = spacing[i];
    return a;
}

template <typename T>
void decode_payload(const std::vector<unsigned char>& raw, bool swap, std::vector<double>& out) {
    const std::size_t n = raw.size() / sizeof(T);
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        T v;
        std::memcpy(&v, raw.data() + i * sizeof(T), sizeof(T));
        if (swap && sizeof(T) > 1) swap_bytes(v);
        out[i] = static_cast<double>(v);
    }
}

std::filesystem::path temp_sibling(const std::filesystem::path& path) {
    auto tmp = path;
    tmp += ".tmp";
    return tmp;
}

} // namespace

void Volume3D::validate() const {
    for (int i = 0; i < 3; ++i) {
        if (dims[i] <= 0) throw InvalidVolume("volume dims must be positive");
        if (!(spacing[i] > 0.0)) throw InvalidVolume("voxel spacing must be positive");
    }
    if (data.size() != voxel_count())
        throw InvalidVolume("voxel data size does not match dims");
    const double last[4] = {affine[3][0], affine[3][1], affine[3][2], affine[3][3]};
    if (last[0] != 0.0 || last[1] != 0.0 || last[2] != 0.0 || last[3] != 1.0)
        throw InvalidVolume("affine last row must be [0,0,0,1]");
    if (intent == Intent::Labels) {
        for (double v : data) {
            if (!(v >= 0.0) || v != std::floor(v) || v > 32767.0)
                throw InvalidVolume("label volume holds a non-integer or out-of-range value");
        }
    }
}

Volume3D read_nifti(const std::filesystem::path& path, Intent intent) {
    if (!std::filesystem::exists(path)) throw IoFailure("no such file: " + path.string());
    GzReader in(path);

    Nifti1Header hdr{};
    in.read_exact(&hdr, sizeof(hdr), "NIfTI-1 header");

    bool swap = false;
    if (hdr.sizeof_hdr != 348) {
        auto probe = hdr.sizeof_hdr;
        swap_bytes(probe);
        if (probe != 348)
            throw BadMagic(path.string() + ": sizeof_hdr is " + std::to_string(hdr.sizeof_hdr) +
                           ", not a NIfTI-1 file");
        swap = true;
        swap_header(hdr);
    }
    if (std::memcmp(hdr.magic, "n+1", 4) != 0) {
        if (std::memcmp(hdr.magic, "ni1", 4) == 0)
            throw BadMagic(path.string() + ": two-file (.hdr/.img) NIfTI is not supported");
        throw BadMagic(path.string() + ": bad magic, not a NIfTI-1 file");
    }

    int ndim = hdr.dim[0];
    if (ndim == 4 && hdr.dim[4] == 1) ndim = 3; // squeeze singleton time axis
    if (ndim != 3)
        throw DimensionMismatch(path.string() + ": expected a 3-D volume, got dim[0]=" +
                                std::to_string(hdr.dim[0]));

    Volume3D vol;
    vol.intent = intent;
    for (int i = 0; i < 3; ++i) {
        vol.dims[i] = hdr.dim[i + 1];
        vol.spacing[i] = hdr.pixdim[i + 1];
        if (vol.dims[i] <= 0)
            throw DimensionMismatch(path.string() + ": non-positive dim in header");
        if (!(vol.spacing[i] > 0.0)) vol.spacing[i] = 1.0;
    }
    vol.affine = affine_from_header(hdr, vol.spacing);

    std::size_t elem_size = 0;
    switch (hdr.datatype) {
        case DT_UINT8: elem_size = 1; break;
        case DT_INT16: elem_size = 2; break;
        case DT_INT32: elem_size = 4; break;
        case DT_FLOAT32: elem_size = 4; break;
        case DT_FLOAT64: elem_size = 8; break;
        default:
            throw UnsupportedDatatype(path.string() + ": datatype code " +
                                      std::to_string(hdr.datatype) + " is not supported");
    }

    const double vox_offset = hdr.vox_offset;
    if (vox_offset > 348.0) in.skip(static_cast<std::size_t>(vox_offset) - 348);

    std::vector<unsigned char> raw(vol.voxel_count() * elem_size);
    in.read_exact(raw.data(), raw.size(), "voxel payload");

    switch (hdr.datatype) {
        case DT_UINT8: decode_payload<std::uint8_t>(raw, swap, vol.data); break;
        case DT_INT16: decode_payload<std::int16_t>(raw, swap, vol.data); break;
        case DT_INT32: decode_payload<std::int32_t>(raw, swap, vol.data); break;
        case DT_FLOAT32: decode_payload<float>(raw, swap, vol.data); break;
        case DT_FLOAT64: decode_payload<double>(raw, swap, vol.data); break;
        default: break;
    }

    if (hdr.scl_slope != 0.0f && !(hdr.scl_slope == 1.0f && hdr.scl_inter == 0.0f)) {
        const double slope = hdr.scl_slope;
        const double inter = hdr.scl_inter;
        for (double& v : vol.data) v = v * slope + inter;
    }

    vol.validate();
    return vol;
}

void write_nifti(const Volume3D& vol, const std::filesystem::path& path,
                 const std::string& description) {
    vol.validate();

    Nifti1Header hdr{};
    hdr.sizeof_hdr = 348;
    hdr.regular = 'r';
    hdr.dim[0] = 3;
    for (int i = 0; i < 3; ++i) hdr.dim[i + 1] = static_cast<std::int16_t>(vol.dims[i]);
    for (int i = 4; i < 8; ++i) hdr.dim[i] = 1;
    hdr.pixdim[0] = 1.0f;
    for (int i = 0; i < 3; ++i) hdr.pixdim[i + 1] = static_cast<float>(vol.spacing[i]);
    hdr.vox_offset = 352.0f;
    hdr.scl_slope = 1.0f;
    hdr.scl_inter = 0.0f;
    hdr.xyzt_units = 2; // NIFTI_UNITS_MM
    hdr.sform_code = 2; // aligned to some template space
    hdr.qform_code = 0;
    for (int j = 0; j < 4; ++j) {
        hdr.srow_x[j] = static_cast<float>(vol.affine[0][j]);
        hdr.srow_y[j] = static_cast<float>(vol.affine[1][j]);
        hdr.srow_z[j] = static_cast<float>(vol.affine[2][j]);
    }
    std::strncpy(hdr.descrip, description.c_str(), sizeof(hdr.descrip) - 1);
    std::memcpy(hdr.magic, "n+1", 4);

    const bool labels = vol.intent == Intent::Labels;
    hdr.datatype = labels ? DT_INT16 : DT_FLOAT32;
    hdr.bitpix = labels ? 16 : 32;

    // Files are always little-endian on disk.
    constexpr bool host_is_big = std::endian::native == std::endian::big;
    if constexpr (host_is_big) swap_header(hdr);

    std::vector<unsigned char> buf(352 + vol.data.size() * (labels ? 2 : 4), 0);
    std::memcpy(buf.data(), &hdr, sizeof(hdr));
    if (labels) {
        for (std::size_t i = 0; i < vol.data.size(); ++i) {
            auto v = static_cast<std::int16_t>(vol.data[i]);
            if constexpr (host_is_big) swap_bytes(v);
            std::memcpy(buf.data() + 352 + i * 2, &v, 2);
        }
    } else {
        for (std::size_t i = 0; i < vol.data.size(); ++i) {
            auto v = static_cast<float>(vol.data[i]);
            if constexpr (host_is_big) swap_bytes(v);
            std::memcpy(buf.data() + 352 + i * 4, &v, 4);
        }
    }

    const auto tmp = temp_sibling(path);
    const bool gz = path.extension() == ".gz";
    if (gz) {
        gzFile out = gzopen(tmp.string().c_str(), "wb9");
        if (out == nullptr) throw IoFailure("cannot open " + tmp.string() + " for writing");
        std::size_t written = 0;
        while (written < buf.size()) {
            const unsigned chunk =
                static_cast<unsigned>(std::min<std::size_t>(buf.size() - written, 1u << 28));
            const int r = gzwrite(out, buf.data() + written, chunk);
            if (r <= 0) {
                gzclose(out);
                throw IoFailure("gzwrite failed for " + tmp.string());
            }
            written += static_cast<std::size_t>(r);
        }
        if (gzclose(out) != Z_OK) throw IoFailure("gzclose failed for " + tmp.string());
    } else {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoFailure("cannot open " + tmp.string() + " for writing");
        out.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size()));
        if (!out) throw IoFailure("short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoFailure("rename " + tmp.string() + " -> " + path.string() + ": " + ec.message());
}

} // namespace amypet
