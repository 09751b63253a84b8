#include "mgmt/nifti.hpp"

#include <zlib.h>

#include <cmath>
#include <cstring>
#include <fstream>

#include "mgmt/common.hpp"

namespace mgmt::nifti {

namespace {

// NIFTI-1 header field offsets within the 348-byte layout.
constexpr std::size_t kOffSizeofHdr = 0;
constexpr std::size_t kOffDim = 40;       // int16[8]
constexpr std::size_t kOffDatatype = 70;  // int16
constexpr std::size_t kOffBitpix = 72;    // int16
constexpr std::size_t kOffPixdim = 76;    // float[8]
constexpr std::size_t kOffVoxOffset = 108;
constexpr std::size_t kOffSclSlope = 112;
constexpr std::size_t kOffSclInter = 116;
constexpr std::size_t kOffSformCode = 254;
constexpr std::size_t kOffSrowX = 280;
constexpr std::size_t kOffMagic = 344;
constexpr std::size_t kHeaderSize = 348;

enum Datatype : std::int16_t {
    DT_INT16 = 4,
    DT_INT32 = 8,
    DT_FLOAT32 = 16,
    DT_FLOAT64 = 64,
    DT_UINT16 = 512,
};

struct Cursor {
    const std::uint8_t* p;
    std::size_t size;
    bool swap = false;

    void need(std::size_t off, std::size_t n, const char* what) const {
        if (off + n > size)
            throw DataError("truncated NIFTI-1 stream: " + std::string(what) +
                            " needs bytes [" + std::to_string(off) + ", " +
                            std::to_string(off + n) + ") but only " +
                            std::to_string(size) + " available");
    }
    std::int16_t i16(std::size_t off) const {
        std::uint8_t b0 = p[off], b1 = p[off + 1];
        if (swap) std::swap(b0, b1);
        return static_cast<std::int16_t>(b0 | (std::uint16_t(b1) << 8));
    }
    std::int32_t i32(std::size_t off) const {
        std::uint8_t b[4] = {p[off], p[off + 1], p[off + 2], p[off + 3]};
        if (swap) {
            std::swap(b[0], b[3]);
            std::swap(b[1], b[2]);
        }
        std::uint32_t u = b[0] | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
                          (std::uint32_t(b[3]) << 24);
        std::int32_t out;
        std::memcpy(&out, &u, 4);
        return out;
    }
    float f32(std::size_t off) const {
        std::uint8_t b[4] = {p[off], p[off + 1], p[off + 2], p[off + 3]};
        if (swap) {
            std::swap(b[0], b[3]);
            std::swap(b[1], b[2]);
        }
        float out;
        std::memcpy(&out, b, 4);
        return out;
    }
    double f64(std::size_t off) const {
        std::uint8_t b[8];
        std::memcpy(b, p + off, 8);
        if (swap)
            for (int i = 0; i < 4; ++i) std::swap(b[i], b[7 - i]);
        double out;
        std::memcpy(&out, b, 8);
        return out;
    }
};

bool is_gzip(const std::vector<std::uint8_t>& bytes) {
    return bytes.size() >= 2 && bytes[0] == 0x1F && bytes[1] == 0x8B;
}

int element_size(std::int16_t dt) {
    switch (dt) {
        case DT_INT16:
        case DT_UINT16: return 2;
        case DT_INT32:
        case DT_FLOAT32: return 4;
        case DT_FLOAT64: return 8;
        default: return 0;
    }
}

struct ParsedImage {
    std::array<int, 3> dims;
    std::array<double, 3> spacing;
    std::vector<double> data;
    std::array<std::array<double, 4>, 3> affine;
};

ParsedImage parse_image(const std::vector<std::uint8_t>& raw_bytes) {
    const std::vector<std::uint8_t> inflated =
        is_gzip(raw_bytes) ? gzip_decompress(raw_bytes) : std::vector<std::uint8_t>{};
    const std::vector<std::uint8_t>& bytes = is_gzip(raw_bytes) ? inflated : raw_bytes;

    if (bytes.size() < kHeaderSize)
        throw DataError("truncated NIFTI-1 header: need 348 bytes, got " +
                        std::to_string(bytes.size()));

    Cursor cur{bytes.data(), bytes.size(), false};

    // Endianness: dim[0] must land in [1,7]; otherwise the header is
    // byte-swapped.
    std::int16_t ndim = cur.i16(kOffDim);
    if (ndim < 1 || ndim > 7) {
        cur.swap = true;
        ndim = cur.i16(kOffDim);
        if (ndim < 1 || ndim > 7)
            throw DataError("not a NIFTI-1 header: dim[0] (offset 40) is " +
                            std::to_string(cur.i16(kOffDim)) +
                            " under both byte orders");
    }

    std::int32_t sizeof_hdr = cur.i32(kOffSizeofHdr);
    if (sizeof_hdr != 348)
        throw DataError("bad sizeof_hdr (offset 0): got " + std::to_string(sizeof_hdr) +
                        ", expected 348 (NIFTI-2 and Analyze are not supported)");

    cur.need(kOffMagic, 4, "magic");
    const char* magic = reinterpret_cast<const char*>(bytes.data() + kOffMagic);
    if (std::memcmp(magic, "ni1", 3) == 0)
        throw DataError("paired .hdr/.img NIFTI-1 (magic \"ni1\" at offset 344) is not "
                        "supported; use single-file .nii");
    if (std::memcmp(magic, "n+1", 3) != 0 || magic[3] != '\0')
        throw DataError("bad magic at offset 344: expected \"n+1\\0\"");

    if (ndim != 3)
        throw DataError("unsupported dim[0] (offset 40): got " + std::to_string(ndim) +
                        ", expected 3 spatial dims");

    ParsedImage out;
    for (int i = 0; i < 3; ++i) {
        std::int16_t d = cur.i16(kOffDim + 2 * (i + 1));
        if (d <= 0)
            throw DataError("bad dim[" + std::to_string(i + 1) + "] (offset " +
                            std::to_string(kOffDim + 2 * (i + 1)) + "): " + std::to_string(d));
        out.dims[i] = d;
    }
    for (int i = 0; i < 3; ++i) {
        float s = cur.f32(kOffPixdim + 4 * (i + 1));
        if (!(s > 0.0f) || !std::isfinite(s))
            throw DataError("bad pixdim[" + std::to_string(i + 1) + "] (offset " +
                            std::to_string(kOffPixdim + 4 * (i + 1)) +
                            "): spacing must be positive");
        out.spacing[i] = s;
    }

    std::int16_t datatype = cur.i16(kOffDatatype);
    int esize = element_size(datatype);
    if (esize == 0)
        throw DataError("unsupported datatype code " + std::to_string(datatype) +
                        " (offset 70); supported: int16(4), int32(8), float32(16), "
                        "float64(64), uint16(512)");
    std::int16_t bitpix = cur.i16(kOffBitpix);
    if (bitpix != 8 * esize)
        throw DataError("bitpix (offset 72) is " + std::to_string(bitpix) +
                        " but datatype code " + std::to_string(datatype) + " implies " +
                        std::to_string(8 * esize));

    float vox_offset_f = cur.f32(kOffVoxOffset);
    if (!(vox_offset_f >= kHeaderSize))
        throw DataError("bad vox_offset (offset 108): " + std::to_string(vox_offset_f));
    std::size_t vox_offset = static_cast<std::size_t>(vox_offset_f);

    std::size_t nvox = std::size_t(out.dims[0]) * out.dims[1] * out.dims[2];
    std::size_t payload = nvox * std::size_t(esize);
    if (vox_offset + payload > bytes.size())
        throw DataError("truncated payload: need " + std::to_string(payload) +
                        " bytes at offset " + std::to_string(vox_offset) + ", only " +
                        std::to_string(bytes.size() - std::min(bytes.size(), vox_offset)) +
                        " available");

    float slope = cur.f32(kOffSclSlope);
    float inter = cur.f32(kOffSclInter);
    const bool rescale = slope != 0.0f;

    out.data.resize(nvox);
    for (std::size_t i = 0; i < nvox; ++i) {
        std::size_t off = vox_offset + i * esize;
        double v;
        switch (datatype) {
            case DT_INT16: v = cur.i16(off); break;
            case DT_UINT16: v = static_cast<std::uint16_t>(cur.i16(off)); break;
            case DT_INT32: v = cur.i32(off); break;
            case DT_FLOAT32: v = cur.f32(off); break;
            default: v = cur.f64(off); break;
        }
        if (rescale) v = double(slope) * v + double(inter);
        if (!std::isfinite(v))
            throw DataError("non-finite intensity at payload element " + std::to_string(i) +
                            " (byte offset " + std::to_string(off) + ")");
        out.data[i] = v;
    }

    // Keep the sform rows when valid, else a spacing diagonal.
    out.affine = {{{out.spacing[0], 0, 0, 0}, {0, out.spacing[1], 0, 0}, {0, 0, out.spacing[2], 0}}};
    if (cur.i16(kOffSformCode) > 0) {
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 4; ++c)
                out.affine[r][c] = cur.f32(kOffSrowX + 16 * r + 4 * c);
    }
    return out;
}

void put_i16(std::vector<std::uint8_t>& b, std::size_t off, std::int16_t v) {
    b[off] = std::uint8_t(v & 0xFF);
    b[off + 1] = std::uint8_t((v >> 8) & 0xFF);
}

void put_i32(std::vector<std::uint8_t>& b, std::size_t off, std::int32_t v) {
    std::uint32_t u;
    std::memcpy(&u, &v, 4);
    for (int i = 0; i < 4; ++i) b[off + i] = std::uint8_t((u >> (8 * i)) & 0xFF);
}

void put_f32(std::vector<std::uint8_t>& b, std::size_t off, float v) {
    std::uint32_t u;
    std::memcpy(&u, &v, 4);
    for (int i = 0; i < 4; ++i) b[off + i] = std::uint8_t((u >> (8 * i)) & 0xFF);
}

std::vector<std::uint8_t> make_header(const std::array<int, 3>& dims,
                                      const std::array<double, 3>& spacing,
                                      std::int16_t datatype) {
    std::vector<std::uint8_t> h(352, 0); // header + 4 pad bytes (no extensions)
    put_i32(h, kOffSizeofHdr, 348);
    put_i16(h, kOffDim, 3);
    for (int i = 0; i < 3; ++i) put_i16(h, kOffDim + 2 * (i + 1), std::int16_t(dims[i]));
    for (int i = 3; i < 7; ++i) put_i16(h, kOffDim + 2 * (i + 1), 1);
    put_i16(h, kOffDatatype, datatype);
    put_i16(h, kOffBitpix, std::int16_t(8 * element_size(datatype)));
    put_f32(h, kOffPixdim, 1.0f);
    for (int i = 0; i < 3; ++i) put_f32(h, kOffPixdim + 4 * (i + 1), float(spacing[i]));
    put_f32(h, kOffVoxOffset, 352.0f);
    put_f32(h, kOffSclSlope, 0.0f);
    put_f32(h, kOffSclInter, 0.0f);
    // xyzt_units: mm (2)
    h[123] = 2;
    put_i16(h, kOffSformCode, 1);
    put_f32(h, kOffSrowX + 0, float(spacing[0]));
    put_f32(h, kOffSrowX + 16 + 4, float(spacing[1]));
    put_f32(h, kOffSrowX + 32 + 8, float(spacing[2]));
    h[kOffMagic] = 'n';
    h[kOffMagic + 1] = '+';
    h[kOffMagic + 2] = '1';
    h[kOffMagic + 3] = '\0';
    return h;
}

} // namespace

Volume parse_volume(const std::vector<std::uint8_t>& bytes) {
    ParsedImage img = parse_image(bytes);
    Volume v;
    v.dims = img.dims;
    v.spacing = img.spacing;
    v.data = std::move(img.data);
    v.affine = img.affine;
    v.validate();
    return v;
}

LabelMask parse_label_mask(const std::vector<std::uint8_t>& bytes) {
    ParsedImage img = parse_image(bytes);
    LabelMask m;
    m.dims = img.dims;
    m.spacing = img.spacing;
    m.labels.resize(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        double v = img.data[i];
        if (v != 0.0 && v != 1.0 && v != 2.0 && v != 4.0)
            throw DataError("mask voxel " + std::to_string(i) + " has value " +
                            std::to_string(v) + "; permitted label codes are {0,1,2,4}");
        m.labels[i] = static_cast<std::uint8_t>(v);
    }
    m.validate();
    return m;
}

Volume read_volume(const std::filesystem::path& path) {
    try {
        return parse_volume(read_file_bytes(path));
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

LabelMask read_label_mask(const std::filesystem::path& path) {
    try {
        return parse_label_mask(read_file_bytes(path));
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

std::vector<std::uint8_t> write_volume(const Volume& v) {
    v.validate();
    std::vector<std::uint8_t> out = make_header(v.dims, v.spacing, DT_FLOAT32);
    out.resize(352 + 4 * v.data.size());
    for (std::size_t i = 0; i < v.data.size(); ++i)
        put_f32(out, 352 + 4 * i, static_cast<float>(v.data[i]));
    return out;
}

std::vector<std::uint8_t> write_label_mask(const LabelMask& m) {
    m.validate();
    std::vector<std::uint8_t> out = make_header(m.dims, m.spacing, DT_INT16);
    out.resize(352 + 2 * m.labels.size());
    for (std::size_t i = 0; i < m.labels.size(); ++i)
        put_i16(out, 352 + 2 * i, std::int16_t(m.labels[i]));
    return out;
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    const bool gz = path.extension() == ".gz";
    const std::vector<std::uint8_t>& payload = gz ? gzip_compress(bytes) : bytes;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open " + path.string() + " for writing");
    f.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
    if (!f) throw DataError("write failed: " + path.string());
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary | std::ios::ate);
    if (!f) throw DataError("cannot open " + path.string());
    std::streamsize size = f.tellg();
    f.seekg(0);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
    if (size > 0) f.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!f) throw DataError("read failed: " + path.string());
    return bytes;
}

std::vector<std::uint8_t> gzip_compress(const std::vector<std::uint8_t>& raw) {
    z_stream zs{};
    // windowBits 15+16 selects the gzip wrapper; mtime stays 0 so output
    // bytes depend only on input bytes.
    if (deflateInit2(&zs, 6, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw DataError("zlib deflateInit2 failed");
    std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(raw.size())));
    zs.next_in = const_cast<Bytef*>(raw.data());
    zs.avail_in = static_cast<uInt>(raw.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&zs, Z_FINISH);
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw DataError("gzip compression failed");
    out.resize(zs.total_out);
    return out;
}

std::vector<std::uint8_t> gzip_decompress(const std::vector<std::uint8_t>& gz) {
    z_stream zs{};
    if (inflateInit2(&zs, 15 + 32) != Z_OK) // accept gzip or zlib
        throw DataError("zlib inflateInit2 failed");
    std::vector<std::uint8_t> out;
    out.resize(std::max<std::size_t>(gz.size() * 4, 1 << 16));
    zs.next_in = const_cast<Bytef*>(gz.data());
    zs.avail_in = static_cast<uInt>(gz.size());
    std::size_t written = 0;
    for (;;) {
        zs.next_out = out.data() + written;
        zs.avail_out = static_cast<uInt>(out.size() - written);
        int rc = inflate(&zs, Z_NO_FLUSH);
        written = zs.total_out;
        if (rc == Z_STREAM_END) break;
        if (rc == Z_OK || rc == Z_BUF_ERROR) {
            if (zs.avail_in == 0 && rc == Z_BUF_ERROR) {
                inflateEnd(&zs);
                throw DataError("truncated gzip stream");
            }
            out.resize(out.size() * 2);
            continue;
        }
        inflateEnd(&zs);
        throw DataError("corrupt gzip stream (zlib rc " + std::to_string(rc) + ")");
    }
    inflateEnd(&zs);
    out.resize(written);
    return out;
}

} // namespace mgmt::nifti
