#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mgmt/volume.hpp"

namespace mgmt::nifti {

// Single-file NIFTI-1 (.nii / .nii.gz) reader and a minimal writer.
// Little- and big-endian headers are handled (detected via dim[0] in [1,7]);
// gzip payloads are detected by the 0x1F 0x8B prefix. NIFTI-2 and paired
// .hdr/.img are rejected. Errors carry the byte offset of the offending field.

/// Parse a NIFTI-1 byte image into a Volume. Supported on-disk datatypes:
/// int16, uint16, int32, float32, float64. scl_slope/scl_inter are applied
/// when scl_slope is nonzero. Throws DataError on malformed input.
Volume parse_volume(const std::vector<std::uint8_t>& bytes);

/// Same parse, then validate values against the permitted label codes.
LabelMask parse_label_mask(const std::vector<std::uint8_t>& bytes);

Volume read_volume(const std::filesystem::path& path);
LabelMask read_label_mask(const std::filesystem::path& path);

/// Serialize as single-file NIFTI-1, float32 payload, little-endian,
/// scl_slope = 0 (no rescaling on read).
std::vector<std::uint8_t> write_volume(const Volume& v);

/// Serialize labels as an int16 payload.
std::vector<std::uint8_t> write_label_mask(const LabelMask& m);

/// Write bytes to path; applies gzip when the path ends in .gz.
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);

/// gzip helpers (zlib). gzip_compress always emits the same bytes for the
/// same input (fixed level, no timestamp).
std::vector<std::uint8_t> gzip_compress(const std::vector<std::uint8_t>& raw);
std::vector<std::uint8_t> gzip_decompress(const std::vector<std::uint8_t>& gz);

} // namespace mgmt::nifti
