#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mgmt {

enum class Modality { T1, T1ce, T2, Flair };

/// Lowercase token used in feature names and manifest columns.
std::string modality_token(Modality m);
Modality modality_from_token(const std::string& token);

enum class Region { Whole, Core, EnhCore };

std::string region_token(Region r);

/// 3D scalar volume, x-fastest voxel order, spacing in mm/voxel.
/// Immutable after construction; shared freely across threads.
struct Volume {
    std::array<int, 3> dims{0, 0, 0};
    std::array<double, 3> spacing{1.0, 1.0, 1.0};
    std::vector<double> data;
    std::string modality; // "t1", "t1ce", "t2", "flair" or empty
    // Voxel-to-mm affine (rows of the sform when present, else diag(spacing)).
    // Parsed and carried along, never used for resampling: inputs are
    // expected to be co-registered.
    std::array<std::array<double, 4>, 3> affine{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}};

    std::size_t voxel_count() const {
        return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    }
    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(dims[0]) *
                   (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims[1]) * z);
    }
    double at(int x, int y, int z) const { return data[index(x, y, z)]; }

    /// Throws DataError if dims/spacing are invalid or data has the wrong
    /// length or non-finite values.
    void validate() const;
};

/// Segmentation labels over the same grid. Permitted codes are the challenge
/// convention: 0 background, 1 non-enhancing core/necrosis, 2 edema,
/// 4 enhancing core.
struct LabelMask {
    std::array<int, 3> dims{0, 0, 0};
    std::array<double, 3> spacing{1.0, 1.0, 1.0};
    std::vector<std::uint8_t> labels;

    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(dims[0]) *
                   (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims[1]) * z);
    }
    void validate() const;
};

/// One analysis region as a boolean grid.
struct RegionMask {
    std::array<int, 3> dims{0, 0, 0};
    std::array<double, 3> spacing{1.0, 1.0, 1.0};
    std::vector<std::uint8_t> member; // 0/1 per voxel
    Region tag = Region::Whole;

    std::size_t index(int x, int y, int z) const {
        return static_cast<std::size_t>(x) +
               static_cast<std::size_t>(dims[0]) *
                   (static_cast<std::size_t>(y) + static_cast<std::size_t>(dims[1]) * z);
    }
    bool contains(int x, int y, int z) const {
        return x >= 0 && y >= 0 && z >= 0 && x < dims[0] && y < dims[1] && z < dims[2] &&
               member[index(x, y, z)] != 0;
    }
    std::size_t voxel_count() const;
    bool empty() const { return voxel_count() == 0; }
};

struct RegionSet {
    RegionMask whole;    // labels 1 u 2 u 4
    RegionMask core;     // labels 1 u 4
    RegionMask enh_core; // label 4
    const RegionMask& get(Region r) const;
};

/// Build the three nested analysis regions from a label mask.
/// An all-empty whole region is legal here; extraction flags it downstream.
RegionSet derive_regions(const LabelMask& mask);

} // namespace mgmt
