#include "mgmt/volume.hpp"

#include <cmath>
#include <numeric>

#include "mgmt/common.hpp"

namespace mgmt {

std::string modality_token(Modality m) {
    switch (m) {
        case Modality::T1: return "t1";
        case Modality::T1ce: return "t1ce";
        case Modality::T2: return "t2";
        case Modality::Flair: return "flair";
    }
    return "?";
}

Modality modality_from_token(const std::string& token) {
    if (token == "t1") return Modality::T1;
    if (token == "t1ce") return Modality::T1ce;
    if (token == "t2") return Modality::T2;
    if (token == "flair") return Modality::Flair;
    throw ConfigError("unknown modality token '" + token + "'");
}

std::string region_token(Region r) {
    switch (r) {
        case Region::Whole: return "whole";
        case Region::Core: return "core";
        case Region::EnhCore: return "enhcore";
    }
    return "?";
}

void Volume::validate() const {
    for (int d : dims)
        if (d <= 0) throw DataError("volume dimension must be positive");
    for (double s : spacing)
        if (!(s > 0)) throw DataError("voxel spacing must be positive");
    if (data.size() != voxel_count())
        throw DataError("volume data length " + std::to_string(data.size()) +
                        " does not match dims product " + std::to_string(voxel_count()));
    for (double v : data)
        if (!std::isfinite(v)) throw DataError("volume contains non-finite values");
}

void LabelMask::validate() const {
    for (int d : dims)
        if (d <= 0) throw DataError("mask dimension must be positive");
    for (double s : spacing)
        if (!(s > 0)) throw DataError("mask spacing must be positive");
    std::size_t n = static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    if (labels.size() != n)
        throw DataError("mask label length does not match dims product");
    for (std::uint8_t v : labels)
        if (v != 0 && v != 1 && v != 2 && v != 4)
            throw DataError("mask contains label code " + std::to_string(int(v)) +
                            "; permitted codes are {0,1,2,4}");
}

std::size_t RegionMask::voxel_count() const {
    return static_cast<std::size_t>(
        std::accumulate(member.begin(), member.end(), std::size_t{0}));
}

const RegionMask& RegionSet::get(Region r) const {
    switch (r) {
        case Region::Whole: return whole;
        case Region::Core: return core;
        case Region::EnhCore: return enh_core;
    }
    return whole;
}

RegionSet derive_regions(const LabelMask& mask) {
    mask.validate();
    RegionSet out;
    auto init = [&](RegionMask& rm, Region tag) {
        rm.dims = mask.dims;
        rm.spacing = mask.spacing;
        rm.tag = tag;
        rm.member.assign(mask.labels.size(), 0);
    };
    init(out.whole, Region::Whole);
    init(out.core, Region::Core);
    init(out.enh_core, Region::EnhCore);
    for (std::size_t i = 0; i < mask.labels.size(); ++i) {
        std::uint8_t v = mask.labels[i];
        if (v == 0) continue;
        out.whole.member[i] = 1;                    // 1 u 2 u 4
        if (v == 1 || v == 4) out.core.member[i] = 1; // 1 u 4
        if (v == 4) out.enh_core.member[i] = 1;       // 4
    }
    return out;
}

} // namespace mgmt
