#include "mgmt/feature_table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include "mgmt/common.hpp"
#include "mgmt/csv.hpp"

namespace mgmt {

std::size_t FeatureTable::feature_index(const std::string& name) const {
    auto it = std::find(features.begin(), features.end(), name);
    if (it == features.end()) throw DataError("feature column not found: " + name);
    return static_cast<std::size_t>(it - features.begin());
}

bool FeatureTable::has_feature(const std::string& name) const {
    return std::find(features.begin(), features.end(), name) != features.end();
}

void FeatureTable::validate() const {
    if (values.size() != subjects.size() * features.size())
        throw DataError("feature table shape mismatch");
    std::unordered_set<std::string> seen;
    for (const auto& f : features)
        if (!seen.insert(f).second) throw DataError("duplicate feature name: " + f);
    seen.clear();
    for (const auto& s : subjects)
        if (!seen.insert(s).second) throw DataError("duplicate subject_id: " + s);
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
    auto rows = csv::read_file(path);
    if (rows.empty()) throw DataError(path.string() + ": empty feature CSV");
    const auto& header = rows[0];
    if (header.empty() || header[0] != "subject_id")
        throw DataError(path.string() + ": first column must be subject_id");
    FeatureTable t;
    t.features.assign(header.begin() + 1, header.end());
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw DataError(path.string() + ": row " + std::to_string(r + 1) + " has " +
                            std::to_string(row.size()) + " fields, header has " +
                            std::to_string(header.size()));
        t.subjects.push_back(row[0]);
        for (std::size_t c = 1; c < row.size(); ++c)
            t.values.push_back(csv::parse_double(
                row[c], path.string() + ":" + std::to_string(r + 1)));
    }
    t.validate();
    return t;
}

void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open " + path.string() + " for writing");
    std::vector<std::string> header{"subject_id"};
    header.insert(header.end(), table.features.begin(), table.features.end());
    csv::write_row(f, header);
    for (std::size_t r = 0; r < table.n_subjects(); ++r) {
        std::vector<std::string> row{table.subjects[r]};
        for (std::size_t c = 0; c < table.n_features(); ++c)
            row.push_back(csv::format_double(table.at(r, c)));
        csv::write_row(f, row);
    }
    if (!f) throw DataError("write failed: " + path.string());
}

void write_missing_csv(const std::filesystem::path& path, const FeatureTable& table) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open " + path.string() + " for writing");
    csv::write_row(f, {"subject_id", "feature_name"});
    for (const auto& [subject, feature] : table.missing)
        csv::write_row(f, {subject, feature});
}

void read_missing_csv(const std::filesystem::path& path, FeatureTable& table) {
    auto rows = csv::read_file(path);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != 2)
            throw DataError(path.string() + ": row " + std::to_string(r + 1) +
                            " must be subject_id,feature_name");
        table.missing.emplace_back(rows[r][0], rows[r][1]);
    }
}

FeatureTable load_latent_csv(const std::filesystem::path& path, int expected_dim) {
    auto rows = csv::read_file(path);
    if (rows.empty()) throw DataError(path.string() + ": empty latent CSV");
    const auto& header = rows[0];
    if (header.empty() || header[0] != "subject_id")
        throw DataError(path.string() + ": first column must be subject_id");
    int dim = static_cast<int>(header.size()) - 1;
    if (dim != expected_dim)
        throw DataError(path.string() + ": expected " + std::to_string(expected_dim) +
                        " latent columns, found " + std::to_string(dim));
    FeatureTable t;
    for (int k = 0; k < dim; ++k)
        t.features.push_back("latent__" + header[k + 1] + "__na__na");
    std::unordered_set<std::string> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw DataError(path.string() + ": row " + std::to_string(r + 1) +
                            " has wrong field count");
        if (!seen.insert(row[0]).second)
            throw DataError(path.string() + ": duplicate subject_id '" + row[0] + "'");
        t.subjects.push_back(row[0]);
        for (std::size_t c = 1; c < row.size(); ++c) {
            double v = csv::parse_double(row[c], path.string() + ":" + std::to_string(r + 1));
            if (!std::isfinite(v))
                throw DataError(path.string() + ": non-finite latent value for subject '" +
                                row[0] + "'");
            t.values.push_back(v);
        }
    }
    t.validate();
    return t;
}

MergeResult merge_tables(const FeatureTable& a, const FeatureTable& b) {
    for (const auto& f : b.features)
        if (a.has_feature(f)) throw DataError("merge: feature name collision: " + f);

    std::unordered_map<std::string, std::size_t> b_row;
    for (std::size_t r = 0; r < b.n_subjects(); ++r) b_row[b.subjects[r]] = r;

    MergeResult out;
    out.table.features = a.features;
    out.table.features.insert(out.table.features.end(), b.features.begin(), b.features.end());

    std::unordered_set<std::string> kept;
    for (std::size_t r = 0; r < a.n_subjects(); ++r) {
        auto it = b_row.find(a.subjects[r]);
        if (it == b_row.end()) {
            out.dropped_from_a.push_back(a.subjects[r]);
            continue;
        }
        kept.insert(a.subjects[r]);
        out.table.subjects.push_back(a.subjects[r]);
        for (std::size_t c = 0; c < a.n_features(); ++c)
            out.table.values.push_back(a.at(r, c));
        for (std::size_t c = 0; c < b.n_features(); ++c)
            out.table.values.push_back(b.at(it->second, c));
    }
    for (const auto& s : b.subjects)
        if (!kept.count(s)) out.dropped_from_b.push_back(s);

    if (out.table.subjects.empty())
        throw DataError("merge: the tables have no subjects in common");

    auto carry_missing = [&](const FeatureTable& src) {
        for (const auto& m : src.missing)
            if (kept.count(m.first)) out.table.missing.push_back(m);
    };
    carry_missing(a);
    carry_missing(b);
    out.table.validate();
    return out;
}

LabelMap read_labels_csv(const std::filesystem::path& path) {
    auto rows = csv::read_file(path);
    if (rows.empty()) throw DataError(path.string() + ": empty labels CSV");
    if (rows[0].size() < 2 || rows[0][0] != "subject_id" || rows[0][1] != "mgmt")
        throw DataError(path.string() + ": header must be subject_id,mgmt");
    LabelMap out;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() < 2)
            throw DataError(path.string() + ": row " + std::to_string(r + 1) + " too short");
        long long v = csv::parse_int(row[1], path.string() + ":" + std::to_string(r + 1));
        if (v != 0 && v != 1)
            throw DataError(path.string() + ": label for '" + row[0] +
                            "' must be 0 or 1, got " + row[1]);
        if (!out.by_subject.emplace(row[0], static_cast<int>(v)).second)
            throw DataError(path.string() + ": duplicate subject_id '" + row[0] + "'");
    }
    return out;
}

AlignedLabels align_labels(const FeatureTable& table, const LabelMap& labels) {
    AlignedLabels out;
    out.table.features = table.features;
    for (std::size_t r = 0; r < table.n_subjects(); ++r) {
        auto it = labels.by_subject.find(table.subjects[r]);
        if (it == labels.by_subject.end()) {
            out.dropped.push_back(table.subjects[r]);
            continue;
        }
        out.table.subjects.push_back(table.subjects[r]);
        out.labels.push_back(it->second);
        for (std::size_t c = 0; c < table.n_features(); ++c)
            out.table.values.push_back(table.at(r, c));
    }
    if (out.table.subjects.empty())
        throw DataError("no subject in the feature table has a label");
    std::unordered_set<std::string> kept(out.table.subjects.begin(), out.table.subjects.end());
    for (const auto& m : table.missing)
        if (kept.count(m.first)) out.table.missing.push_back(m);
    return out;
}

} // namespace mgmt
