#pragma once

#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace mgmt {

/// Subjects x named real-valued features, row-major. Feature names follow the
/// contract <family>__<feature>__<modality>__<region> ("na" where a token
/// does not apply, e.g. shape__Maximum3DDiameter__na__whole,
/// latent__l007__na__na).
struct FeatureTable {
    std::vector<std::string> subjects;
    std::vector<std::string> features;
    std::vector<double> values; // subjects.size() * features.size()
    /// (subject, feature) pairs whose value is undefined for that subject and
    /// was imputed as 0.0.
    std::vector<std::pair<std::string, std::string>> missing;

    std::size_t n_subjects() const { return subjects.size(); }
    std::size_t n_features() const { return features.size(); }
    double& at(std::size_t row, std::size_t col) { return values[row * features.size() + col]; }
    double at(std::size_t row, std::size_t col) const { return values[row * features.size() + col]; }
    const double* row(std::size_t r) const { return values.data() + r * features.size(); }

    /// Column index by name; throws DataError when absent.
    std::size_t feature_index(const std::string& name) const;
    bool has_feature(const std::string& name) const;

    void validate() const;
};

/// Read/write the feature CSV contract: header `subject_id,<feature...>`,
/// values in decimal with full round-trip precision.
FeatureTable read_feature_csv(const std::filesystem::path& path);
void write_feature_csv(const std::filesystem::path& path, const FeatureTable& table);

/// Missing-flag sidecar: `subject_id,feature_name` rows.
void write_missing_csv(const std::filesystem::path& path, const FeatureTable& table);
void read_missing_csv(const std::filesystem::path& path, FeatureTable& table);

/// Load a precomputed latent CSV (`subject_id,l000,...`) with exactly
/// expected_dim latent columns. Column k becomes feature
/// `latent__<header k>__na__na`. Errors: wrong column count, duplicate
/// subject, non-finite value.
FeatureTable load_latent_csv(const std::filesystem::path& path, int expected_dim);

struct MergeResult {
    FeatureTable table;
    std::vector<std::string> dropped_from_a; // subjects only in a
    std::vector<std::string> dropped_from_b; // subjects only in b
};

/// Inner join on subject_id, a's columns first. Feature name collisions and
/// an empty subject intersection are errors; one-sided subjects are dropped
/// and reported.
MergeResult merge_tables(const FeatureTable& a, const FeatureTable& b);

/// Binary MGMT labels keyed by subject.
struct LabelMap {
    std::unordered_map<std::string, int> by_subject;
};

LabelMap read_labels_csv(const std::filesystem::path& path);

/// Labels aligned to table rows; subjects without a label are dropped from
/// the returned table and listed in dropped. Throws if nothing remains.
struct AlignedLabels {
    FeatureTable table;
    std::vector<int> labels;
    std::vector<std::string> dropped;
};
AlignedLabels align_labels(const FeatureTable& table, const LabelMap& labels);

} // namespace mgmt
