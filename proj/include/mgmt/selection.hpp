#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "mgmt/feature_table.hpp"

namespace mgmt {

/// Per-feature binarization rule: value > threshold maps to 1, else 0.
struct ThresholdRule {
    std::string feature;
    double threshold = 0.0;
    double p_value = 1.0;
    bool selected = false;
};

struct SelectionReport {
    std::vector<ThresholdRule> rules; // one per input feature, input order
    double p_min = 5e-4;

    std::vector<std::string> selected_features() const;
};

/// Search the threshold that best splits subjects by label. Candidates are
/// the midpoints of consecutive sorted unique values; each candidate is
/// scored by a two-sided Fisher's exact test on the 2x2
/// (side-of-threshold x label) table and the lowest p wins, ties going to the
/// smaller threshold. A constant feature or single-class labels degenerate to
/// p = 1.
ThresholdRule best_threshold(std::span<const double> values, std::span<const int> labels);

/// One rule per feature; selected = {p < p_min}. The returned table holds
/// only selected features, each mapped to {0,1}. Zero selected features is a
/// legal (empty) result; training refuses it later with a clear message.
/// Feature scans run in parallel; results do not depend on thread count.
std::pair<SelectionReport, FeatureTable> select_and_binarize(const FeatureTable& table,
                                                             std::span<const int> labels,
                                                             double p_min,
                                                             int threads = 0);

/// Apply stored rules to unseen subjects; never re-estimates thresholds.
/// Throws on a missing feature column.
FeatureTable apply_rules(const SelectionReport& report, const FeatureTable& table);

/// CSV contract: feature_name,threshold,p_value,selected.
void write_selection_csv(const std::filesystem::path& path, const SelectionReport& report);
SelectionReport read_selection_csv(const std::filesystem::path& path);

} // namespace mgmt
