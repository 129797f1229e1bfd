#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace crosstrainer {

// Dense feature matrix with binary labels; the unit passed through every
// pipeline stage. Row-major storage.
struct Dataset {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<double> features;            // n_rows * n_cols
  std::vector<int> labels;                 // each 0 or 1
  std::vector<std::string> feature_names;  // empty, or one name per column

  const double* row(std::size_t i) const { return features.data() + i * n_cols; }
  double* row(std::size_t i) { return features.data() + i * n_cols; }

  void append_row(const double* x, int label);
  Dataset select_rows(const std::vector<std::size_t>& idx) const;
  void validate() const;
};

// Rows of a followed by rows of b; dimensions must match.
Dataset concat_rows(const Dataset& a, const Dataset& b);

struct SyntheticConfig {
  std::size_t n_target = 0;
  std::size_t n_source = 0;
  std::size_t d = 500;
  double sigma = 1.0;     // spread of the source labeling weights
  double noise_sd = 1.0;  // label noise standard deviation
  std::uint64_t seed = 0;
};

struct SyntheticPair {
  Dataset target;
  Dataset source;
};

// Features are iid standard normal in both domains. Target labels threshold
// sum(x) + noise at zero; source labels threshold sum(c_j x_j) + noise with
// c_j ~ N(1, sigma) drawn once per generated dataset. Target and source use
// independent streams derived from the seed, so regenerating with a different
// sigma leaves the target bit-identical.
SyntheticPair generate_synthetic(const SyntheticConfig& cfg);

enum class TableFormat { kAuto, kCsv, kSparse };

// CSV with a header row, or sparse rows "label idx:val ..." (1-based indices)
// preceded by a "#d=<int>" dimension line. Labels may be {0,1} or {-1,+1}.
// label_column selects the CSV label by header name; empty means last column.
Dataset load_table(const std::string& path, TableFormat format = TableFormat::kAuto,
                   const std::string& label_column = "");

struct SplitResult {
  Dataset train;
  Dataset test;
};

// Disjoint uniform partition with |test| = round(test_fraction * n).
SplitResult split_train_test(const Dataset& ds, double test_fraction, std::uint64_t seed);

// Uniform sample of n rows without replacement, original row order kept.
Dataset downsample(const Dataset& ds, std::size_t n, std::uint64_t seed);

struct FoldIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
};

// Validation sets partition {0..n-1}; sizes differ by at most one.
std::vector<FoldIndices> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed);

// Per-column z-scoring. Zero-variance columns are shifted but not scaled.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  void fit(const Dataset& ds);
  void fit(const Dataset& a, const Dataset& b);  // pooled over both
  void apply(Dataset& ds) const;
};

}  // namespace crosstrainer
