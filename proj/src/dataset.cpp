#include "crosstrainer/dataset.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "crosstrainer/errors.hpp"
#include "crosstrainer/rng.hpp"

namespace crosstrainer {

void Dataset::append_row(const double* x, int label) {
  features.insert(features.end(), x, x + n_cols);
  labels.push_back(label);
  ++n_rows;
}

Dataset Dataset::select_rows(const std::vector<std::size_t>& idx) const {
  Dataset out;
  out.n_cols = n_cols;
  out.feature_names = feature_names;
  out.features.reserve(idx.size() * n_cols);
  out.labels.reserve(idx.size());
  for (std::size_t i : idx) {
    if (i >= n_rows) throw validation_error("row index out of range");
    out.append_row(row(i), labels[i]);
  }
  return out;
}

void Dataset::validate() const {
  if (labels.size() != n_rows)
    throw validation_error("label count does not match row count");
  if (features.size() != n_rows * n_cols)
    throw validation_error("feature buffer size does not match shape");
  if (!feature_names.empty() && feature_names.size() != n_cols)
    throw validation_error("feature name count does not match column count");
  for (int y : labels)
    if (y != 0 && y != 1) throw validation_error("labels must be 0 or 1");
}

Dataset concat_rows(const Dataset& a, const Dataset& b) {
  if (a.n_cols != b.n_cols && a.n_rows != 0 && b.n_rows != 0)
    throw validation_error("cannot combine datasets of different dimension");
  Dataset out;
  out.n_cols = a.n_rows != 0 ? a.n_cols : b.n_cols;
  out.feature_names = !a.feature_names.empty() ? a.feature_names : b.feature_names;
  out.features.reserve((a.n_rows + b.n_rows) * out.n_cols);
  out.features = a.features;
  out.features.insert(out.features.end(), b.features.begin(), b.features.end());
  out.labels = a.labels;
  out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
  out.n_rows = a.n_rows + b.n_rows;
  return out;
}

SyntheticPair generate_synthetic(const SyntheticConfig& cfg) {
  if (cfg.n_target < 1 || cfg.n_source < 1 || cfg.d < 1)
    throw validation_error("synthetic config requires n_target, n_source, d >= 1");
  if (cfg.sigma < 0.0 || cfg.noise_sd < 0.0)
    throw validation_error("synthetic config requires sigma, noise_sd >= 0");

  SyntheticPair out;
  out.target.n_cols = cfg.d;
  out.source.n_cols = cfg.d;

  Rng target_rng(cfg.seed, 1);
  std::vector<double> x(cfg.d);
  out.target.features.reserve(cfg.n_target * cfg.d);
  for (std::size_t i = 0; i < cfg.n_target; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < cfg.d; ++j) {
      x[j] = target_rng.normal();
      sum += x[j];
    }
    double eps = cfg.noise_sd * target_rng.normal();
    out.target.append_row(x.data(), sum + eps > 0.0 ? 1 : 0);
  }

  // Source stream draws the labeling weights first, then rows; the weights
  // depend on sigma only through scaling, so source features match across
  // sigma values under one seed.
  Rng source_rng(cfg.seed, 2);
  std::vector<double> c(cfg.d);
  for (std::size_t j = 0; j < cfg.d; ++j) c[j] = 1.0 + cfg.sigma * source_rng.normal();
  out.source.features.reserve(cfg.n_source * cfg.d);
  for (std::size_t i = 0; i < cfg.n_source; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < cfg.d; ++j) {
      x[j] = source_rng.normal();
      sum += c[j] * x[j];
    }
    double eps = cfg.noise_sd * source_rng.normal();
    out.source.append_row(x.data(), sum + eps > 0.0 ? 1 : 0);
  }
  return out;
}

namespace {

int parse_label(double v, const std::string& where) {
  if (v == 0.0 || v == 1.0) return static_cast<int>(v);
  if (v == -1.0) return 0;
  throw validation_error(where + ": label must be 0/1 or -1/+1");
}

double parse_double(std::string_view tok, const std::string& where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw format_error(where + ": expected a number, got '" + std::string(tok) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(s.substr(start)));
      break;
    }
    out.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

Dataset load_csv(const std::vector<std::string>& lines, const std::string& path,
                 const std::string& label_column) {
  auto header = split(lines.front(), ',');
  if (header.empty()) throw format_error(path + ":1: empty header row");

  std::size_t label_idx = header.size() - 1;
  if (!label_column.empty()) {
    auto it = std::find_if(header.begin(), header.end(),
                           [&](std::string_view h) { return h == label_column; });
    if (it == header.end())
      throw validation_error(path + ": no column named '" + label_column + "'");
    label_idx = static_cast<std::size_t>(it - header.begin());
  }

  Dataset out;
  out.n_cols = header.size() - 1;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (j != label_idx) out.feature_names.emplace_back(header[j]);

  std::vector<double> x(out.n_cols);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    std::string_view line = trim(lines[li]);
    if (line.empty()) continue;
    std::string where = path + ":" + std::to_string(li + 1);
    auto tokens = split(line, ',');
    if (tokens.size() != header.size())
      throw format_error(where + ": expected " + std::to_string(header.size()) +
                         " fields, got " + std::to_string(tokens.size()));
    std::size_t col = 0;
    int label = 0;
    for (std::size_t j = 0; j < tokens.size(); ++j) {
      double v = parse_double(tokens[j], where);
      if (j == label_idx)
        label = parse_label(v, where);
      else
        x[col++] = v;
    }
    out.append_row(x.data(), label);
  }
  return out;
}

Dataset load_sparse(const std::vector<std::string>& lines, const std::string& path) {
  std::string_view first = trim(lines.front());
  if (!first.starts_with("#d="))
    throw format_error(path + ":1: sparse files must declare the dimension as '#d=<int>'");
  std::size_t d = 0;
  {
    auto tok = first.substr(3);
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || d == 0)
      throw format_error(path + ":1: bad dimension in '" + std::string(first) + "'");
  }

  Dataset out;
  out.n_cols = d;
  std::vector<double> x(d);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    std::string_view line = trim(lines[li]);
    if (line.empty()) continue;
    std::string where = path + ":" + std::to_string(li + 1);
    auto tokens = split_ws(line);
    int label = parse_label(parse_double(tokens.front(), where), where);
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t ti = 1; ti < tokens.size(); ++ti) {
      auto tok = tokens[ti];
      std::size_t colon = tok.find(':');
      if (colon == std::string_view::npos)
        throw format_error(where + ": expected idx:val, got '" + std::string(tok) + "'");
      std::size_t idx = 0;
      auto head = tok.substr(0, colon);
      auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
      if (ec != std::errc() || ptr != head.data() + head.size())
        throw format_error(where + ": bad index '" + std::string(head) + "'");
      if (idx < 1 || idx > d)
        throw format_error(where + ": index " + std::to_string(idx) +
                           " outside declared dimension " + std::to_string(d));
      x[idx - 1] = parse_double(tok.substr(colon + 1), where);  // 1-based on disk
    }
    out.append_row(x.data(), label);
  }
  return out;
}

}  // namespace

Dataset load_table(const std::string& path, TableFormat format, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw format_error(path + ": file is empty");

  if (format == TableFormat::kAuto)
    format = trim(lines.front()).starts_with("#d=") ? TableFormat::kSparse : TableFormat::kCsv;

  Dataset out = format == TableFormat::kSparse ? load_sparse(lines, path)
                                               : load_csv(lines, path, label_column);
  out.validate();
  return out;
}

SplitResult split_train_test(const Dataset& ds, double test_fraction, std::uint64_t seed) {
  if (ds.n_rows < 2) throw validation_error("need at least 2 rows to split");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw validation_error("test_fraction must lie in (0, 1)");
  auto n_test = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(ds.n_rows)));

  std::vector<std::size_t> perm(ds.n_rows);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed, 3);
  rng.shuffle(perm);

  std::vector<std::size_t> test_idx(perm.begin(), perm.begin() + n_test);
  std::vector<std::size_t> train_idx(perm.begin() + n_test, perm.end());
  std::sort(test_idx.begin(), test_idx.end());
  std::sort(train_idx.begin(), train_idx.end());
  return {ds.select_rows(train_idx), ds.select_rows(test_idx)};
}

Dataset downsample(const Dataset& ds, std::size_t n, std::uint64_t seed) {
  if (n > ds.n_rows) throw validation_error("cannot downsample beyond dataset size");
  std::vector<std::size_t> perm(ds.n_rows);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed, 4);
  rng.shuffle(perm);
  std::vector<std::size_t> keep(perm.begin(), perm.begin() + n);
  std::sort(keep.begin(), keep.end());
  return ds.select_rows(keep);
}

std::vector<FoldIndices> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2 || k > n) throw validation_error("k must satisfy 2 <= k <= n");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed, 5);
  rng.shuffle(perm);

  std::vector<FoldIndices> folds(k);
  std::size_t start = 0;
  for (std::size_t f = 0; f < k; ++f) {
    std::size_t size = n / k + (f < n % k ? 1 : 0);
    auto& fold = folds[f];
    fold.validation.assign(perm.begin() + start, perm.begin() + start + size);
    fold.train.reserve(n - size);
    fold.train.insert(fold.train.end(), perm.begin(), perm.begin() + start);
    fold.train.insert(fold.train.end(), perm.begin() + start + size, perm.end());
    std::sort(fold.validation.begin(), fold.validation.end());
    std::sort(fold.train.begin(), fold.train.end());
    start += size;
  }
  return folds;
}

void Standardizer::fit(const Dataset& ds) { fit(ds, Dataset{.n_cols = ds.n_cols}); }

void Standardizer::fit(const Dataset& a, const Dataset& b) {
  if (a.n_cols != b.n_cols && b.n_rows != 0)
    throw validation_error("cannot fit standardizer across different dimensions");
  std::size_t d = a.n_cols;
  std::size_t n = a.n_rows + b.n_rows;
  if (n == 0) throw validation_error("cannot fit standardizer on empty data");
  mean.assign(d, 0.0);
  scale.assign(d, 0.0);
  auto accumulate = [&](const Dataset& ds) {
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
      const double* x = ds.row(i);
      for (std::size_t j = 0; j < d; ++j) mean[j] += x[j];
    }
  };
  accumulate(a);
  accumulate(b);
  for (std::size_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(n);
  auto accumulate_sq = [&](const Dataset& ds) {
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
      const double* x = ds.row(i);
      for (std::size_t j = 0; j < d; ++j) {
        double dx = x[j] - mean[j];
        scale[j] += dx * dx;
      }
    }
  };
  accumulate_sq(a);
  accumulate_sq(b);
  for (std::size_t j = 0; j < d; ++j) {
    scale[j] = std::sqrt(scale[j] / static_cast<double>(n));
    if (scale[j] == 0.0) scale[j] = 1.0;
  }
}

void Standardizer::apply(Dataset& ds) const {
  if (ds.n_cols != mean.size())
    throw validation_error("standardizer dimension does not match dataset");
  for (std::size_t i = 0; i < ds.n_rows; ++i) {
    double* x = ds.row(i);
    for (std::size_t j = 0; j < ds.n_cols; ++j) x[j] = (x[j] - mean[j]) / scale[j];
  }
}

}  // namespace crosstrainer
