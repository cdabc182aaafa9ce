#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace crossling {

/// Accumulates one metric value per (benchmark row, method column) and
/// renders a results table with a per-method Average row and a Top 1 row.
/// Methods tying for the best value in a row share the credit equally
/// (two-way tie = 0.5 each).
class BenchmarkTable {
 public:
  explicit BenchmarkTable(std::vector<std::string> methods);

  struct RowKey {
    std::string benchmark;  // "align" or "dict"
    std::string src, tgt;
    std::string metric;  // "1-AER" or "P@1"
    bool operator<(const RowKey& o) const;
  };

  void set_cell(const RowKey& row, const std::string& method, double value);

  const std::vector<std::string>& methods() const { return methods_; }
  std::vector<RowKey> rows() const;
  std::optional<double> cell(const RowKey& row, const std::string& method) const;

  /// Mean over all rows; every cell of the column must be set.
  std::vector<double> averages() const;
  /// Fractional count of rows where the method attains the row maximum.
  std::vector<double> top1_credits() const;

  /// Fixed-width text table with Average and Top 1 footer rows.
  std::string render() const;
  /// One `benchmark src tgt method metric value` line per cell.
  std::string tsv() const;

 private:
  std::size_t method_index(const std::string& method) const;
  std::vector<std::string> methods_;
  std::map<RowKey, std::vector<std::optional<double>>> cells_;
};

}  // namespace crossling
