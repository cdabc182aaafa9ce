#include "crossling/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace crossling {

BenchmarkTable::BenchmarkTable(std::vector<std::string> methods)
    : methods_(std::move(methods)) {
  if (methods_.empty()) throw std::invalid_argument("no methods");
}

bool BenchmarkTable::RowKey::operator<(const RowKey& o) const {
  return std::tie(benchmark, src, tgt, metric) <
         std::tie(o.benchmark, o.src, o.tgt, o.metric);
}

std::size_t BenchmarkTable::method_index(const std::string& method) const {
  for (std::size_t i = 0; i < methods_.size(); ++i)
    if (methods_[i] == method) return i;
  throw std::invalid_argument("unknown method: " + method);
}

void BenchmarkTable::set_cell(const RowKey& row, const std::string& method, double value) {
  auto& cells = cells_[row];
  cells.resize(methods_.size());
  cells[method_index(method)] = value;
}

std::vector<BenchmarkTable::RowKey> BenchmarkTable::rows() const {
  std::vector<RowKey> keys;
  keys.reserve(cells_.size());
  for (const auto& [key, cells] : cells_) keys.push_back(key);
  return keys;
}

std::optional<double> BenchmarkTable::cell(const RowKey& row,
                                           const std::string& method) const {
  auto it = cells_.find(row);
  if (it == cells_.end()) return std::nullopt;
  return it->second[method_index(method)];
}

std::vector<double> BenchmarkTable::averages() const {
  if (cells_.empty()) throw std::invalid_argument("empty table");
  std::vector<double> sums(methods_.size(), 0.0);
  for (const auto& [key, cells] : cells_) {
    for (std::size_t i = 0; i < methods_.size(); ++i) {
      if (!cells[i]) throw std::invalid_argument("incomplete table row");
      sums[i] += *cells[i];
    }
  }
  for (auto& s : sums) s /= static_cast<double>(cells_.size());
  return sums;
}

std::vector<double> BenchmarkTable::top1_credits() const {
  std::vector<double> credits(methods_.size(), 0.0);
  for (const auto& [key, cells] : cells_) {
    double best = 0.0;
    std::size_t winners = 0;
    for (const auto& c : cells) {
      if (!c) throw std::invalid_argument("incomplete table row");
      if (winners == 0 || *c > best) {
        best = *c;
        winners = 1;
      } else if (*c == best) {
        ++winners;
      }
    }
    for (std::size_t i = 0; i < methods_.size(); ++i)
      if (*cells[i] == best) credits[i] += 1.0 / static_cast<double>(winners);
  }
  return credits;
}

std::string BenchmarkTable::render() const {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return std::string(buf);
  };
  auto fmt_credit = [](double v) {
    char buf[32];
    if (v == std::floor(v))
      std::snprintf(buf, sizeof buf, "%.0f", v);
    else
      std::snprintf(buf, sizeof buf, "%.1f", v);
    return std::string(buf);
  };

  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header = {"benchmark", "src", "tgt", "metric"};
  header.insert(header.end(), methods_.begin(), methods_.end());
  grid.push_back(header);
  for (const auto& [key, cells] : cells_) {
    std::vector<std::string> row = {key.benchmark, key.src, key.tgt, key.metric};
    for (const auto& c : cells) row.push_back(c ? fmt(*c) : "-");
    grid.push_back(row);
  }
  auto avgs = averages();
  std::vector<std::string> avg_row = {"Average", "", "", ""};
  for (double a : avgs) avg_row.push_back(fmt(a));
  grid.push_back(avg_row);
  auto credits = top1_credits();
  std::vector<std::string> top_row = {"Top 1", "", "", ""};
  for (double c : credits) top_row.push_back(fmt_credit(c));
  grid.push_back(top_row);

  std::vector<std::size_t> widths(header.size(), 0);
  for (const auto& row : grid)
    for (std::size_t i = 0; i < row.size(); ++i)
      widths[i] = std::max(widths[i], row[i].size());
  std::ostringstream out;
  for (const auto& row : grid) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << row[i] << std::string(widths[i] - row[i].size(), ' ');
      out << (i + 1 < row.size() ? "  " : "");
    }
    out << '\n';
  }
  return out.str();
}

std::string BenchmarkTable::tsv() const {
  std::ostringstream out;
  char buf[64];
  for (const auto& [key, cells] : cells_) {
    for (std::size_t i = 0; i < methods_.size(); ++i) {
      if (!cells[i]) continue;
      std::snprintf(buf, sizeof buf, "%.17g", *cells[i]);
      out << key.benchmark << '\t' << key.src << '\t' << key.tgt << '\t' << methods_[i]
          << '\t' << key.metric << '\t' << buf << '\n';
    }
  }
  return out.str();
}

}  // namespace crossling
