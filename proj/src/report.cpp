#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "ancientflow/errors.hpp"
#include "ancientflow/experiment.hpp"

namespace ancientflow {
namespace {

std::string g17(double x) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::string header_line() {
  std::string out;
  for (std::size_t k = 0; k < kBoundReportColumns.size(); ++k) {
    if (k) out += ',';
    out += kBoundReportColumns[k];
  }
  return out;
}

std::string_view chomp(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

std::string to_csv(const RunRecord& record) {
  std::string out = header_line();
  out += '\n';
  for (const BoundReport& r : record.rows) {
    const auto row = to_row(r);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += g17(row[k]);
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const RunRecord& record, const std::string& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent, ec);
  if (ec) throw IoError(path, "cannot create directory: " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  const std::string text = to_csv(record);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError(path, "write failed");
}

std::vector<BoundReport> parse_csv(std::string_view text) {
  std::vector<BoundReport> rows;
  std::size_t pos = 0, line_no = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line =
        chomp(text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos));
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!header_seen) {
      if (line != header_line()) throw DomainError("csv line 1: unexpected header");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    std::array<double, 14> values{};
    std::size_t start = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const auto comma = line.find(',', start);
      const bool last = k + 1 == values.size();
      if (last != (comma == std::string_view::npos)) {
        throw DomainError("csv line " + std::to_string(line_no) + ": expected 14 fields");
      }
      const std::string_view cell = line.substr(start, last ? line.size() - start : comma - start);
      const auto [ptr, err] = std::from_chars(cell.data(), cell.data() + cell.size(), values[k]);
      if (err != std::errc() || ptr != cell.data() + cell.size()) {
        throw DomainError("csv line " + std::to_string(line_no) + ": bad number '" + std::string(cell) + "'");
      }
      start = comma + 1;
    }
    rows.push_back(from_row(values));
  }
  if (!header_seen) throw DomainError("csv: missing header");
  return rows;
}

std::string emit_summary(const RunRecord& record) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "experiment %s [%s] %s (%.3f s, %zu rows)\n", record.spec.name.c_str(),
                std::string(to_string(record.spec.kind)).c_str(), record.passed() ? "PASS" : "FAIL",
                record.wall_seconds, record.rows.size());
  out += buf;
  for (const AssertionOutcome& a : record.assertions) {
    std::snprintf(buf, sizeof buf, "  %-4s %-44s %24.17g %-18s %.6g\n", a.passed ? "ok" : "FAIL",
                  a.name.c_str(), a.value, a.detail.c_str(), a.threshold);
    out += buf;
  }
  for (const auto& [key, value] : record.summary) {
    std::snprintf(buf, sizeof buf, "       %-44s %24.17g\n", key.c_str(), value);
    out += buf;
  }
  if (!record.failure.empty()) out += "  error: " + record.failure + "\n";
  return out;
}

}  // namespace ancientflow
