#include "output.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace zeroprof::cli {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::pair<std::string, std::string>>& meta,
                     const std::vector<std::string>& header)
    : out_(path), width_(header.size()), path_(path.string()) {
  if (!out_) throw std::runtime_error("cannot write " + path_);
  out_ << "# schema_version: " << kSchemaVersion << "\n";
  for (const auto& [k, v] : meta) out_ << "# " << k << ": " << v << "\n";
  for (size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("csv row width mismatch in " + path_);
  for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
}

void write_json(const std::filesystem::path& path, nlohmann::json doc) {
  if (doc.is_object() && !doc.contains("schema_version")) doc["schema_version"] = kSchemaVersion;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

nlohmann::json finite_or_text(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

}  // namespace zeroprof::cli
