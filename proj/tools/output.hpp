#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace zeroprof::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Shortest round-trip text; inf and nan spelled out.
std::string num(double v);

/// CSV with `# key: value` metadata lines ahead of the header row.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::pair<std::string, std::string>>& meta,
            const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);

 private:
  std::ofstream out_;
  size_t width_;
  std::string path_;
};

/// Pretty-printed JSON with schema_version added to objects that lack it.
void write_json(const std::filesystem::path& path, nlohmann::json doc);

/// Replaces non-finite numbers by strings so that reports keep every value.
nlohmann::json finite_or_text(double v);

}  // namespace zeroprof::cli
