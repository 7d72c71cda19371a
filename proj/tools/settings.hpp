#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace zeroprof::cli {

using json = nlohmann::json;

/// One command option; `multi` options collect repeated key=value pairs into an object.
struct OptionDef {
  std::string key;
  std::string fallback;
  std::string help;
  bool multi = false;
};

/// Layered option values: flags over config file over defaults.
class Settings {
 public:
  Settings(std::string command, const std::vector<OptionDef>& options);

  /// Reads a JSON object; keys under "<command>" override the top level.
  void load_config(const std::string& path);
  void set_flag(const std::string& key, const std::string& value);
  void add_flag_pair(const std::string& key, const std::string& pair);

  const std::string& command() const { return command_; }
  bool has(const std::string& key) const;
  std::string str(const std::string& key) const;
  int integer(const std::string& key) const;
  double real(const std::string& key) const;
  std::vector<int> int_list(const std::string& key) const;
  /// Merged key=value object for a multi option.
  std::map<std::string, std::string> pairs(const std::string& key) const;

  /// {"defaults", "config_file", "config", "flags", "effective"}.
  json echo() const;

 private:
  const json* lookup(const std::string& key) const;

  std::string command_;
  std::map<std::string, bool> multi_;
  json defaults_ = json::object();
  json config_ = json::object();
  json flags_ = json::object();
  std::string config_path_;
};

std::string as_text(const json& v);

}  // namespace zeroprof::cli
