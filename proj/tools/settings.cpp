#include "settings.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace zeroprof::cli {

namespace {

int to_int(const std::string& key, const std::string& text) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw std::invalid_argument("option " + key + ": not an integer: " + text);
  return v;
}

std::pair<std::string, std::string> split_pair(const std::string& key, const std::string& pair) {
  auto eq = pair.find('=');
  if (eq == std::string::npos || eq == 0)
    throw std::invalid_argument("option " + key + ": expected name=value, got " + pair);
  return {pair.substr(0, eq), pair.substr(eq + 1)};
}

}  // namespace

std::string as_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

Settings::Settings(std::string command, const std::vector<OptionDef>& options) : command_(std::move(command)) {
  for (const auto& o : options) {
    multi_[o.key] = o.multi;
    if (o.multi)
      defaults_[o.key] = json::object();
    else if (!o.fallback.empty())
      defaults_[o.key] = o.fallback;
  }
}

void Settings::load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config file " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config file " + path + " must hold a JSON object");
  json merged = json::object();
  for (const auto& [k, v] : doc.items())
    if (!v.is_object() || multi_.count(k)) merged[k] = v;
  if (doc.contains(command_) && doc[command_].is_object())
    for (const auto& [k, v] : doc[command_].items()) merged[k] = v;
  for (const auto& [k, v] : merged.items()) {
    if (k == "config" || !multi_.count(k)) continue;
    if (multi_[k]) {
      if (!v.is_object()) throw std::invalid_argument("config key " + k + " must be an object");
      json obj = json::object();
      for (const auto& [pk, pv] : v.items()) obj[pk] = as_text(pv);
      config_[k] = obj;
    } else {
      config_[k] = as_text(v);
    }
  }
  config_path_ = path;
}

void Settings::set_flag(const std::string& key, const std::string& value) { flags_[key] = value; }

void Settings::add_flag_pair(const std::string& key, const std::string& pair) {
  auto [k, v] = split_pair(key, pair);
  if (!flags_.contains(key)) flags_[key] = json::object();
  flags_[key][k] = v;
}

const json* Settings::lookup(const std::string& key) const {
  if (flags_.contains(key)) return &flags_[key];
  if (config_.contains(key)) return &config_[key];
  if (defaults_.contains(key)) return &defaults_[key];
  return nullptr;
}

bool Settings::has(const std::string& key) const {
  const json* v = lookup(key);
  return v && !(v->is_string() && v->get<std::string>().empty());
}

std::string Settings::str(const std::string& key) const {
  const json* v = lookup(key);
  if (!v) throw std::invalid_argument("missing required option --" + key);
  return as_text(*v);
}

int Settings::integer(const std::string& key) const { return to_int(key, str(key)); }

double Settings::real(const std::string& key) const {
  std::string t = str(key);
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != t.size()) throw std::invalid_argument("option " + key + ": not a number: " + t);
  return v;
}

std::vector<int> Settings::int_list(const std::string& key) const {
  std::vector<int> out;
  std::stringstream ss(str(key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_int(key, item));
  if (out.empty()) throw std::invalid_argument("option " + key + ": empty list");
  return out;
}

std::map<std::string, std::string> Settings::pairs(const std::string& key) const {
  std::map<std::string, std::string> out;
  for (const json* layer : {&defaults_, &config_, &flags_})
    if (layer->contains(key))
      for (const auto& [k, v] : (*layer)[key].items()) out[k] = as_text(v);
  return out;
}

json Settings::echo() const {
  json effective = json::object();
  for (const auto& [key, multi] : multi_) {
    if (multi) {
      json obj = json::object();
      for (const auto& [k, v] : pairs(key)) obj[k] = v;
      effective[key] = obj;
    } else if (const json* v = lookup(key)) {
      effective[key] = *v;
    }
  }
  return {{"defaults", defaults_},
          {"config_file", config_path_.empty() ? json(nullptr) : json(config_path_)},
          {"config", config_},
          {"flags", flags_},
          {"effective", effective}};
}

}  // namespace zeroprof::cli
