#pragma once

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace alcc {

/// Flat key = value text with [section] headers; keys are addressed as "section.key".
class Config {
 public:
  static Config parse(std::istream& in) {
    Config c;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') throw InvalidParams("config line " + std::to_string(lineno) + ": bad section header");
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      auto eq = line.find('=');
      if (eq == std::string::npos) throw InvalidParams("config line " + std::to_string(lineno) + ": expected key = value");
      std::string key = trim(line.substr(0, eq));
      if (key.empty()) throw InvalidParams("config line " + std::to_string(lineno) + ": empty key");
      c.kv_[section.empty() ? key : section + "." + key] = trim(line.substr(eq + 1));
    }
    return c;
  }

  static Config load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidParams("cannot open config file: " + path);
    return parse(f);
  }

  static Config from_string(const std::string& s) {
    std::istringstream in(s);
    return parse(in);
  }

  bool has(const std::string& k) const { return kv_.count(k) > 0; }
  void set(const std::string& k, const std::string& v) { kv_[k] = v; }

  std::string str(const std::string& k, const std::string& def) const {
    used_.insert(k);
    auto it = kv_.find(k);
    return it == kv_.end() ? def : it->second;
  }

  long long integer(const std::string& k, long long def) const {
    if (!has(k)) return def;
    auto s = str(k, "");
    try {
      std::size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw InvalidParams("config key " + k + ": expected integer, got '" + s + "'");
    }
  }

  double real(const std::string& k, double def) const {
    if (!has(k)) return def;
    return to_real(k, str(k, ""));
  }

  bool boolean(const std::string& k, bool def) const {
    if (!has(k)) return def;
    auto s = str(k, "");
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw InvalidParams("config key " + k + ": expected boolean");
  }

  std::vector<std::string> list(const std::string& k, char sep = ',') const {
    std::vector<std::string> out;
    if (!has(k)) return out;
    std::stringstream ss(str(k, ""));
    std::string item;
    while (std::getline(ss, item, sep)) {
      item = trim(item);
      if (!item.empty()) out.push_back(item);
    }
    return out;
  }

  std::vector<int> int_list(const std::string& k) const {
    std::vector<int> out;
    for (auto& s : list(k)) {
      try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        out.push_back(v);
      } catch (const std::exception&) {
        throw InvalidParams("config key " + k + ": bad integer '" + s + "'");
      }
    }
    return out;
  }

  std::vector<double> real_list(const std::string& k) const {
    std::vector<double> out;
    for (auto& s : list(k)) out.push_back(to_real(k, s));
    return out;
  }

  /// Keys present in the file but never read.
  std::vector<std::string> unused() const {
    std::vector<std::string> out;
    for (auto& [k, _] : kv_)
      if (!used_.count(k)) out.push_back(k);
    return out;
  }

  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

 private:
  static double to_real(const std::string& k, const std::string& s) {
    try {
      std::size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw InvalidParams("config key " + k + ": expected number, got '" + s + "'");
    }
  }

  std::map<std::string, std::string> kv_;
  mutable std::set<std::string> used_;
};

} // namespace alcc
