#pragma once

// Shared plumbing for the command-line driver: config resolution with explicit
// defaults, RFC-4180 CSV emission, and deterministic number formatting.

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmalab/params.hpp"

namespace cli {

using json = nlohmann::json;

/// Config/usage problems exit with code 2; numerical failures with 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Shortest round-trip decimal form; deterministic across runs.
inline std::string fmt(double x) {
  if (x == sigmalab::kInf) return "inf";
  if (x == -sigmalab::kInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  // Prefer the shorter %.15g / %.16g spelling when it round-trips exactly.
  for (int prec = 15; prec <= 16; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof probe, "%.*g", prec, x);
    if (std::strtod(probe, nullptr) == x) return probe;
  }
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// Reads keys out of (config file + --set overrides), records every value it
/// hands out, and serializes the fully resolved tree so identical resolved
/// configs always describe identical runs. Unknown keys are usage errors.
class ConfigReader {
 public:
  ConfigReader(const std::string& config_path, const std::vector<std::string>& sets) {
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw UsageError("cannot open config file: " + config_path);
      try {
        f >> in_;
      } catch (const std::exception& e) {
        throw UsageError("config parse error in " + config_path + ": " + e.what());
      }
      if (!in_.is_object()) throw UsageError("config root must be a JSON object");
    }
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        throw UsageError("--set expects key=value, got: " + kv);
      std::string key = kv.substr(0, eq);
      for (char& c : key)
        if (c == '.') c = '/';
      const std::string raw = kv.substr(eq + 1);
      json val;
      try {
        val = json::parse(raw);
      } catch (...) {
        val = raw;  // bare words (zone names, "inf") pass through as strings
      }
      in_[json::json_pointer("/" + key)] = val;
    }
  }

  double num(const std::string& ptr, double dflt) {
    const json v = lookup(ptr);
    double out = dflt;
    if (!v.is_null()) {
      if (v.is_number())
        out = v.get<double>();
      else if (v.is_string() && (v == "inf" || v == "Infinity"))
        out = sigmalab::kInf;
      else
        throw UsageError("expected a number at " + ptr);
    }
    record(ptr, out == sigmalab::kInf ? json("inf") : json(out));
    return out;
  }

  /// Like num(), but the string "sigma" resolves to the model exponent. Used by
  /// derivative weights that are naturally expressed in units of sigma.
  double num_or_sigma(const std::string& ptr, double dflt, double sigma) {
    const json v = lookup(ptr);
    double out = dflt;
    if (!v.is_null()) {
      if (v.is_number())
        out = v.get<double>();
      else if (v.is_string() && v == "sigma")
        out = sigma;
      else
        throw UsageError("expected a number or \"sigma\" at " + ptr);
    }
    record(ptr, out);
    return out;
  }

  int integer(const std::string& ptr, int dflt) {
    const json v = lookup(ptr);
    int out = dflt;
    if (!v.is_null()) {
      if (!v.is_number_integer()) throw UsageError("expected an integer at " + ptr);
      out = v.get<int>();
    }
    record(ptr, out);
    return out;
  }

  bool boolean(const std::string& ptr, bool dflt) {
    const json v = lookup(ptr);
    bool out = dflt;
    if (!v.is_null()) {
      if (!v.is_boolean()) throw UsageError("expected true/false at " + ptr);
      out = v.get<bool>();
    }
    record(ptr, out);
    return out;
  }

  std::string str(const std::string& ptr, const std::string& dflt) {
    const json v = lookup(ptr);
    std::string out = dflt;
    if (!v.is_null()) {
      if (!v.is_string()) throw UsageError("expected a string at " + ptr);
      out = v.get<std::string>();
    }
    record(ptr, out);
    return out;
  }

  std::vector<double> list(const std::string& ptr, const std::vector<double>& dflt) {
    const json v = lookup(ptr);
    std::vector<double> out = dflt;
    if (!v.is_null()) {
      if (!v.is_array()) throw UsageError("expected an array at " + ptr);
      out.clear();
      for (const auto& e : v) {
        if (!e.is_number()) throw UsageError("expected numbers in the array at " + ptr);
        out.push_back(e.get<double>());
      }
    }
    record(ptr, out);
    return out;
  }

  /// Attach a derived/annotation field to the resolved tree.
  void note(const std::string& ptr, const json& value) { record(ptr, value); }

  /// Reject config keys nothing consumed; typos must not silently change runs.
  void finish() const {
    std::vector<std::string> leaves;
    collect(in_, "", leaves);
    for (const auto& leaf : leaves)
      if (!used_.count(leaf)) throw UsageError("unknown config key: " + pretty(leaf));
  }

  const json& resolved() const { return out_; }

  void write_resolved(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << out_.dump(2) << '\n';
  }

 private:
  json lookup(const std::string& ptr) {
    used_.insert(ptr);
    const json::json_pointer jp("/" + ptr);
    return in_.contains(jp) ? in_.at(jp) : json();
  }
  void record(const std::string& ptr, const json& value) {
    out_[json::json_pointer("/" + ptr)] = value;
  }
  static void collect(const json& j, const std::string& prefix, std::vector<std::string>& out) {
    if (j.is_object()) {
      for (const auto& [k, v] : j.items())
        collect(v, prefix.empty() ? k : prefix + "/" + k, out);
    } else if (!j.is_null()) {
      out.push_back(prefix);
    }
  }
  static std::string pretty(std::string leaf) {
    for (char& c : leaf)
      if (c == '/') c = '.';
    return leaf;
  }

  json in_;
  json out_;
  std::set<std::string> used_;
};

}  // namespace cli
