#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "modsub/common.hpp"

namespace modsub {

struct IdentityCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = kDefaultTol;
  bool pass = true;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  std::vector<std::string> notes;

  void add(const std::string& name, double residual,
           double tolerance = kDefaultTol) {
    checks.push_back({name, residual, tolerance, residual <= tolerance});
  }
  void note(const std::string& text) { notes.push_back(text); }

  bool all_pass() const;
  double worst_residual() const;
  const IdentityCheck* find(const std::string& name) const;
};

nlohmann::json to_json(const IdentityReport& report);

// Deterministic numeric formatting: shortest round-trippable representation,
// so equal seeds give byte-identical CSV bodies.
std::string format_double(double x);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  const std::string& body() const { return body_; }
  void write(const std::string& path) const;

 private:
  std::string body_;
  std::size_t width_;
};

}  // namespace modsub
