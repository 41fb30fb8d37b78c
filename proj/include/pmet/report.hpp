#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pmet {

enum class Verdict { pass, fail, unchecked };

std::string to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

/// One named check with its verdict, the method that decided it
/// ("exact", "sampled", "structural", ...) and a witness on failure.
struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::string method;
  std::string witness;

  bool operator==(const CheckResult&) const = default;
};

struct AxiomReport {
  std::string subject;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  const CheckResult* find(std::string_view name) const;
  void add(std::string name, Verdict verdict, std::string method,
           std::string witness = {});

  bool operator==(const AxiomReport&) const = default;
};

}  // namespace pmet
