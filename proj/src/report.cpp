#include "pmet/report.hpp"

#include <algorithm>
#include <stdexcept>

namespace pmet {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::unchecked: return "unchecked";
  }
  return "unknown";
}

Verdict verdict_from_string(std::string_view s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "unchecked") return Verdict::unchecked;
  throw std::invalid_argument("unknown verdict: " + std::string(s));
}

bool AxiomReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) {
    return c.verdict == Verdict::pass;
  });
}

const CheckResult* AxiomReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void AxiomReport::add(std::string name, Verdict verdict, std::string method,
                      std::string witness) {
  checks.push_back(
      {std::move(name), verdict, std::move(method), std::move(witness)});
}

}  // namespace pmet
