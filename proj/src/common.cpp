#include "pmet/common.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace pmet {

void require_unit(double v, const std::string& what) {
  if (!is_unit(v)) {
    throw std::invalid_argument(what + " must lie in [0,1], got " +
                                fmt_real(v));
  }
}

void require_ext_nonneg(double t, const std::string& what) {
  if (!is_ext_nonneg(t)) {
    throw std::invalid_argument(what + " must lie in [0,inf], got " +
                                fmt_real(t));
  }
}

void require_finite_ext(double t, const std::string& what) {
  if (!is_ext_nonneg(t) || std::isinf(t)) {
    throw std::invalid_argument(what + " must be finite and non-negative, got " +
                                fmt_real(t));
  }
}

std::string fmt_real(double t) {
  if (std::isnan(t)) return "nan";
  if (std::isinf(t)) return t > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), t);
  return std::string(buf, res.ptr);
}

std::string fmt_mask(Mask m, const std::vector<std::string>& labels) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!mask_contains(m, static_cast<int>(i))) continue;
    if (!first) out += ",";
    out += labels[i];
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace pmet
