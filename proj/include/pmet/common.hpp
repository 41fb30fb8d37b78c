#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace pmet {

/// Values on the extended half-line [0,inf] are plain doubles with
/// std::numeric_limits<double>::infinity() as the top element.  Addition
/// saturates at infinity by IEEE semantics, which is exactly the arithmetic
/// required here (only + is ever used, so inf - inf never arises).
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_unit(double v) { return v >= 0.0 && v <= 1.0; }
inline bool is_ext_nonneg(double t) { return t >= 0.0; }  // NaN fails, inf passes

void require_unit(double v, const std::string& what);
void require_ext_nonneg(double t, const std::string& what);
void require_finite_ext(double t, const std::string& what);

/// Shortest exact decimal for a double; "inf" for infinity.
std::string fmt_real(double t);

using Mask = std::uint32_t;

inline bool mask_contains(Mask m, int i) { return (m >> i) & 1u; }
inline int mask_size(Mask m) { return __builtin_popcount(m); }

/// "{a,b,c}" for the given subset of carrier labels.
std::string fmt_mask(Mask m, const std::vector<std::string>& labels);

}  // namespace pmet
