#pragma once

#include "macksolve/common.hpp"

namespace macksolve {

// Ai, Ai', Bi, Bi' at one complex argument. When log_scale is nonzero the
// stored values are scaled: Ai = ai * exp(-log_scale), Bi = bi * exp(log_scale)
// (and likewise for the derivatives).
struct AiryValue {
  cd ai, dai, bi, dbi;
  double log_scale = 0.0;

  cd wronskian() const { return ai * dbi - dai * bi; }  // 1/pi, scale free
};

// Radius separating the Maclaurin branch from the large-argument branch.
inline constexpr double kAirySwitch = 6.0;
// Beyond this radius the large-argument branch uses the truncated series.
inline constexpr double kAiryTruncated = 12.0;
inline constexpr double kAiryMaxArgument = 1e4;

// Unscaled values; falls back to the scaled form only when Bi would overflow.
AiryValue airy_pair(cd z);
// Scaled by exp(+-Re zeta), zeta = (2/3) z^{3/2}, whenever |arg z| <= pi/3
// (so that values stay O(|z|^{1/4}) on the growth side); unscaled elsewhere.
AiryValue airy_pair_scaled(cd z);

// The two branches, exposed for cross-checking. Both return scaled values in
// the convention of airy_pair_scaled.
AiryValue airy_maclaurin(cd z);
AiryValue airy_large(cd z);

// Phase Theta(x) = (2/3) x^{3/2} - pi/4 of the oscillatory forms on z = -x.
double airy_theta(double x);

}  // namespace macksolve
