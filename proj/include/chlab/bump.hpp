#pragma once

#include "chlab/field.hpp"

namespace chlab {

/// Even C-infinity cutoff equal to 1 on |x| <= inner and 0 on |x| >= outer.
struct BumpSpec {
  double inner_radius = 1.0;
  double outer_radius = 2.0;
};

/// The cutoff phi: 1 on |x| <= 1, 0 on |x| >= 2.
inline constexpr BumpSpec kPhi{1.0, 2.0};
/// The enlarged cutoff phi~: 1 on supp(phi).
inline constexpr BumpSpec kPhiTilde{2.0, 3.0};

void validate(const BumpSpec& spec);

/// g(b-|x|) / (g(b-|x|) + g(|x|-a)) with g(t) = exp(-1/t) for t > 0, else 0.
double bump_value(const BumpSpec& spec, double x);

Field make_bump(const BumpSpec& spec, const Grid& grid);

/// Samples x -> bump(x / dilation). Throws if dilation * outer_radius >= L.
Field scale_bump(const BumpSpec& spec, double dilation, const Grid& grid);

}  // namespace chlab
