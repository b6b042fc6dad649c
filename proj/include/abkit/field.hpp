#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "abkit/vec.hpp"

namespace abkit {

using ScalarField2 = std::function<double(const Vec2&)>;
using VectorField2 = std::function<Vec2(const Vec2&)>;

enum class GaugeTag { Symmetric, Landau2, Custom, Numeric };

std::string_view to_string(GaugeTag tag);

/// Planar magnetic field B_z with compact support. The support radius is a
/// declared bound (B_z == 0 for r > support_radius); jump radii mark circles
/// across which B_z is discontinuous.
struct FluxProfile {
  ScalarField2 bz;
  double support_radius = 0.0;
  std::vector<double> jump_radii;
};

/// An evaluable planar vector potential A(x), tagged by how it was built.
///
/// `kink_radii` lists circles r = const across which A has a derivative
/// jump; line integrals split their panels there. The flux profile, when
/// present, is the analytic curl of A.
class GaugeField {
 public:
  GaugeField(GaugeTag tag, VectorField2 potential, std::optional<FluxProfile> flux = std::nullopt,
             std::vector<double> kink_radii = {})
      : tag_(tag), potential_(std::move(potential)), flux_(std::move(flux)),
        kinks_(std::move(kink_radii)) {}

  Vec2 operator()(const Vec2& x) const { return potential_(x); }

  GaugeTag tag() const noexcept { return tag_; }
  const std::optional<FluxProfile>& flux() const noexcept { return flux_; }
  std::span<const double> kink_radii() const noexcept { return kinks_; }
  const VectorField2& potential() const noexcept { return potential_; }

 private:
  GaugeTag tag_;
  VectorField2 potential_;
  std::optional<FluxProfile> flux_;
  std::vector<double> kinks_;
};

/// The identically vanishing potential.
GaugeField zero_field();

}  // namespace abkit
