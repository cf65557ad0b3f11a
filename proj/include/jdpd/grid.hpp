#pragma once

namespace jdpd {

// Uniform discretization of the phase coordinate. Symmetric about zero by
// default; with an even point count no grid point sits exactly at phi = 0,
// which keeps left/right well sums unambiguous.
struct PhaseGrid {
  double phi_min = -6.0;
  double phi_max = 6.0;
  int n_points = 128;

  double spacing() const { return (phi_max - phi_min) / (n_points - 1); }
  double point(int i) const { return phi_min + i * spacing(); }
};

// Throws std::invalid_argument on n_points < 32 or an empty interval.
void validate(const PhaseGrid& g);

}  // namespace jdpd
