#include "jdpd/potential.hpp"

#include <algorithm>
#include <cmath>

#include "jdpd/constants.hpp"

namespace jdpd {

namespace {

struct Coeffs {
  double e_l;  // h GHz
  double jp;   // b+ cos(phi+), E_L units
  double jm;   // b- sin(phi+), E_L units
  double phi_minus;
};

Coeffs coeffs(const DeviceParams& p, const FluxBias& bias) {
  const double el = kPhi0Bar * kPhi0Bar / (p.l_center_pH * 1e-12);
  return Coeffs{joule_to_hghz(el), b_plus(p) * std::cos(bias.phi_plus),
                b_minus(p) * std::sin(bias.phi_plus), bias.phi_minus};
}

}  // namespace

double potential_value_hghz(const DeviceParams& p, const FluxBias& bias, double phi) {
  const Coeffs c = coeffs(p, bias);
  const double u = 0.5 * phi * phi - c.jp * std::cos(phi + c.phi_minus) +
                   c.jm * std::sin(phi + c.phi_minus);
  return c.e_l * u;
}

std::pair<double, double> potential_derivatives_hghz(const DeviceParams& p,
                                                     const FluxBias& bias, double phi) {
  const Coeffs c = coeffs(p, bias);
  const double s = std::sin(phi + c.phi_minus);
  const double co = std::cos(phi + c.phi_minus);
  const double du = c.e_l * (phi + c.jp * s + c.jm * co);
  const double d2u = c.e_l * (1.0 + c.jp * co - c.jm * s);
  return {du, d2u};
}

PotentialShape analyze_shape(const DeviceParams& p, const FluxBias& bias,
                             const ShapeOptions& opt) {
  const EnergyScales scales = derive_energies(p);
  const double e_l = scales.e_l_hghz;

  auto du = [&](double phi) { return potential_derivatives_hghz(p, bias, phi).first; };

  // Sign-change scan, then bisection on each bracket.
  struct Stationary {
    double phi;
    double d2u;
  };
  std::vector<Stationary> points;
  const double w = opt.window_rad;
  double x0 = -w;
  double f0 = du(x0);
  const int n_steps = static_cast<int>(std::ceil(2.0 * w / opt.scan_step_rad));
  for (int i = 1; i <= n_steps; ++i) {
    const double x1 = std::min(-w + i * opt.scan_step_rad, w);
    const double f1 = du(x1);
    if (f0 == 0.0 || (f0 < 0.0) != (f1 < 0.0)) {
      double a = x0, b = x1, fa = f0;
      while (b - a > opt.root_tol_rad) {
        const double mid = 0.5 * (a + b);
        const double fm = du(mid);
        if ((fa < 0.0) == (fm < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      const double root = 0.5 * (a + b);
      if (points.empty() || std::abs(root - points.back().phi) > 10.0 * opt.root_tol_rad) {
        points.push_back({root, potential_derivatives_hghz(p, bias, root).second});
      }
    }
    x0 = x1;
    f0 = f1;
  }

  PotentialShape shape;
  std::vector<double> maxima;
  for (const auto& st : points) {
    if (st.d2u > 0.0) {
      PotentialMinimum m;
      m.position_rad = st.phi;
      m.curvature_hghz = st.d2u;
      m.local_frequency_ghz = scales.f0_ghz() * std::sqrt(st.d2u / e_l);
      shape.minima.push_back(m);
    } else {
      maxima.push_back(st.phi);
    }
  }
  std::sort(shape.minima.begin(), shape.minima.end(),
            [](const auto& a, const auto& b) { return a.position_rad < b.position_rad; });

  // The quadratic term guarantees at least one minimum in a wide-enough window.
  if (shape.minima.empty()) return shape;

  const double joseph = e_l * std::hypot(b_plus(p) * std::cos(bias.phi_plus),
                                         b_minus(p) * std::sin(bias.phi_plus));
  if (shape.minima.size() == 1) {
    shape.kind = (joseph < 1e-9 * e_l) ? PotentialKind::Harmonic : PotentialKind::SingleWell;
    return shape;
  }

  // Two or more minima: report the two lowest in energy and the barrier between them.
  auto energy = [&](const PotentialMinimum& m) {
    return potential_value_hghz(p, bias, m.position_rad);
  };
  if (shape.minima.size() > 2) {
    std::vector<PotentialMinimum> sorted = shape.minima;
    std::sort(sorted.begin(), sorted.end(),
              [&](const auto& a, const auto& b) { return energy(a) < energy(b); });
    sorted.resize(2);
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.position_rad < b.position_rad; });
    shape.minima = sorted;
  }
  shape.kind = PotentialKind::DoubleWell;

  const double lo = shape.minima.front().position_rad;
  const double hi = shape.minima.back().position_rad;
  double barrier_phi = 0.5 * (lo + hi);
  double barrier_u = -1e300;
  for (double m : maxima) {
    if (m > lo && m < hi) {
      const double u = potential_value_hghz(p, bias, m);
      if (u > barrier_u) {
        barrier_u = u;
        barrier_phi = m;
      }
    }
  }
  if (barrier_u == -1e300) {
    barrier_u = potential_value_hghz(p, bias, barrier_phi);
  }
  const double higher_min = std::max(energy(shape.minima.front()), energy(shape.minima.back()));
  shape.barrier_position_rad = barrier_phi;
  shape.barrier_height_hghz = barrier_u - higher_min;
  return shape;
}

}  // namespace jdpd
