#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

namespace metascreen {

using Vec2 = Eigen::Vector2d;

// Geometry and material parameters of the periodic dimer screen. Two disks of
// radius `R_D`, centers at +-(d/2)(cos theta, sin theta), repeated with period
// `L` along the x1 axis. Lengths are nondimensionalized so that L = 1 by
// default; the exterior wave speed is fixed to 1.
struct MetascreenConfig {
  double L = 1.0;     // lattice period
  double R_D = 0.05;  // disk radius
  double d = 0.3;     // center-to-center separation of the dimer
  double theta = 0.0; // inclination of the dimer to the lattice axis, radians
  double delta = 1e-3; // material contrast, 0 < delta << 1
  double v_b = 1.0;   // interior wave speed (exterior speed is 1)

  double disk_area() const { return M_PI * R_D * R_D; }
};

// Fixed incident direction (alpha0, w_perp) with alpha0^2 + w_perp^2 = 1,
// w_perp > 0. The quasimomentum is slaved to the frequency as alpha =
// omega * alpha0.
struct Incidence {
  double alpha0 = 0.0;

  double w_perp() const { return std::sqrt(1.0 - alpha0 * alpha0); }
  bool valid() const { return std::abs(alpha0) < 1.0; }
};

// Scalar Bloch parameter, reduced to the Brillouin zone [-pi/L, pi/L).
struct Quasimomentum {
  double alpha = 0.0;

  static Quasimomentum reduced(double a, double L);
};

// Centers c+- = +-(d/2)(cos theta, sin theta); center(D1) = -center(D2).
std::array<Vec2, 2> disk_centers(const MetascreenConfig& cfg);

// Point on boundary of disk 1 or 2 at angle t: center + R_D (cos t, sin t).
// The inversion P(x) = -x maps boundary_point(1, t) to boundary_point(2, t+pi).
Vec2 boundary_point(const MetascreenConfig& cfg, int disk, double t);

// Every violated invariant of the configuration; empty means valid.
std::vector<std::string> validate(const MetascreenConfig& cfg);

} // namespace metascreen
