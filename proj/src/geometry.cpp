#include "metascreen/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace metascreen {

Quasimomentum Quasimomentum::reduced(double a, double L) {
  const double period = 2.0 * M_PI / L;
  double r = std::fmod(a + M_PI / L, period);
  if (r < 0.0) r += period;
  return Quasimomentum{r - M_PI / L};
}

std::array<Vec2, 2> disk_centers(const MetascreenConfig& cfg) {
  const Vec2 c{0.5 * cfg.d * std::cos(cfg.theta),
               0.5 * cfg.d * std::sin(cfg.theta)};
  return {c, -c};
}

Vec2 boundary_point(const MetascreenConfig& cfg, int disk, double t) {
  if (disk != 1 && disk != 2) throw std::invalid_argument("disk index must be 1 or 2");
  const Vec2 c = disk_centers(cfg)[static_cast<size_t>(disk - 1)];
  return c + cfg.R_D * Vec2{std::cos(t), std::sin(t)};
}

std::vector<std::string> validate(const MetascreenConfig& cfg) {
  std::vector<std::string> violations;
  if (!(cfg.L > 0.0)) violations.push_back("cell length L must be positive");
  if (!(cfg.R_D > 0.0)) violations.push_back("disk radius R_D must be positive");
  if (!(cfg.d > 2.0 * cfg.R_D))
    violations.push_back("disks overlap: require d > 2 R_D");
  if (!(cfg.d * std::abs(std::cos(cfg.theta)) + 2.0 * cfg.R_D < cfg.L))
    violations.push_back("dimer exceeds cell: require d|cos theta| + 2 R_D < L");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
    violations.push_back("contrast delta must lie in (0, 1)");
  if (!(cfg.v_b > 0.0)) violations.push_back("interior wave speed v_b must be positive");
  return violations;
}

} // namespace metascreen
