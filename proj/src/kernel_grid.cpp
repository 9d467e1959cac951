#include "udb/kernel_grid.hpp"

#include <stdexcept>

namespace udb::grid {
namespace {

double total_weight(std::span<const RadialComponent> profile) {
  double total = 0.0;
  for (const auto& c : profile) total += c.weight;
  if (!(total > 0.0)) throw std::invalid_argument("radial profile has no positive weight");
  return total;
}

double profile_value(const OmegaKernel& kernel, std::span<const RadialComponent> profile,
                     double total, double t) {
  double acc = 0.0;
  for (const auto& c : profile) acc += c.weight * kernel(c.radius * t);
  return acc / total;
}

}  // namespace

std::vector<double> uniform(double lo, double hi, std::size_t count) {
  if (count < 2 || !(hi > lo)) throw std::invalid_argument("uniform grid needs count >= 2 and hi > lo");
  std::vector<double> t(count);
  const double h = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) t[i] = lo + h * static_cast<double>(i);
  t.back() = hi;
  return t;
}

std::vector<double> sample_omega(const OmegaKernel& kernel, std::span<const double> t, double scale) {
  std::vector<double> out(t.size());
  const auto count = static_cast<std::ptrdiff_t>(t.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = kernel(scale * t[i]);
  return out;
}

std::vector<double> sample_omega_serial(const OmegaKernel& kernel, std::span<const double> t,
                                        double scale) {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = kernel(scale * t[i]);
  return out;
}

std::vector<double> sample_profile(const OmegaKernel& kernel, std::span<const RadialComponent> profile,
                                   std::span<const double> t) {
  const double total = total_weight(profile);
  std::vector<double> out(t.size());
  const auto count = static_cast<std::ptrdiff_t>(t.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = profile_value(kernel, profile, total, t[i]);
  return out;
}

std::vector<double> sample_profile_serial(const OmegaKernel& kernel,
                                          std::span<const RadialComponent> profile,
                                          std::span<const double> t) {
  const double total = total_weight(profile);
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = profile_value(kernel, profile, total, t[i]);
  return out;
}

}  // namespace udb::grid
