#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "udb/specialfn.hpp"

namespace udb {

/// One shell of a radially distributed vertex set: total weight sitting at a radius.
struct RadialComponent {
  double radius = 0.0;
  double weight = 1.0;
};

namespace grid {

/// `count` equally spaced points covering [lo, hi], endpoints included.
std::vector<double> uniform(double lo, double hi, std::size_t count);

// Kernel sampling over a grid. The plain versions split the grid across OpenMP
// threads; the *_serial versions are the single-threaded reference used by the
// tests and the benchmark.

/// out[i] = Omega_n(scale * t[i])
std::vector<double> sample_omega(const OmegaKernel& kernel, std::span<const double> t,
                                 double scale = 1.0);
std::vector<double> sample_omega_serial(const OmegaKernel& kernel, std::span<const double> t,
                                        double scale = 1.0);

/// out[i] = sum_v w_v Omega_n(r_v t[i]) / sum_v w_v
std::vector<double> sample_profile(const OmegaKernel& kernel,
                                   std::span<const RadialComponent> profile,
                                   std::span<const double> t);
std::vector<double> sample_profile_serial(const OmegaKernel& kernel,
                                          std::span<const RadialComponent> profile,
                                          std::span<const double> t);

}  // namespace grid
}  // namespace udb
