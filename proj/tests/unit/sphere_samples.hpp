#pragma once

#include <random>

#include "twistkit/sphere.hpp"

namespace testgen {

inline twistkit::sphere::Vec3 unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  twistkit::sphere::Vec3 x;
  do {
    x << g(rng), g(rng), g(rng);
  } while (x.norm() < 1e-3);
  return x.normalized();
}

inline double uniform_speed(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.05, 10.0)(rng);
}

/// Covector with uniformly random base point and direction and |v| = speed.
inline twistkit::sphere::Covector covector(std::mt19937_64& rng, double speed) {
  const twistkit::sphere::Vec3 u = unit_vector(rng);
  twistkit::sphere::Vec3 w = unit_vector(rng);
  w -= w.dot(u) * u;
  while (w.norm() < 1e-6) {
    w = unit_vector(rng);
    w -= w.dot(u) * u;
  }
  return twistkit::sphere::Covector::make(u, speed * w.normalized());
}

}  // namespace testgen
