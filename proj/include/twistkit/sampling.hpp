#pragma once

// Seeded random inputs for the verification suites. All draws go through a
// caller-owned std::mt19937_64, so a report is reproducible from its seed.

#include <random>

#include <Eigen/Dense>

#include "twistkit/maslov.hpp"
#include "twistkit/sphere.hpp"

namespace twistkit::sampling {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);

/// Symmetric n×n matrix with entries of magnitude ≤ scale.
Eigen::MatrixXd symmetric(Rng& rng, int n, double scale);

/// exp(Ω·S) for a random symmetric S.
Eigen::MatrixXd symplectic_matrix(Rng& rng, int n, double scale);

sphere::Vec3 unit_vector(Rng& rng);

/// Uniform base point and direction with |v| = speed.
sphere::Covector covector(Rng& rng, double speed);

/// t ↦ P·graph(S₀ + tS₁ + t²S₂) on [0, 1] with P symplectic.
maslov::LagrangianPath graph_path(Rng& rng, int n, double scale);

/// t ↦ B·[[1,0],[tS,1]]·[[1,sin(t)T],[0,1]].
maslov::SymplecticPath shear_path(Rng& rng, int n, double scale);

}  // namespace twistkit::sampling
