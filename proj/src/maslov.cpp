#include "twistkit/maslov.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "twistkit/errors.hpp"

namespace twistkit::maslov {

namespace {

constexpr double kConditionLimit = 1e10;

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& m) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

Eigen::MatrixXd standard_form(int n) {
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  f.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  f.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return f;
}

Eigen::VectorXd joint_singular_values(const Eigen::MatrixXd& za, const Eigen::MatrixXd& zb) {
  Eigen::MatrixXd m(za.rows(), za.cols() + zb.cols());
  m << za, zb;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
}

int count_below(const Eigen::VectorXd& sv, double relative) {
  const double cut = relative * std::max(sv(0), 1e-300);
  int k = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) < cut) ++k;
  }
  return k;
}

// Graph coordinates of span(z) over the Lagrangian with orthonormal basis z0,
// using the complement Ω·z0: span(z) = {z0·a + Ω·z0·A·a}.
Eigen::MatrixXd graph_matrix(const Eigen::MatrixXd& z0, const Eigen::MatrixXd& omega_z0,
                             const Eigen::MatrixXd& z) {
  const Eigen::MatrixXd x = z0.transpose() * z;
  const Eigen::MatrixXd y = omega_z0.transpose() * z;
  return y * x.inverse();
}

}  // namespace

SymplecticSpace::SymplecticSpace(int n) : n_(n) {
  if (n < 1) throw DegenerateInput(fmt::format("symplectic half-dimension must be positive, got {}", n));
  form_ = standard_form(n);
}

LagrangianFrame LagrangianFrame::from_basis(const Eigen::MatrixXd& basis, double isotropy_tol) {
  if (basis.rows() != 2 * basis.cols() || basis.cols() < 1) {
    throw DegenerateInput(fmt::format("Lagrangian basis must be 2n×n, got {}×{}", basis.rows(), basis.cols()));
  }
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(basis).singularValues();
  if (sv(sv.size() - 1) * kConditionLimit < sv(0)) {
    throw DegenerateInput(fmt::format("ill-conditioned frame: condition number {:.3e}",
                                      sv(0) / std::max(sv(sv.size() - 1), 1e-300)));
  }
  LagrangianFrame frame(orthonormal_columns(basis));
  if (frame.isotropy_defect() > isotropy_tol) {
    throw DegenerateInput(fmt::format("frame is not isotropic: defect {:.3e}", frame.isotropy_defect()));
  }
  return frame;
}

LagrangianFrame LagrangianFrame::horizontal(int n) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2 * n, n);
  b.topRows(n) = Eigen::MatrixXd::Identity(n, n);
  return LagrangianFrame(b);
}

LagrangianFrame LagrangianFrame::vertical(int n) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(2 * n, n);
  b.bottomRows(n) = Eigen::MatrixXd::Identity(n, n);
  return LagrangianFrame(b);
}

double LagrangianFrame::isotropy_defect() const {
  return (basis_.transpose() * standard_form(n()) * basis_).cwiseAbs().maxCoeff();
}

Eigen::VectorXd concatenated_singular_values(const LagrangianFrame& a, const LagrangianFrame& b) {
  if (a.n() != b.n()) throw DegenerateInput("frames live in different symplectic spaces");
  return joint_singular_values(a.basis(), b.basis());
}

int intersection_dimension(const LagrangianFrame& a, const LagrangianFrame& b) {
  return count_below(concatenated_singular_values(a, b), kRankThreshold);
}

double subspace_distance(const LagrangianFrame& a, const LagrangianFrame& b) {
  if (a.n() != b.n()) throw DegenerateInput("frames live in different symplectic spaces");
  const Eigen::VectorXd cosines =
      Eigen::JacobiSVD<Eigen::MatrixXd>(a.basis().transpose() * b.basis()).singularValues();
  const double c = std::clamp(cosines.minCoeff(), -1.0, 1.0);
  return std::acos(c);
}

LagrangianPath::LagrangianPath(int n, double a, double b, Rule rule)
    : n_(n), a_(a), b_(b), rule_(std::make_shared<const Rule>(std::move(rule))) {
  if (!(b > a)) throw DegenerateInput(fmt::format("empty path domain [{}, {}]", a, b));
}

LagrangianPath LagrangianPath::constant(const LagrangianFrame& frame, double a, double b) {
  Eigen::MatrixXd basis = frame.basis();
  return LagrangianPath(frame.n(), a, b, [basis](double) { return basis; });
}

LagrangianPath LagrangianPath::restricted(double a, double b) const {
  LagrangianPath copy = *this;
  if (!(b > a)) throw DegenerateInput(fmt::format("empty path domain [{}, {}]", a, b));
  copy.a_ = a;
  copy.b_ = b;
  return copy;
}

LagrangianPath LagrangianPath::conjugated(
    const std::function<Eigen::MatrixXd(double)>& symplectic_path) const {
  auto rule = rule_;
  return LagrangianPath(n_, a_, b_, [rule, symplectic_path](double t) {
    return Eigen::MatrixXd(symplectic_path(t) * (*rule)(t));
  });
}

Eigen::MatrixXd crossing_form(const LagrangianPath& path, double t, double step) {
  const Eigen::MatrixXd z0 = path.at(t).basis();
  const Eigen::MatrixXd omega_z0 = standard_form(path.n()) * z0;
  auto graph = [&](double s) { return graph_matrix(z0, omega_z0, path.basis_at(s)); };
  auto central = [&](double h) { return Eigen::MatrixXd((graph(t + h) - graph(t - h)) / (2.0 * h)); };
  const Eigen::MatrixXd d_h = central(step);
  const Eigen::MatrixXd d_half = central(0.5 * step);
  const Eigen::MatrixXd derivative = (4.0 * d_half - d_h) / 3.0;
  const Eigen::MatrixXd g = -derivative;
  return 0.5 * (g + g.transpose());
}

std::vector<CrossingRecord> crossings(const LagrangianPath& lambda, const LagrangianPath& lambda_prime,
                                      const CrossingOptions& options) {
  if (lambda.n() != lambda_prime.n()) throw DegenerateInput("paths live in different symplectic spaces");
  if (std::abs(lambda.start() - lambda_prime.start()) > 1e-12 ||
      std::abs(lambda.end() - lambda_prime.end()) > 1e-12) {
    throw DegenerateInput("paths are not defined on a common interval");
  }
  const int n = lambda.n();
  const double a = lambda.start();
  const double b = lambda.end();
  const double threshold = options.scan.threshold;

  auto joint = [&](double t) {
    return joint_singular_values(orthonormal_columns(lambda.basis_at(t)),
                                 orthonormal_columns(lambda_prime.basis_at(t)));
  };

  // Persistent intersections: the index vanishes when the dimension is
  // constant; a persistent part plus further jumps is not a regular pair.
  constexpr int kProbe = 64;
  int min_dim = 2 * n;
  int max_dim = 0;
  for (int i = 0; i <= kProbe; ++i) {
    const int k = count_below(joint(a + (b - a) * i / kProbe), threshold);
    min_dim = std::min(min_dim, k);
    max_dim = std::max(max_dim, k);
  }
  if (min_dim > 0) {
    if (min_dim == max_dim) return {};
    throw DegenerateCrossing(a, fmt::format("intersection dimension varies between {} and {} on top of a "
                                            "persistent intersection; crossings are not regular",
                                            min_dim, max_dim));
  }

  auto smallest = [&](double t) {
    const Eigen::VectorXd sv = joint(t);
    return sv(sv.size() - 1) / sv(0);
  };
  const std::vector<numerics::Dip> dips = numerics::find_dips(smallest, a, b, options.scan);

  std::vector<CrossingRecord> records;
  for (const numerics::Dip& dip : dips) {
    const double t = dip.raw_time;
    const Eigen::MatrixXd z1 = lambda.at(t).basis();
    const Eigen::MatrixXd z2 = lambda_prime.at(t).basis();
    Eigen::MatrixXd m(2 * n, 2 * n);
    m << z1, z2;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
    const int k = count_below(svd.singularValues(), threshold);
    if (k == 0) continue;
    // Null vectors (a1; a2) of [z1 | z2] give intersection vectors z1·a1.
    const Eigen::MatrixXd null = svd.matrixV().rightCols(k);
    const Eigen::MatrixXd kernel = orthonormal_columns(z1 * null.topRows(n));

    const Eigen::MatrixXd g1 = crossing_form(lambda, t, options.derivative_step);
    const Eigen::MatrixXd g2 = crossing_form(lambda_prime, t, options.derivative_step);
    const Eigen::MatrixXd c1 = z1.transpose() * kernel;
    const Eigen::MatrixXd c2 = z2.transpose() * kernel;
    Eigen::MatrixXd gamma = c1.transpose() * g1 * c1 - c2.transpose() * g2 * c2;
    gamma = 0.5 * (gamma + gamma.transpose());

    const Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gamma).eigenvalues();
    const double scale = std::max({1.0, g1.cwiseAbs().maxCoeff(), g2.cwiseAbs().maxCoeff()});
    int signature = 0;
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
      if (std::abs(eig(i)) < options.degeneracy_tol * scale) {
        throw DegenerateCrossing(
            dip.time, fmt::format("non-regular crossing at t={:.12g}: crossing-form eigenvalue {:.3e}",
                                  dip.time, eig(i)));
      }
      signature += eig(i) > 0 ? 1 : -1;
    }
    records.push_back({dip.time, k, signature, dip.at_start || dip.at_end});
  }
  return records;
}

HalfInteger maslov_index_pair(const LagrangianPath& lambda, const LagrangianPath& lambda_prime,
                              const CrossingOptions& options) {
  std::int64_t twice = 0;
  for (const CrossingRecord& c : crossings(lambda, lambda_prime, options)) {
    twice += c.is_endpoint ? c.crossing_form_signature : 2 * c.crossing_form_signature;
  }
  return HalfInteger::from_twice(twice);
}

std::vector<NullityRecord> lower_block_nullities(const SymplecticPath& transport, int n,
                                                 const numerics::DipScanOptions& scan) {
  // λ ∩ A⁻¹λ for λ = Rⁿ×0 is {x : A₂₁x = 0}; normalize through the
  // orthonormal basis of A(Rⁿ×0) so that the rank test is scale-free.
  auto lower_block_sv = [&](double r) {
    const Eigen::MatrixXd image = transport(r).leftCols(n);
    const Eigen::MatrixXd q = orthonormal_columns(image);
    return Eigen::JacobiSVD<Eigen::MatrixXd>(q.bottomRows(n)).singularValues();
  };
  auto smallest = [&](double r) {
    const Eigen::VectorXd sv = lower_block_sv(r);
    return sv(sv.size() - 1);
  };
  std::vector<NullityRecord> out;
  for (const numerics::Dip& dip : numerics::find_dips(smallest, 0.0, 1.0, scan)) {
    const Eigen::VectorXd sv = lower_block_sv(dip.raw_time);
    int dim = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) < scan.threshold) ++dim;
    }
    out.push_back({dip.time, dim, dip.at_start, dip.at_end});
  }
  return out;
}

HalfInteger maslov_via_conjugate_points(const SymplecticPath& transport, int n,
                                        const numerics::DipScanOptions& scan) {
  std::int64_t twice = 0;
  for (const NullityRecord& rec : lower_block_nullities(transport, n, scan)) {
    twice += (rec.at_start || rec.at_end) ? rec.dim : 2 * rec.dim;
  }
  return HalfInteger::from_twice(twice);
}

std::pair<LagrangianPath, LagrangianPath> jacobi_pair(const SymplecticPath& transport, int n) {
  LagrangianPath lambda = LagrangianPath::constant(LagrangianFrame::horizontal(n), 0.0, 1.0);
  LagrangianPath lambda_prime(n, 0.0, 1.0, [transport, n](double r) {
    const Eigen::MatrixXd a = transport(r);
    return Eigen::MatrixXd(a.partialPivLu().solve(Eigen::MatrixXd::Identity(2 * n, 2 * n)).leftCols(n));
  });
  return {lambda, lambda_prime};
}

HalfInteger coherent_index_from_frame_data(const LagrangianPath& lambda,
                                           const LagrangianPath& lambda_prime, int dim_l,
                                           const CrossingOptions& options) {
  return maslov_index_pair(lambda, lambda_prime, options) - HalfInteger::from_twice(dim_l);
}

HalfInteger local_morse_offset(double second_derivative) {
  // Block coordinates (q1, q2, p1, p2) = (z, x2, x1, x3).
  const double c = second_derivative;
  LagrangianPath lambda(2, 0.0, 1.0, [c](double s) {
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 2);
    b(0, 0) = 1.0;    // z
    b(2, 0) = s * c;  // x1
    b(1, 1) = 1.0;    // x2
    return b;
  });
  Eigen::MatrixXd fixed = Eigen::MatrixXd::Zero(4, 2);
  fixed(0, 0) = 1.0;  // z
  fixed(3, 1) = 1.0;  // x3
  LagrangianPath lambda_prime = LagrangianPath::constant(LagrangianFrame::from_basis(fixed), 0.0, 1.0);
  return HalfInteger::half() - maslov_index_pair(lambda, lambda_prime);
}

double symplectic_defect(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows() / 2);
  const Eigen::MatrixXd omega = standard_form(n);
  const double entry = a.cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, entry * entry);
  return (a.transpose() * omega * a - omega).cwiseAbs().maxCoeff() / scale;
}

}  // namespace twistkit::maslov
