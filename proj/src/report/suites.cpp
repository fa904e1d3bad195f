// Check implementations behind `verify <suite>`.

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "twistkit/branched.hpp"
#include "twistkit/clean.hpp"
#include "twistkit/floer.hpp"
#include "twistkit/handle.hpp"
#include "twistkit/maslov.hpp"
#include "twistkit/report.hpp"
#include "twistkit/sampling.hpp"
#include "twistkit/sphere.hpp"
#include "twistkit/twist.hpp"

namespace twistkit::report {
namespace {

using nlohmann::json;
using sampling::Rng;
using sphere::Covector;
using std::numbers::pi;

// Each check draws from its own stream so adding a check never shifts others.
Rng stream(const SuiteConfig& config, std::uint64_t salt) { return Rng(config.seed * 0x9E3779B97F4A7C15ULL + salt); }

// ---------------------------------------------------------------- maslov

struct RegularPair {
  maslov::LagrangianPath lambda;
  maslov::LagrangianPath lambda_prime;
  HalfInteger mu;
  std::vector<maslov::CrossingRecord> records;
};

RegularPair draw_regular_pair(Rng& rng, int n, int& rejected) {
  for (;;) {
    maslov::LagrangianPath l = sampling::graph_path(rng, n, 2.0);
    maslov::LagrangianPath lp = sampling::graph_path(rng, n, 2.0);
    try {
      auto recs = maslov::crossings(l, lp);
      return {l, lp, maslov::maslov_index_pair(l, lp), recs};
    } catch (const DegenerateCrossing&) {
    } catch (const ResolutionError&) {
    }
    ++rejected;
  }
}

Outcome maslov_axioms(const SuiteConfig& config) {
  using maslov::maslov_index_pair;
  Rng rng = stream(config, 1);
  Outcome out;
  int rejected = 0;
  int with_crossings = 0;
  json failures = json::array();
  auto expect = [&](bool ok, int trial, const char* axiom) {
    if (ok) return;
    ++out.violations;
    failures.push_back({{"trial", trial}, {"axiom", axiom}});
  };
  for (int trial = 0; trial < config.maslov_pairs; ++trial) {
    const int n = 1 + trial % 3;
    const RegularPair p = draw_regular_pair(rng, n, rejected);
    if (!p.records.empty()) ++with_crossings;

    expect(maslov_index_pair(p.lambda_prime, p.lambda) == -p.mu, trial, "antisymmetry");

    const int dim_a = maslov::intersection_dimension(p.lambda.at(0.0), p.lambda_prime.at(0.0));
    const int dim_b = maslov::intersection_dimension(p.lambda.at(1.0), p.lambda_prime.at(1.0));
    expect(p.mu.congruent_mod_one(HalfInteger::from_twice(dim_a - dim_b)), trial, "mod-one");

    double cut = 0.5;
    for (const auto& c : p.records) {
      if (std::abs(c.time - cut) < 1e-3) cut = 0.51;
    }
    const HalfInteger left = maslov_index_pair(p.lambda.restricted(0.0, cut), p.lambda_prime.restricted(0.0, cut));
    const HalfInteger right = maslov_index_pair(p.lambda.restricted(cut, 1.0), p.lambda_prime.restricted(cut, 1.0));
    expect(left + right == p.mu, trial, "additivity");

    const auto psi = sampling::shear_path(rng, n, 1.5);
    expect(maslov_index_pair(p.lambda.conjugated(psi), p.lambda_prime.conjugated(psi)) == p.mu, trial,
           "conjugation");
    expect(maslov_index_pair(p.lambda, p.lambda) == HalfInteger(0), trial, "constant");
  }
  out.max_defect = out.violations;
  out.extra = {{"pairs", config.maslov_pairs}, {"pairs_with_crossings", with_crossings}, {"rejected_draws", rejected}};
  if (!failures.empty()) out.witness = failures;
  return out;
}

Outcome maslov_local_model(const SuiteConfig&) {
  Outcome out;
  // μ(λ, λ′) = ½ − offset for the model pair; offsets 0 and 1 by the sign of h″.
  const HalfInteger mu = HalfInteger::half() - maslov::local_morse_offset(1.0);
  const HalfInteger positive = maslov::local_morse_offset(1.0);
  const HalfInteger negative = maslov::local_morse_offset(-1.0);
  out.violations += mu != HalfInteger::half();
  out.violations += positive != HalfInteger(0);
  out.violations += negative != HalfInteger(1);
  out.max_defect = out.violations;
  out.witness = {{"mu", mu.to_string()}, {"offset_positive", positive.to_string()},
                 {"offset_negative", negative.to_string()}};
  return out;
}

Outcome maslov_conjugate_oracle(const SuiteConfig& config) {
  Rng rng = stream(config, 2);
  Outcome out;
  int rejected = 0;
  int nonzero = 0;
  json failures = json::array();
  for (int family = 0; family < config.oracle_families;) {
    const int n = 1 + family % 2;
    const double c = sampling::uniform(rng, 0.0, 10.0);
    const Eigen::MatrixXd s0 = sampling::symmetric(rng, n, 3.0);
    const Eigen::MatrixXd s1 = sampling::symmetric(rng, n, 3.0);
    sphere::JacobiSystem system{n, [=](double r) {
                                  return Eigen::MatrixXd(-c * pi * pi * Eigen::MatrixXd::Identity(n, n) + s0 + r * s1);
                                }};
    try {
      const sphere::JacobiTransport transport(system);
      const maslov::SymplecticPath path = transport.as_path();
      const auto [l, lp] = maslov::jacobi_pair(path, n);
      const HalfInteger by_crossings = maslov::maslov_index_pair(l, lp);
      const HalfInteger by_conjugates = maslov::maslov_via_conjugate_points(path, n);
      if (by_crossings != HalfInteger(0)) ++nonzero;
      if (by_crossings != by_conjugates) {
        ++out.violations;
        failures.push_back({{"family", family}, {"crossings", by_crossings.to_string()},
                            {"conjugate_points", by_conjugates.to_string()}});
      }
      ++family;
    } catch (const DegenerateCrossing&) {
      ++rejected;
    } catch (const ResolutionError&) {
      ++rejected;
    }
  }
  out.max_defect = out.violations;
  out.extra = {{"families", config.oracle_families}, {"nonzero_indices", nonzero}, {"rejected_draws", rejected}};
  if (!failures.empty()) out.witness = failures;
  return out;
}

// -------------------------------------------------------------- geometry

Outcome geometry_flow(const SuiteConfig& config) {
  Rng rng = stream(config, 3);
  Outcome out;
  out.tolerance = config.tol.flow;
  for (int i = 0; i < 200; ++i) {
    const Covector xi = sampling::covector(rng, sampling::uniform(rng, 0.05, 10.0));
    const double s = sampling::uniform(rng, -3.0, 3.0);
    const double t = sampling::uniform(rng, -3.0, 3.0);
    const Covector y = sphere::geodesic_flow(xi, s);
    out.max_defect = std::max({out.max_defect,
                               sphere::distance(sphere::geodesic_flow(xi, s + t), sphere::geodesic_flow(y, t)),
                               y.constraint_defect(), std::abs(y.v.norm() - xi.v.norm()),
                               sphere::distance(sphere::circle_action(t, xi), sphere::geodesic_flow(xi, t / xi.v.norm()))});
  }
  out.extra = {{"samples", 200}};
  return out;
}

Outcome geometry_morse_index(const SuiteConfig& config) {
  Outcome out;
  json rows = json::array();
  for (int j = 1; j <= config.r_max; ++j) {
    const Covector xi = Covector::make({0, 0, 1}, {(2 * j - 1) * pi, 0, 0});
    const sphere::Geodesic g{xi};
    const HalfInteger m = sphere::morse_index(g);
    out.violations += m != HalfInteger::from_twice(4 * j - 3);
    const double e = sphere::energy(g) - 0.5 * std::pow((2 * j - 1) * pi, 2);
    out.max_defect = std::max(out.max_defect, std::abs(e));
    rows.push_back({{"j", j}, {"morse_index", m.to_string()}});
  }
  out.tolerance = config.tol.table;
  out.witness = rows;
  return out;
}

Outcome geometry_coherent_index(const SuiteConfig& config) {
  Rng rng = stream(config, 4);
  Outcome out;
  for (int j = 1; j <= std::min(3, config.r_max); ++j) {
    const Covector xi = sampling::covector(rng, (2 * j - 1) * pi);
    const auto [l, lp] = sphere::index_path_data(xi);
    const HalfInteger i = maslov::coherent_index_from_frame_data(l, lp, 2);
    out.violations += i != sphere::morse_index(sphere::Geodesic{xi});
  }
  out.max_defect = out.violations;
  return out;
}

// ----------------------------------------------------------------- twist

std::vector<Covector> twist_samples(Rng& rng, int count, double max_speed) {
  std::vector<Covector> out;
  for (int i = 0; i < count; ++i) {
    const double speed = (i % 4 == 0) ? sampling::uniform(rng, 1e-6, 1e-3) : sampling::uniform(rng, 0.0, max_speed);
    out.push_back(sampling::covector(rng, speed));
  }
  return out;
}

Outcome twist_symplectic(const SuiteConfig& config) {
  Rng rng = stream(config, 5);
  const twist::ModelTwist m{twist::make_profile(1)};
  const auto samples = twist_samples(rng, 1000, 2 * pi * 1.1);
  const auto check = twist::check_symplectic([&](const Covector& x) { return twist::twist(m, x); }, samples);
  Outcome out;
  out.max_defect = check.max_defect;
  out.tolerance = config.tol.symplectic;
  out.violations = check.skipped;
  out.extra = {{"evaluated", check.evaluated}, {"skipped", check.skipped}};
  return out;
}

Outcome twist_power(const SuiteConfig& config) {
  Rng rng = stream(config, 6);
  Outcome out;
  out.tolerance = config.tol.twist_power;
  json worst = json::object();
  for (int r = 1; r <= std::min(4, config.r_max); ++r) {
    const twist::ModelTwist m{twist::make_profile(r)};
    double w = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Covector xi = sampling::covector(rng, sampling::uniform(rng, 0.0, *m.profile.delta()));
      w = std::max(w, sphere::distance(twist::twist_power(m, 2 * r, xi), sphere::geodesic_flow(xi, -1.0)));
    }
    worst[std::to_string(r)] = w;
    out.max_defect = std::max(out.max_defect, w);
  }
  out.witness = worst;
  return out;
}

Outcome twist_antipodal(const SuiteConfig& config) {
  Rng rng = stream(config, 7);
  Outcome out;
  out.tolerance = config.tol.antipodal;
  for (int i = 0; i < 500; ++i) {
    const Covector xi = sampling::covector(rng, sampling::uniform(rng, 0.05, 10.0));
    out.max_defect = std::max(out.max_defect, sphere::distance(sphere::circle_action(pi, xi), twist::antipodal(xi)));
  }
  return out;
}

Outcome twist_isotopy(const SuiteConfig& config) {
  Rng rng = stream(config, 8);
  const twist::ModelTwist m{twist::TwistProfile::flat(0.5, 2.0)};
  double margin = std::numeric_limits<double>::infinity();
  for (const Covector& xi : twist_samples(rng, 100, 2.5)) {
    const double s = sampling::uniform(rng, 0.0, 1.0);
    const double scale = sampling::uniform(rng, 0.0, 1.0);
    auto stage = [&](const Covector& p) { return twist::square_isotopy_stage(m, s, scale, p); };
    margin = std::min(margin, std::abs(twist::tangent_jacobian_determinant(stage, xi)));
  }
  Outcome out;
  // Margin check: the defect is the shortfall below the required |det|.
  out.max_defect = std::max(0.0, config.tol.isotopy_det - margin);
  out.tolerance = 0.0;
  out.extra = {{"min_abs_det", margin}, {"required_abs_det", config.tol.isotopy_det}};
  return out;
}

// --------------------------------------------------------- intersections

Outcome intersections_radii(const SuiteConfig& config) {
  Outcome out;
  out.tolerance = config.tol.table;
  for (int r = 1; r <= config.r_max; ++r) {
    for (const auto& c : clean::compute_circles(r).circles) {
      out.max_defect = std::max(out.max_defect, std::abs(c.radius - (2 * c.j - 1) * pi));
    }
  }
  return out;
}

Outcome intersections_action_gaps(const SuiteConfig& config) {
  Outcome out;
  out.tolerance = config.tol.table;
  for (int r = 1; r <= config.r_max; ++r) {
    const auto t = clean::compute_circles(r);
    for (int j = 2; j <= r; ++j) {
      const double gap = t.circles[j - 1].action - t.circles[j - 2].action;
      const double expected = pi * pi / 2 * ((2 * j - 1) * (2 * j - 1) - (2 * j - 3) * (2 * j - 3));
      out.max_defect = std::max(out.max_defect, std::abs(gap - expected));
    }
  }
  return out;
}

Outcome intersections_indices(const SuiteConfig& config) {
  Outcome out;
  for (int r = 1; r <= config.r_max; ++r) {
    const auto rows = clean::index_table(clean::compute_circles(r));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      out.violations += rows[i].morse_index != HalfInteger::from_twice(4 * rows[i].j - 3);
      if (i > 0) out.violations += rows[i].index_prime - rows[i - 1].index_prime != 2;
    }
  }
  out.max_defect = out.violations;
  return out;
}

Outcome intersections_constant_action(const SuiteConfig& config) {
  Outcome out;
  out.tolerance = config.tol.action;
  for (int r = 1; r <= config.r_max; ++r) {
    for (const auto& c : clean::compute_circles(r).circles) {
      const sphere::Geodesic g = clean::circle_geodesic(c, 0.3 * c.j);
      out.max_defect =
          std::max(out.max_defect, std::abs(sphere::action_of_constant_path(g.initial) - 0.5 * c.radius * c.radius));
    }
  }
  return out;
}

Outcome intersections_clean(const SuiteConfig& config) {
  Outcome out;
  out.tolerance = config.tol.jacobi;
  json circles = json::array();
  for (int r = 1; r <= std::min(4, config.r_max); ++r) {
    const auto report = clean::verify_clean(clean::compute_circles(r), config.clean_samples, config.tol.jacobi);
    for (const auto& v : report.circles) {
      out.max_defect = std::max(out.max_defect, v.jacobi_defect);
      out.violations += v.min_multiplicity != 1 || v.max_multiplicity != 1 || v.membership_defect > 1e-9;
      circles.push_back({{"r", r}, {"j", v.j}, {"multiplicity", v.max_multiplicity}, {"jacobi_defect", v.jacobi_defect}});
    }
    out.violations += !report.pass;
  }
  out.extra = {{"samples_per_circle", config.clean_samples}};
  out.witness = circles;
  return out;
}

Outcome intersections_negative_control(const SuiteConfig& config) {
  clean::IntersectionTable bogus;
  bogus.r = 1;
  clean::CleanCircle c;
  c.j = 1;
  c.radius = 2 * pi;
  bogus.circles.push_back(c);
  const auto report = clean::verify_clean(bogus, config.clean_samples, config.tol.jacobi);
  Outcome out;
  // Passes when the verification rejects the closed geodesic.
  out.violations = report.pass ? 1 : 0;
  out.max_defect = out.violations;
  out.witness = {{"verification_passed", report.pass}, {"membership_defect", report.circles[0].membership_defect}};
  return out;
}

// ----------------------------------------------------------------- floer

std::set<floer::Cell> expected_support(int r) {
  std::set<floer::Cell> s;
  for (int p = 1; p <= r; ++p) {
    s.insert({p, p});
    s.insert({p, p + 1});
  }
  return s;
}

Outcome floer_e1(const SuiteConfig& config) {
  Outcome out;
  for (int r = 1; r <= config.r_max; ++r) {
    const floer::BigradedPage page = floer::e1_page(clean::compute_circles(r));
    std::set<floer::Cell> support;
    for (const auto& [cell, d] : page.entries) {
      support.insert(cell);
      out.violations += d != 1;
    }
    out.violations += support != expected_support(r);
  }
  out.max_defect = out.violations;
  return out;
}

Outcome floer_survivors(const SuiteConfig& config) {
  Outcome out;
  for (int r = 1; r <= config.r_max; ++r) {
    const floer::BigradedPage page = floer::e1_page(clean::compute_circles(r));
    out.violations += !floer::survives_to_infinity(page, {1, 1}).survives;
    out.violations += !floer::survives_to_infinity(page, {r, r + 1}).survives;
  }
  out.max_defect = out.violations;
  return out;
}

Outcome floer_enumeration(const SuiteConfig& config) {
  Outcome out;
  json rows = json::array();
  for (int r = 1; r <= std::min(4, config.r_max); ++r) {
    const floer::BigradedPage page = floer::e1_page(clean::compute_circles(r));
    const floer::EnumerationResult e = floer::enumerate_boundary_operators(floer::chain_model(page));
    for (const auto& [cell, d] : page.entries) {
      if (floer::survives_to_infinity(page, cell).survives) {
        out.violations += e.min_homology.at(cell.first + cell.second) < 1;
      }
    }
    rows.push_back({{"r", r}, {"candidates", e.candidates}, {"complexes", e.complexes}});
  }
  out.max_defect = out.violations;
  out.witness = rows;
  return out;
}

Outcome floer_two_level_rank(const SuiteConfig&) {
  Outcome out;
  const auto feasible = floer::rank_feasibility_t2(4, 2);
  out.violations = feasible != std::set<std::pair<int, int>>{{2, 0}};
  out.max_defect = out.violations;
  json w = json::array();
  for (const auto& [g, d] : feasible) w.push_back({g, d});
  out.witness = w;
  return out;
}

Outcome floer_nonvanishing(const SuiteConfig& config) {
  Outcome out;
  json rows = json::object();
  for (int r = 0; r <= config.r_max; ++r) {
    const floer::Nonvanishing nv = floer::hf_nonvanishing(r);
    out.violations += nv.nonzero != (r >= 1);
    rows[std::to_string(r)] = nv.nonzero;
  }
  out.max_defect = out.violations;
  out.witness = rows;
  return out;
}

// --------------------------------------------------------------- surgery

Outcome surgery_handle(const SuiteConfig& config) {
  using namespace surgery;
  const HandlePatch patch = HandlePatch::from_curve(ProfileCurve::smoothed_corner(0.5), 100, 100);
  Outcome out;
  out.tolerance = config.tol.lagrangian;
  out.max_defect = handle_lagrangian_defect(patch);
  const Embeddedness e = handle_embeddedness(HandlePatch::from_curve(ProfileCurve::smoothed_corner(0.5), 40, 40));
  out.violations = e.verdict != Embeddedness::Verdict::Embedded;
  out.extra = {{"grid_points", 100 * 100}, {"min_distance", e.min_distance}};
  return out;
}

Outcome surgery_figure_eight(const SuiteConfig& config) {
  using namespace surgery;
  Outcome out;
  out.tolerance = config.tol.lagrangian;
  const FigureEightCheck check = check_figure_eight(10000);
  out.max_defect = check.lagrangian_defect;
  out.violations += figure_eight({1, 0, 0}) != C2(0.0, 0.0);
  out.violations += figure_eight({-1, 0, 0}) != C2(0.0, 0.0);
  out.violations += !(check.min_branch_distance > 0.0);
  out.extra = {{"min_singular_value", check.min_singular_value}, {"min_branch_distance", check.min_branch_distance}};
  return out;
}

Outcome surgery_linking(const SuiteConfig&) {
  using namespace surgery;
  const int once = linking_number(meridian_loop(1));
  const int twice = linking_number(meridian_loop(2));
  Outcome out;
  out.violations = (once != 1) + (twice != 2);
  out.max_defect = std::abs(once - 1) + std::abs(twice - 2);
  out.witness = {{"meridian", once}, {"meridian_twice", twice}};
  return out;
}

Outcome surgery_lift(const SuiteConfig& config) {
  using namespace surgery;
  Outcome out;
  out.tolerance = config.tol.lift;
  json rows = json::object();
  for (int m = 1; m <= 4; ++m) {
    const BranchedCover cover{m};
    const C3 plus = lifted_figure_eight(cover, {1, 0, 0});
    const C3 minus = lifted_figure_eight(cover, {-1, 0, 0});
    const double forward = (minus - cover.deck(plus)).norm();
    const double backward = (minus - cover.deck(plus, -1)).norm();
    out.max_defect = std::max(out.max_defect, forward);
    rows[std::to_string(m)] = {{"sigma", forward}, {"sigma_inverse", backward}};
  }
  out.witness = rows;
  return out;
}

Outcome surgery_monodromy(const SuiteConfig&) {
  using namespace surgery;
  Outcome out;
  for (int m = 1; m <= 4; ++m) {
    const BranchedCover cover{m};
    for (int k = 0; k <= m + 1; ++k) {
      const Path2 loop = [k](double s) { return C2(std::sqrt(0.5 + std::polar(0.3, 2.0 * pi * k * s)), 0.0); };
      const int lk = linking_number(loop);
      const cplx seed = std::pow(branch_function(loop(0.0)), 1.0 / (m + 1));
      const auto lift = lift_path(cover, loop, seed);
      const bool closes = (lift.back() - lift.front()).norm() < 1e-8;
      out.violations += (lk != k) + (closes != (k % (m + 1) == 0));
    }
  }
  out.max_defect = out.violations;
  return out;
}

Outcome surgery_am(const SuiteConfig& config) {
  using namespace surgery;
  Outcome out;
  json rows = json::object();
  double margin = std::numeric_limits<double>::infinity();
  for (int m : {2, 3, 4}) {
    const AmConfiguration am = build_am_configuration(m, config.am_samples);
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        const int expected = (b - a == 1) ? 1 : 0;
        out.violations += am.counts[a][b] != expected;
        if (expected == 1) margin = std::min(margin, am.min_angles[a][b]);
      }
    }
    rows[std::to_string(m)] = am.counts;
  }
  out.max_defect = out.violations;
  out.extra = {{"samples_per_sphere", config.am_samples}, {"min_transversality", margin}};
  out.witness = rows;
  return out;
}

Outcome surgery_correction_moment(const SuiteConfig& config) {
  const surgery::CorrectionProfile beta(0.2);
  Outcome out;
  out.tolerance = config.tol.moment;
  out.max_defect = std::abs(beta.moment());
  out.extra = {{"kappa", beta.kappa()}};
  return out;
}

Outcome surgery_correction_form(const SuiteConfig& config) {
  using namespace surgery;
  const CorrectionProfile beta(0.2);
  Outcome out;
  out.tolerance = config.tol.lagrangian;
  double margin = std::numeric_limits<double>::infinity();
  for (int m : {2, 3, 4}) {
    const BranchedCover cover{m};
    const CorrectionDefects d =
        correction_form_defects(beta, cover, fibonacci_sphere(500), hypersurface_samples(cover, 0.2, 400));
    out.max_defect = std::max(out.max_defect, d.lagrangian_defect);
    margin = std::min(margin, d.min_pfaffian);
    out.violations += d.skipped;
  }
  out.violations += !(margin > 0.0);
  out.extra = {{"min_pfaffian", margin}};
  return out;
}

Outcome surgery_graph(const SuiteConfig& config) {
  const surgery::GraphIdentity g = surgery::surgery_graph_identity(twist::TwistProfile::surgery(0.6), config.seed);
  Outcome out;
  out.tolerance = config.tol.graph;
  out.max_defect = g.max_defect();
  out.extra = {{"first_chart", g.first_chart},
               {"second_chart", g.second_chart},
               {"handle_match", g.handle_match},
               {"handle_lagrangian", g.handle_lagrangian}};
  return out;
}

Outcome surgery_braid(const SuiteConfig& config) {
  const surgery::BraidIngredients b = surgery::braid_ingredients(twist::TwistProfile::surgery(0.6));
  Outcome out;
  out.tolerance = config.tol.braid;
  out.max_defect = std::max(b.surgery_one, b.surgery_two);
  out.extra = {{"surgery_one", b.surgery_one}, {"surgery_two", b.surgery_two}};
  return out;
}

}  // namespace

const std::vector<CheckSpec>& check_registry() {
  static const std::vector<CheckSpec> registry = {
      {"maslov", "maslov.axioms", "index.axioms", maslov_axioms},
      {"maslov", "maslov.local-model", "index.local-model", maslov_local_model},
      {"maslov", "maslov.conjugate-oracle", "index.conjugate-points", maslov_conjugate_oracle},
      {"geometry", "geometry.flow", "geodesic.flow", geometry_flow},
      {"geometry", "geometry.morse-index", "geodesic.morse-index", geometry_morse_index},
      {"geometry", "geometry.coherent-index", "geodesic.coherent-index", geometry_coherent_index},
      {"twist", "twist.symplectic", "twist.symplectic", twist_symplectic},
      {"twist", "twist.power", "twist.power", twist_power},
      {"twist", "twist.antipodal", "twist.antipodal", twist_antipodal},
      {"twist", "twist.isotopy", "twist.isotopy", twist_isotopy},
      {"intersections", "intersections.radii", "clean.circles", intersections_radii},
      {"intersections", "intersections.action-gaps", "clean.actions", intersections_action_gaps},
      {"intersections", "intersections.indices", "clean.indices", intersections_indices},
      {"intersections", "intersections.constant-action", "clean.actions", intersections_constant_action},
      {"intersections", "intersections.clean", "clean.verification", intersections_clean},
      {"intersections", "intersections.negative-control", "clean.verification", intersections_negative_control},
      {"floer", "floer.e1-page", "floer.e1", floer_e1},
      {"floer", "floer.survivors", "floer.survivors", floer_survivors},
      {"floer", "floer.enumeration", "floer.enumeration", floer_enumeration},
      {"floer", "floer.two-level-rank", "floer.two-level-rank", floer_two_level_rank},
      {"floer", "floer.nonvanishing", "floer.nonvanishing", floer_nonvanishing},
      {"surgery", "surgery.handle", "surgery.handle", surgery_handle},
      {"surgery", "surgery.figure-eight", "surgery.figure-eight", surgery_figure_eight},
      {"surgery", "surgery.linking", "surgery.linking", surgery_linking},
      {"surgery", "surgery.lift", "surgery.lift", surgery_lift},
      {"surgery", "surgery.monodromy", "surgery.monodromy", surgery_monodromy},
      {"surgery", "surgery.am-counts", "surgery.am-configuration", surgery_am},
      {"surgery", "surgery.correction-moment", "surgery.correction-form", surgery_correction_moment},
      {"surgery", "surgery.correction-form", "surgery.correction-form", surgery_correction_form},
      {"surgery", "surgery.graph-identity", "surgery.graph-identity", surgery_graph},
      {"surgery", "surgery.braid", "surgery.braid", surgery_braid},
  };
  return registry;
}

const std::map<std::string, std::string>& anchor_registry() {
  static const std::map<std::string, std::string> anchors = {
      {"index.axioms", "Maslov index of path pairs: antisymmetry, additivity, conjugation, constancy, mod-1 rule"},
      {"index.local-model", "Index offset of the local model at a critical point on a clean circle"},
      {"index.conjugate-points", "Jacobi-pair index equals the conjugate-point count"},
      {"geodesic.flow", "Geodesic flow and circle action on T*S2"},
      {"geodesic.morse-index", "Morse index and energy of geodesics of length (2j-1)pi"},
      {"geodesic.coherent-index", "Coherent index of a constant path equals its Morse index"},
      {"twist.symplectic", "Model Dehn twist preserves the symplectic form"},
      {"twist.power", "tau^{2r} equals the time -1 geodesic flow near the zero-section"},
      {"twist.antipodal", "sigma(-1) is the antipodal map"},
      {"twist.isotopy", "Square isotopy stages are diffeomorphisms"},
      {"clean.circles", "Clean intersection circles of tau^{2r}(T_x) and T_x"},
      {"clean.actions", "Actions of the clean circles and their gaps"},
      {"clean.indices", "Morse indices and shifted indices of the clean circles"},
      {"clean.verification", "Cleanness via multiplicity one and Jacobi-field realization"},
      {"floer.e1", "E1 page of the action spectral sequence"},
      {"floer.survivors", "Cells that survive to the limit page"},
      {"floer.enumeration", "Exhaustive filtered boundary operators confirm survivors"},
      {"floer.two-level-rank", "Rank identity for a two-level filtration"},
      {"floer.nonvanishing", "Floer homology of the twisted fibre pair is nonzero"},
      {"surgery.handle", "Lagrangian handle swept by a profile curve"},
      {"surgery.figure-eight", "Lagrangian figure-eight immersion of S2"},
      {"surgery.linking", "Linking number of the meridian image with the branch curve"},
      {"surgery.lift", "Lift of the figure-eight and its endpoint relation"},
      {"surgery.monodromy", "Monodromy of the branched cover equals linking number mod m+1"},
      {"surgery.am-configuration", "Intersection pattern of the lifted spheres"},
      {"surgery.correction-form", "Corrected Kahler form and its profile"},
      {"surgery.graph-identity", "Surgery of fibre and zero-section against the inverse twist"},
      {"surgery.braid", "Twist and surgery identities feeding the braid relation"},
  };
  return anchors;
}

}  // namespace twistkit::report
