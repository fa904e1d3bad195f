#pragma once

// Z/2 spectral-sequence bookkeeping for the action filtration: E¹ pages built
// from local Floer homology of clean circles, conservative survivor analysis
// and an exhaustive check over filtered boundary operators.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "twistkit/clean.hpp"

namespace twistkit::floer {

using Cell = std::pair<int, int>;  // (p, q)

struct BigradedPage {
  int page = 1;
  std::map<Cell, int> entries;  // only nonzero dimensions are stored

  int dim(const Cell& c) const;
  int total_dimension() const;
  /// Adds `d` to the dimension at c. Throws DegenerateInput if the result is negative.
  void add(const Cell& c, int d);
};

struct LocalHFModel {
  enum class Kind { TransversePoint, CleanCircle };
  Kind kind = Kind::CleanCircle;
  int index_prime = 0;

  /// Total degrees of the generators: {i′} or {i′, i′+1}.
  std::vector<int> generator_degrees() const;
};

/// E¹_{pq} = HF^loc_{p+q}(C_p). Refuses tables whose circles are not clean
/// circles of the expected radius and index (with a diagnostic).
BigradedPage e1_page(const clean::IntersectionTable& table);
/// Same, refusing if the supplied verification failed.
BigradedPage e1_page(const clean::IntersectionTable& table, const clean::CleanReport& report);

/// Bidegree (−d, d−1) of the differential on E^d.
Cell differential_degree(int d);

struct Threat {
  int d = 0;
  Cell source;
  Cell target;
};

struct SurvivalVerdict {
  bool survives = false;
  int d_max = 0;
  int lower_bound = 0;  // guaranteed dimension on E^∞
  std::vector<Threat> threats;
};

/// (max p − min p) + (max q − min q) + 1 over the nonzero cells.
int max_differential_page(const BigradedPage& page);

/// Tracks [lower, upper] dimension intervals for every cell through the pages
/// d = 1..d_max; differentials of unknown rank only lower dimensions. The cell
/// survives if no arrow into or out of it can be nonzero on any page.
/// Throws VacuousInput if the cell is zero on E¹.
SurvivalVerdict survives_to_infinity(const BigradedPage& page, const Cell& cell);

struct Nonvanishing {
  bool nonzero = false;
  std::vector<Cell> witnesses;  // certified survivors
};

Nonvanishing hf_nonvanishing(int r);

/// All (g, δ) with 0 ≤ δ ≤ g ≤ chain_rank_per_level and 2g − 2δ = total_rank.
std::set<std::pair<int, int>> rank_feasibility_t2(int total_rank, int chain_rank_per_level);

struct Parity {
  int total = 0;
  bool odd = false;
};

/// Total dimension of the page mod 2; every later page has the same parity.
Parity parity_check(const BigradedPage& page);

struct Generator {
  int filtration = 0;  // p
  int degree = 0;      // p + q
};

/// Free Z/2 chain model with one generator per unit of E¹ dimension.
std::vector<Generator> chain_model(const BigradedPage& page);

struct EnumerationResult {
  long long candidates = 0;  // operators tried
  long long complexes = 0;   // operators with ∂² = 0
  /// Minimum over all complexes of dim H_k, per total degree k.
  std::map<int, int> min_homology;
};

/// Enumerates every Z/2 operator of degree −1 that strictly lowers the
/// filtration (so the associated graded has zero differential and E¹ is the
/// chain model itself), keeps those with ∂² = 0 and records homology.
/// Throws DegenerateInput beyond 30 admissible matrix entries.
EnumerationResult enumerate_boundary_operators(const std::vector<Generator>& gens);

/// Rank over Z/2 of a matrix given by its rows.
int gf2_rank(std::vector<boost::dynamic_bitset<>> rows);

}  // namespace twistkit::floer
