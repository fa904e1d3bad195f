#include "twistkit/floer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "twistkit/errors.hpp"

namespace twistkit::floer {

namespace {

Cell shift(const Cell& c, const Cell& by) { return {c.first + by.first, c.second + by.second}; }

void validate_table(const clean::IntersectionTable& table) {
  if (static_cast<int>(table.circles.size()) != table.r) {
    throw Refusal(fmt::format("table has {} circles for r = {}", table.circles.size(), table.r));
  }
  for (std::size_t i = 0; i < table.circles.size(); ++i) {
    const clean::CleanCircle& c = table.circles[i];
    const int j = static_cast<int>(i) + 1;
    if (c.j != j) throw Refusal(fmt::format("circle {} is labelled j = {}", j, c.j));
    if (std::abs(c.radius - (2 * j - 1) * std::numbers::pi) > 1e-9) {
      throw Refusal(fmt::format("C_{} has radius {}, not a clean circle of L ∩ L′", j, c.radius));
    }
    if (c.index_prime != 2 * j) {
      throw Refusal(fmt::format("C_{} has i′ = {}; expected the normalization i′(C_p) = 2p", j, c.index_prime));
    }
  }
}

}  // namespace

int BigradedPage::dim(const Cell& c) const {
  const auto it = entries.find(c);
  return it == entries.end() ? 0 : it->second;
}

int BigradedPage::total_dimension() const {
  int total = 0;
  for (const auto& [cell, d] : entries) total += d;
  return total;
}

void BigradedPage::add(const Cell& c, int d) {
  const int value = dim(c) + d;
  if (value < 0) throw DegenerateInput(fmt::format("negative dimension at ({}, {})", c.first, c.second));
  if (value == 0) {
    entries.erase(c);
  } else {
    entries[c] = value;
  }
}

std::vector<int> LocalHFModel::generator_degrees() const {
  if (kind == Kind::TransversePoint) return {index_prime};
  return {index_prime, index_prime + 1};
}

BigradedPage e1_page(const clean::IntersectionTable& table) {
  validate_table(table);
  BigradedPage page;
  for (const clean::CleanCircle& c : table.circles) {
    const LocalHFModel local{LocalHFModel::Kind::CleanCircle, c.index_prime};
    for (int degree : local.generator_degrees()) page.add({c.j, degree - c.j}, 1);
  }
  return page;
}

BigradedPage e1_page(const clean::IntersectionTable& table, const clean::CleanReport& report) {
  if (!report.pass) {
    for (const clean::CircleVerdict& v : report.circles) {
      if (!v.pass) {
        throw Refusal(fmt::format("C_{} failed the clean-intersection check (multiplicity {}..{}, Jacobi defect {:.3e})",
                                  v.j, v.min_multiplicity, v.max_multiplicity, v.jacobi_defect));
      }
    }
    throw Refusal("clean-intersection check failed");
  }
  return e1_page(table);
}

Cell differential_degree(int d) {
  if (d < 1) throw DegenerateInput(fmt::format("page number must be >= 1, got {}", d));
  return {-d, d - 1};
}

int max_differential_page(const BigradedPage& page) {
  if (page.entries.empty()) return 0;
  int pmin = page.entries.begin()->first.first;
  int pmax = pmin;
  int qmin = page.entries.begin()->first.second;
  int qmax = qmin;
  for (const auto& [cell, d] : page.entries) {
    pmin = std::min(pmin, cell.first);
    pmax = std::max(pmax, cell.first);
    qmin = std::min(qmin, cell.second);
    qmax = std::max(qmax, cell.second);
  }
  return (pmax - pmin) + (qmax - qmin) + 1;
}

SurvivalVerdict survives_to_infinity(const BigradedPage& page, const Cell& cell) {
  if (page.dim(cell) == 0) {
    throw VacuousInput(fmt::format("cell ({}, {}) is zero on E¹", cell.first, cell.second));
  }
  // Upper bounds never grow; lower bounds drop by the largest rank an
  // unknown differential could have.
  std::map<Cell, int> lo = page.entries;
  const std::map<Cell, int> hi = page.entries;
  auto upper = [&](const Cell& c) {
    const auto it = hi.find(c);
    return it == hi.end() ? 0 : it->second;
  };

  SurvivalVerdict verdict;
  verdict.d_max = max_differential_page(page);
  for (int d = 1; d <= verdict.d_max; ++d) {
    const Cell deg = differential_degree(d);
    const Cell from = shift(cell, {-deg.first, -deg.second});
    const Cell to = shift(cell, deg);
    if (upper(from) > 0) verdict.threats.push_back({d, from, cell});
    if (upper(to) > 0) verdict.threats.push_back({d, cell, to});

    std::map<Cell, int> next;
    for (const auto& [c, low] : lo) {
      const int out_rank = std::min(upper(c), upper(shift(c, deg)));
      const int in_rank = std::min(upper(c), upper(shift(c, {-deg.first, -deg.second})));
      next[c] = std::max(0, low - out_rank - in_rank);
    }
    lo = std::move(next);
  }
  verdict.survives = verdict.threats.empty();
  verdict.lower_bound = lo[cell];
  return verdict;
}

Nonvanishing hf_nonvanishing(int r) {
  Nonvanishing out;
  if (r == 0) return out;  // disjoint fibres: no generators at all
  const BigradedPage page = e1_page(clean::compute_circles(r));
  for (const auto& [cell, d] : page.entries) {
    if (survives_to_infinity(page, cell).survives) out.witnesses.push_back(cell);
  }
  out.nonzero = !out.witnesses.empty();
  return out;
}

std::set<std::pair<int, int>> rank_feasibility_t2(int total_rank, int chain_rank_per_level) {
  if (total_rank < 0 || chain_rank_per_level < 0) {
    throw DegenerateInput(fmt::format("ranks must be >= 0, got ({}, {})", total_rank, chain_rank_per_level));
  }
  std::set<std::pair<int, int>> out;
  for (int g = 0; g <= chain_rank_per_level; ++g) {
    for (int delta = 0; delta <= g; ++delta) {
      if (2 * g - 2 * delta == total_rank) out.insert({g, delta});
    }
  }
  return out;
}

Parity parity_check(const BigradedPage& page) {
  const int total = page.total_dimension();
  return {total, total % 2 == 1};
}

std::vector<Generator> chain_model(const BigradedPage& page) {
  std::vector<Generator> gens;
  for (const auto& [cell, d] : page.entries) {
    for (int i = 0; i < d; ++i) gens.push_back({cell.first, cell.first + cell.second});
  }
  return gens;
}

int gf2_rank(std::vector<boost::dynamic_bitset<>> rows) {
  int rank = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot][col]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != static_cast<std::size_t>(rank) && rows[i][col]) rows[i] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

EnumerationResult enumerate_boundary_operators(const std::vector<Generator>& gens) {
  const std::size_t n = gens.size();
  std::vector<std::pair<std::size_t, std::size_t>> slots;  // (source, target)
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (gens[t].degree == gens[s].degree - 1 && gens[t].filtration < gens[s].filtration) slots.push_back({s, t});
    }
  }
  if (slots.size() > 30) throw DegenerateInput(fmt::format("{} admissible entries is too many to enumerate", slots.size()));

  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < n; ++i) by_degree[gens[i].degree].push_back(i);

  EnumerationResult result;
  const unsigned long long count = 1ULL << slots.size();
  for (unsigned long long mask = 0; mask < count; ++mask) {
    ++result.candidates;
    // column s of ∂ as a bitset over targets
    std::vector<boost::dynamic_bitset<>> column(n, boost::dynamic_bitset<>(n));
    for (std::size_t b = 0; b < slots.size(); ++b) {
      if (mask >> b & 1ULL) column[slots[b].first].set(slots[b].second);
    }
    bool square_zero = true;
    for (std::size_t s = 0; s < n && square_zero; ++s) {
      boost::dynamic_bitset<> image(n);
      for (std::size_t m = column[s].find_first(); m != boost::dynamic_bitset<>::npos; m = column[s].find_next(m)) {
        image ^= column[m];
      }
      square_zero = image.none();
    }
    if (!square_zero) continue;
    ++result.complexes;

    // rank of ∂ restricted to degree k sources
    std::map<int, int> rank_from;
    for (const auto& [k, sources] : by_degree) {
      const auto targets = by_degree.find(k - 1);
      if (targets == by_degree.end()) {
        rank_from[k] = 0;
        continue;
      }
      std::vector<boost::dynamic_bitset<>> rows;
      for (std::size_t s : sources) {
        boost::dynamic_bitset<> row(targets->second.size());
        for (std::size_t i = 0; i < targets->second.size(); ++i) row[i] = column[s][targets->second[i]];
        rows.push_back(row);
      }
      rank_from[k] = gf2_rank(rows);
    }
    for (const auto& [k, sources] : by_degree) {
      const int h = static_cast<int>(sources.size()) - rank_from[k] - (rank_from.count(k + 1) ? rank_from[k + 1] : 0);
      const auto it = result.min_homology.find(k);
      if (it == result.min_homology.end() || h < it->second) result.min_homology[k] = h;
    }
  }
  return result;
}

}  // namespace twistkit::floer
