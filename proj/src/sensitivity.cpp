#include "bwm/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "bwm/solver.hpp"

namespace bwm {

namespace {

void require_same_structure(const Pcs<double>& a, const Pcs<double>& b) {
  if (a.n() != b.n() || a.best() != b.best() || a.worst() != b.worst() ||
      a.scale_max() != b.scale_max()) {
    throw Error(ErrorCode::StructureMismatch,
                "candidate must have the same size, best, worst and scale as the base");
  }
}

EpsilonTable<double> require_inconsistent(const Pcs<double>& base) {
  auto table = compute_epsilons(base);
  if (!table.pivot.has_pivot()) {
    throw Error(ErrorCode::BaseConsistent,
                "base PCS is fully consistent (eta = 0); its equivalence class is the base alone");
  }
  return table;
}

std::vector<Index> pivot_indices(const Pivot& p) {
  std::vector<Index> out;
  if (p.first >= 0) out.push_back(p.first);
  if (p.second >= 0) out.push_back(p.second);
  return out;
}

bool close(double a, double b) { return std::abs(a - b) <= kEquivalenceTolerance; }

bool certified(const Pcs<double>& base, const EpsilonTable<double>& base_table,
               const std::vector<Index>& free, const Pcs<double>& cand) {
  if (cand.a_bw() != base.a_bw()) return false;
  for (Index p : pivot_indices(base_table.pivot)) {
    if (cand.a_best(p) != base.a_best(p) || cand.a_worst(p) != base.a_worst(p)) return false;
  }
  const auto table = compute_epsilons(cand);
  if (!(table.pivot == base_table.pivot) || !close(table.eta, base_table.eta)) return false;
  for (Index i : free) {
    if (!close(free_weight_term(cand, table.pivot, table.eta, i),
               free_weight_term(base, base_table.pivot, base_table.eta, i)))
      return false;
  }
  return true;
}

struct Coordinate {
  Index criterion;
  bool best_side;  // a_bi if true, a_iw otherwise
  std::vector<double> grid;
};

std::vector<Coordinate> coordinates(const EquivalenceQuery& q, const std::vector<Index>& free) {
  std::vector<Coordinate> out;
  const auto add = [&](Index i, bool best_side) {
    const double v = best_side ? q.base.a_best(i) : q.base.a_worst(i);
    out.push_back({i, best_side, coordinate_grid(q, v)});
  };
  for (Index i : free) {
    if (q.mode != VaryMode::Worst) add(i, true);
    if (q.mode != VaryMode::Best) add(i, false);
  }
  return out;
}

std::uint64_t grid_size(const std::vector<Coordinate>& cs) {
  std::uint64_t total = 1;
  for (const auto& c : cs) {
    const auto k = static_cast<std::uint64_t>(c.grid.size());
    if (total > std::numeric_limits<std::uint64_t>::max() / k)
      return std::numeric_limits<std::uint64_t>::max();
    total *= k;
  }
  return total;
}

bool lex_less(const Pcs<double>& a, const Pcs<double>& b) {
  const auto lex = [](const Vector<double>& x, const Vector<double>& y) {
    return std::lexicographical_compare(x.data(), x.data() + x.size(), y.data(), y.data() + y.size());
  };
  if (a.best_to_others() != b.best_to_others()) return lex(a.best_to_others(), b.best_to_others());
  return lex(a.others_to_worst(), b.others_to_worst());
}

}  // namespace

std::optional<VaryMode> parse_vary_mode(std::string_view s) {
  if (s == "worst") return VaryMode::Worst;
  if (s == "best") return VaryMode::Best;
  if (s == "both") return VaryMode::Both;
  return std::nullopt;
}

std::vector<Index> free_criteria(const Pcs<double>& pcs, const Pivot& pivot) {
  std::vector<Index> out;
  for (Index i : pcs.intermediate()) {
    if (!pivot.involves(i)) out.push_back(i);
  }
  return out;
}

bool is_equivalent(const Pcs<double>& base, const Pcs<double>& candidate) {
  require_same_structure(base, candidate);
  const auto table = require_inconsistent(base);
  return certified(base, table, free_criteria(base, table.pivot), candidate);
}

std::vector<double> coordinate_grid(const EquivalenceQuery& q, double base_value) {
  // Soft dominance: no intermediate entry exceeds a_bw.
  const double hi = std::min({static_cast<double>(q.scale_max), static_cast<double>(q.base.scale_max()),
                              std::floor(q.base.a_bw())});
  std::vector<double> grid;
  for (int v = 1; v <= static_cast<int>(hi); ++v) grid.push_back(v);
  if (std::find(grid.begin(), grid.end(), base_value) == grid.end()) {
    grid.insert(std::upper_bound(grid.begin(), grid.end(), base_value), base_value);
  }
  return grid;
}

std::uint64_t candidate_count(const EquivalenceQuery& query) {
  const auto table = require_inconsistent(query.base);
  return grid_size(coordinates(query, free_criteria(query.base, table.pivot)));
}

EquivalenceClass enumerate_equivalent(const EquivalenceQuery& query, const EnumerationOptions& options) {
  const Pcs<double>& base = query.base;
  const auto table = require_inconsistent(base);
  const auto free = free_criteria(base, table.pivot);
  if (query.mode == VaryMode::Both && 2 * free.size() > kMaxJointFreeCoordinates) {
    throw Error(ErrorCode::SearchSpaceTooLarge,
                "joint variation has " + std::to_string(2 * free.size()) + " free coordinates (limit " +
                    std::to_string(kMaxJointFreeCoordinates) + ")");
  }
  const auto coords = coordinates(query, free);
  const std::uint64_t total = grid_size(coords);
  if (options.max_candidates != 0 && total > options.max_candidates) {
    throw Error(ErrorCode::SearchSpaceTooLarge,
                std::to_string(total) + " candidates exceed the limit of " +
                    std::to_string(options.max_candidates));
  }

  const AnalyticalSolution<double> base_sol = solve_analytical(base, table);

  struct Found {
    std::vector<Pcs<double>> members, uncertified;
  };
  const auto scan = [&](std::uint64_t begin, std::uint64_t end, Found& out) {
    RawPcs<double> raw = base.raw();
    for (std::uint64_t k = begin; k < end; ++k) {
      std::uint64_t rest = k;
      for (auto c = coords.rbegin(); c != coords.rend(); ++c) {
        const auto size = static_cast<std::uint64_t>(c->grid.size());
        const double v = c->grid[static_cast<std::size_t>(rest % size)];
        rest /= size;
        (c->best_side ? raw.best_to_others : raw.others_to_worst)(c->criterion) = v;
      }
      Pcs<double> cand = validate_pcs(raw).pcs;
      if (certified(base, table, free, cand)) {
        out.members.push_back(std::move(cand));
      } else if (options.diagnose) {
        const auto sol = solve_analytical(cand);
        if (close(sol.epsilon_star, base_sol.epsilon_star) &&
            (sol.weights - base_sol.weights).cwiseAbs().maxCoeff() <= kEquivalenceTolerance)
          out.uncertified.push_back(std::move(cand));
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  if (total < 4096) threads = 1;
  std::vector<Found> parts(threads);
  if (threads == 1) {
    scan(0, total, parts[0]);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t b = std::min(total, t * chunk), e = std::min(total, b + chunk);
      pool.emplace_back(scan, b, e, std::ref(parts[t]));
    }
    for (auto& th : pool) th.join();
  }

  EquivalenceClass out;
  out.mode = query.mode;
  out.candidates = total;
  for (auto& p : parts) {
    std::move(p.members.begin(), p.members.end(), std::back_inserter(out.members));
    std::move(p.uncertified.begin(), p.uncertified.end(), std::back_inserter(out.uncertified));
  }
  std::sort(out.members.begin(), out.members.end(), lex_less);
  std::sort(out.uncertified.begin(), out.uncertified.end(), lex_less);
  out.count = out.members.size();
  return out;
}

}  // namespace bwm
