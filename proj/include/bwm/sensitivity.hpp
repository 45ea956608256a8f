#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "bwm/epsilon.hpp"
#include "bwm/pcs.hpp"

namespace bwm {

enum class VaryMode { Worst, Best, Both };

constexpr std::string_view to_string(VaryMode m) noexcept {
  switch (m) {
    case VaryMode::Worst: return "worst";
    case VaryMode::Best: return "best";
    case VaryMode::Both: return "both";
  }
  return "?";
}

std::optional<VaryMode> parse_vary_mode(std::string_view s);

struct EquivalenceQuery {
  Pcs<double> base;
  VaryMode mode = VaryMode::Worst;
  int scale_max = kSaatyScaleMax;
};

struct EnumerationOptions {
  /// Also re-solve rejected candidates and report those with identical
  /// weights and eps* in `uncertified`.
  bool diagnose = false;
  /// Refuse with SearchSpaceTooLarge above this many candidates; 0 = no cap.
  std::uint64_t max_candidates = 0;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct EquivalenceClass {
  std::vector<Pcs<double>> members;  // lexicographic in (A_b, A_w)
  std::size_t count = 0;
  VaryMode mode = VaryMode::Worst;
  std::uint64_t candidates = 0;
  std::vector<Pcs<double>> uncertified;
};

inline constexpr double kEquivalenceTolerance = 1e-9;
inline constexpr std::size_t kMaxJointFreeCoordinates = 10;

/// Non-pivot intermediate criteria of `pcs`, ascending.
std::vector<Index> free_criteria(const Pcs<double>& pcs, const Pivot& pivot);

/// True if `candidate` is certified to share the base optimum: same pivot
/// entries, same eta and pivot, same free-weight terms.
bool is_equivalent(const Pcs<double>& base, const Pcs<double>& candidate);

/// Integer values scanned for one free coordinate whose base value is `base_value`.
std::vector<double> coordinate_grid(const EquivalenceQuery& query, double base_value);

/// Size of the candidate grid without enumerating it. Saturates at UINT64_MAX.
std::uint64_t candidate_count(const EquivalenceQuery& query);

EquivalenceClass enumerate_equivalent(const EquivalenceQuery& query,
                                      const EnumerationOptions& options = {});

}  // namespace bwm
