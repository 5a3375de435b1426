#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "raidlay/ft_analysis.hpp"
#include "raidlay/layout.hpp"

namespace raidlay {

// Independent identical disks with exponential lifetimes.
struct DiskModel {
  double failure_rate_per_hour = 1e-4;

  // Per-disk survival probability at mission time t (hours).
  double survival(double t_hours) const;
};

// k-out-of-n system reliability: sum_{j=k..n} C(n,j) p^j (1-p)^(n-j).
// k <= 0 yields 1. Throws InvalidKooN when k > n.
double koon_reliability(int k_min_working, int n_total, double p);

// recoverable_counts[j] = number of alive sets of size j from which the
// decoder recovers everything; the coefficients of the reliability
// polynomial. Throws TooLargeForExact above the disk guard.
std::vector<std::uint64_t> recoverable_counts_by_alive(
    const Layout& layout, int max_exact_disks = kDefaultExactDiskLimit);

// Exact system reliability of the structure function induced by the decoder:
// sum over all recoverable alive sets S of p^|S| (1-p)^(n-|S|).
double exact_reliability(const Layout& layout, double p,
                         int max_exact_disks = kDefaultExactDiskLimit);

// Parallel-of-series formula R = 1 - prod_i (1 - prod_j rho_ij), evaluated
// literally. Exact only when paths share no components; with shared disks it
// overestimates, so exact_reliability is the ground truth.
double naive_parallel_series(const std::vector<std::vector<double>>& paths);

struct CurveMode {
  enum class Kind { Exact, Koon };
  Kind kind = Kind::Exact;
  int k = 0;  // used by Koon only

  static CurveMode exact() { return {Kind::Exact, 0}; }
  static CurveMode koon(int k) { return {Kind::Koon, k}; }
  std::string label() const;
};

struct ReliabilityCurve {
  std::string layout_name;
  std::string mode;
  std::vector<double> t_hours;
  std::vector<double> values;
};

// System reliability over a mission-time grid, at p(t) = exp(-lambda t).
// The grid must be ascending and nonnegative (InvalidTime otherwise).
ReliabilityCurve reliability_curve(const Layout& layout, const DiskModel& model,
                                   std::span<const double> t_grid, CurveMode mode,
                                   int max_exact_disks = kDefaultExactDiskLimit);

struct MonteCarloResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

// Each trial draws n independent survival bits with probability p and judges
// the alive set with the decoder. The RNG is a counter-based stream derived
// from the seed, so identical (layout, p, trials, seed) reproduce identical
// results. Throws InvalidTrials when trials is zero.
MonteCarloResult monte_carlo_reliability(const Layout& layout, double p, std::uint64_t trials,
                                         std::uint64_t seed);

}  // namespace raidlay
