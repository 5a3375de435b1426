#include "raidlay/reliability.hpp"

#include <bit>
#include <cmath>

namespace raidlay {

double DiskModel::survival(double t_hours) const {
  if (failure_rate_per_hour < 0)
    throw Error("failure rate must be nonnegative, got " + std::to_string(failure_rate_per_hour));
  if (t_hours < 0) throw InvalidTime("mission time must be nonnegative");
  return std::exp(-failure_rate_per_hour * t_hours);
}

namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw Error("per-disk reliability must be in [0, 1], got " + std::to_string(p));
}

}  // namespace

double koon_reliability(int k_min_working, int n_total, double p) {
  if (n_total < 0) throw InvalidKooN("n must be nonnegative");
  if (k_min_working > n_total)
    throw InvalidKooN("k = " + std::to_string(k_min_working) + " exceeds n = " +
                      std::to_string(n_total));
  check_probability(p);
  if (k_min_working <= 0) return 1.0;

  const double q = 1.0 - p;
  double sum = 0.0;
  for (int j = k_min_working; j <= n_total; ++j) {
    double term = std::pow(p, j) * std::pow(q, n_total - j);
    // C(n, j) accumulated multiplicatively to stay exact in double for the
    // sizes the exhaustive guard allows.
    double binom = 1.0;
    for (int i = 1; i <= j; ++i) binom = binom * (n_total - j + i) / i;
    sum += binom * term;
  }
  return std::min(sum, 1.0);
}

std::vector<std::uint64_t> recoverable_counts_by_alive(const Layout& layout,
                                                       int max_exact_disks) {
  layout.validate();
  if (layout.n_disks > max_exact_disks)
    throw TooLargeForExact("exact enumeration refused for n = " + std::to_string(layout.n_disks) +
                           " > " + std::to_string(max_exact_disks) +
                           " disks; use Monte Carlo instead");

  const int n = layout.n_disks;
  std::vector<std::uint64_t> counts(n + 1, 0);
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    if (is_fully_recoverable(layout, AliveSet::from_bits(mask)))
      ++counts[std::popcount(mask)];
  }
  return counts;
}

namespace {

double polynomial_reliability(const std::vector<std::uint64_t>& counts, double p) {
  const int n = static_cast<int>(counts.size()) - 1;
  const double q = 1.0 - p;
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    if (counts[j] == 0) continue;
    sum += static_cast<double>(counts[j]) * std::pow(p, j) * std::pow(q, n - j);
  }
  return std::min(sum, 1.0);
}

}  // namespace

double exact_reliability(const Layout& layout, double p, int max_exact_disks) {
  check_probability(p);
  return polynomial_reliability(recoverable_counts_by_alive(layout, max_exact_disks), p);
}

double naive_parallel_series(const std::vector<std::vector<double>>& paths) {
  if (paths.empty()) throw InvalidStructure("no parallel paths");
  double product_of_failures = 1.0;
  for (const auto& path : paths) {
    if (path.empty()) throw InvalidStructure("a path with no components");
    double path_reliability = 1.0;
    for (double rho : path) {
      if (!(rho >= 0.0 && rho <= 1.0))
        throw InvalidStructure("component reliability outside [0, 1]: " + std::to_string(rho));
      path_reliability *= rho;
    }
    product_of_failures *= 1.0 - path_reliability;
  }
  return 1.0 - product_of_failures;
}

std::string CurveMode::label() const {
  switch (kind) {
    case Kind::Exact: return "exact";
    case Kind::Koon: return "koon:" + std::to_string(k);
  }
  return "?";
}

ReliabilityCurve reliability_curve(const Layout& layout, const DiskModel& model,
                                   std::span<const double> t_grid, CurveMode mode,
                                   int max_exact_disks) {
  layout.validate();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0) throw InvalidTime("mission time must be nonnegative");
    if (i > 0 && t_grid[i] <= t_grid[i - 1]) throw InvalidTime("time grid must be ascending");
  }
  if (mode.kind == CurveMode::Kind::Koon && mode.k > layout.n_disks)
    throw InvalidKooN("koon k = " + std::to_string(mode.k) + " exceeds n = " +
                      std::to_string(layout.n_disks));

  ReliabilityCurve curve;
  curve.layout_name = layout.name;
  curve.mode = mode.label();
  curve.t_hours.assign(t_grid.begin(), t_grid.end());
  curve.values.reserve(t_grid.size());

  std::vector<std::uint64_t> counts;
  if (mode.kind == CurveMode::Kind::Exact)
    counts = recoverable_counts_by_alive(layout, max_exact_disks);

  for (double t : t_grid) {
    const double p = model.survival(t);
    curve.values.push_back(mode.kind == CurveMode::Kind::Exact
                               ? polynomial_reliability(counts, p)
                               : koon_reliability(mode.k, layout.n_disks, p));
  }
  return curve;
}

namespace {

// splitmix64: the counter-based stream behind Monte Carlo draws.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = mix64(seed + (counter + 1) * 0x9e3779b97f4a7c15ULL);
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace

MonteCarloResult monte_carlo_reliability(const Layout& layout, double p, std::uint64_t trials,
                                         std::uint64_t seed) {
  layout.validate();
  check_probability(p);
  if (trials == 0) throw InvalidTrials("trials must be at least 1");

  const int n = layout.n_disks;
  std::uint64_t successes = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::uint64_t alive_bits = 0;
    for (int d = 0; d < n; ++d) {
      if (uniform01(seed, trial * static_cast<std::uint64_t>(n) + d) < p)
        alive_bits |= std::uint64_t{1} << d;
    }
    if (is_fully_recoverable(layout, AliveSet::from_bits(alive_bits))) ++successes;
  }

  MonteCarloResult result;
  result.trials = trials;
  result.seed = seed;
  result.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  result.std_error =
      std::sqrt(result.estimate * (1.0 - result.estimate) / static_cast<double>(trials));
  return result;
}

}  // namespace raidlay
