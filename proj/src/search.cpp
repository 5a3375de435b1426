#include "raidlay/search.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <set>

namespace raidlay {

bool score_less(const CandidateScore& a, const CandidateScore& b) {
  if (a.ft_degree != b.ft_degree) return a.ft_degree > b.ft_degree;
  // Cross-multiplied fraction compare; counts are small enough not to wrap.
  std::uint64_t lhs = a.covered_next * b.total_next;
  std::uint64_t rhs = b.covered_next * a.total_next;
  if (lhs != rhs) return lhs > rhs;
  return a.canonical_key < b.canonical_key;
}

namespace {

CandidateScore score_layout(const Layout& layout, std::string descriptor,
                            std::vector<int> params) {
  CandidateScore score;
  score.descriptor = std::move(descriptor);
  score.params = std::move(params);
  score.ft_degree = ft_degree(layout);
  CoverageReport next = coverage(layout, score.ft_degree + 1);
  score.covered_next = next.recovered;
  score.total_next = next.total;
  score.canonical_key = serialize_layout(layout);
  return score;
}

std::string offsets_descriptor(const char* family, std::span<const int> params) {
  std::string out = family;
  out += "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(params[i]);
  }
  out += ")";
  return out;
}

void require_searchable(int n_disks) {
  if (n_disks < 5)
    throw UnsupportedSize("offset search needs n >= 5, got " + std::to_string(n_disks));
  if (n_disks > kDefaultExactDiskLimit)
    throw UnsupportedSize("offset search scores by exhaustive enumeration; n = " +
                          std::to_string(n_disks) + " exceeds " +
                          std::to_string(kDefaultExactDiskLimit));
}

}  // namespace

std::vector<CandidateScore> search_pp_offsets(int n_disks) {
  require_searchable(n_disks);

  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n_disks; ++a)
    for (int b = a + 1; b < n_disks; ++b) pairs.emplace_back(a, b);

  std::vector<CandidateScore> ranked;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i; j < pairs.size(); ++j) {
      std::vector<int> params = {pairs[i].first, pairs[i].second, pairs[j].first,
                                 pairs[j].second};
      Layout layout = generate_pp(n_disks, params[0], params[1], params[2], params[3]);
      ranked.push_back(score_layout(layout, offsets_descriptor("PP", params), params));
    }
  }
  std::sort(ranked.begin(), ranked.end(), score_less);
  return ranked;
}

std::vector<CandidateScore> search_rp_offsets(int n_disks) {
  require_searchable(n_disks);

  std::vector<CandidateScore> ranked;
  for (int rho = 1; rho < n_disks; ++rho) {
    for (int a = 0; a < n_disks; ++a) {
      for (int b = a + 1; b < n_disks; ++b) {
        std::vector<int> params = {rho, a, b};
        Layout layout = generate_rp(n_disks, rho, a, b);
        ranked.push_back(score_layout(layout, offsets_descriptor("RP", params), params));
      }
    }
  }
  std::sort(ranked.begin(), ranked.end(), score_less);
  return ranked;
}

namespace {

constexpr int kRepDisks = 5;
constexpr int kRepCopies = 3;

using CountMatrix = std::array<std::array<std::uint8_t, kRepDisks>, kRepDisks>;

// Fault-tolerance score from per-disk support masks: an alive set recovers
// everything iff the union of its supports is the full block set.
struct RepScore {
  int degree;
  int covered_next;
  int total_next;
  int pair_covered;
  bool full_pairs;
};

RepScore score_supports(const std::array<std::uint8_t, kRepDisks>& supports) {
  const int full = (1 << kRepDisks) - 1;
  bool ok[1 << kRepDisks];
  for (int mask = 0; mask < (1 << kRepDisks); ++mask) {
    int u = 0;
    for (int d = 0; d < kRepDisks; ++d)
      if ((mask >> d) & 1) u |= supports[d];
    ok[mask] = u == full;
  }

  int covered[kRepDisks + 1] = {};
  int total[kRepDisks + 1] = {};
  for (int mask = 0; mask < (1 << kRepDisks); ++mask) {
    int f = kRepDisks - std::popcount(static_cast<unsigned>(mask));
    ++total[f];
    if (ok[mask]) ++covered[f];
  }

  RepScore score{};
  score.degree = -1;
  for (int f = 0; f <= kRepDisks; ++f) {
    if (covered[f] != total[f]) break;
    score.degree = f;
  }
  int next = score.degree + 1;
  score.covered_next = covered[next];
  score.total_next = total[next];
  score.pair_covered = covered[3];
  score.full_pairs = covered[3] == total[3];
  return score;
}

// Lexicographically smallest matrix over all row permutations, with columns
// sorted per row order. Canonical under disk and block relabeling.
CountMatrix canonical_matrix(const CountMatrix& m) {
  std::array<int, kRepDisks> perm = {0, 1, 2, 3, 4};
  CountMatrix best{};
  bool have = false;
  do {
    std::array<std::array<std::uint8_t, kRepDisks>, kRepDisks> cols{};
    for (int c = 0; c < kRepDisks; ++c)
      for (int r = 0; r < kRepDisks; ++r) cols[c][r] = m[perm[r]][c];
    std::sort(cols.begin(), cols.end());
    CountMatrix candidate{};
    for (int r = 0; r < kRepDisks; ++r)
      for (int c = 0; c < kRepDisks; ++c) candidate[r][c] = cols[c][r];
    if (!have || candidate < best) {
      best = candidate;
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Layout matrix_to_layout(const CountMatrix& m, std::string name) {
  Layout layout;
  layout.name = std::move(name);
  layout.n_disks = kRepDisks;
  layout.n_blocks = kRepDisks;
  layout.grid.resize(kRepDisks);
  for (int d = 0; d < kRepDisks; ++d)
    for (int b = 0; b < kRepDisks; ++b)
      for (int copy = 0; copy < m[d][b]; ++copy) layout.grid[d].push_back(Cell::single(b));
  layout.validate();
  return layout;
}

std::string matrix_descriptor(const CountMatrix& m) {
  std::string out = "copies=";
  for (int d = 0; d < kRepDisks; ++d) {
    if (d) out += "|";
    for (int b = 0; b < kRepDisks; ++b) out += static_cast<char>('0' + m[d][b]);
  }
  return out;
}

}  // namespace

ReplicationSearchResult search_replication_placements(int n_disks) {
  if (n_disks != 5)
    throw UnsupportedSize("balanced replication placements are enumerated exhaustively only at "
                          "n = 5, got " + std::to_string(n_disks));

  // All ways one disk's 3 cells can be split over the 5 blocks.
  std::vector<std::array<std::uint8_t, kRepDisks>> rows;
  for (int b0 = 0; b0 <= kRepCopies; ++b0)
    for (int b1 = 0; b0 + b1 <= kRepCopies; ++b1)
      for (int b2 = 0; b0 + b1 + b2 <= kRepCopies; ++b2)
        for (int b3 = 0; b0 + b1 + b2 + b3 <= kRepCopies; ++b3) {
          int b4 = kRepCopies - b0 - b1 - b2 - b3;
          rows.push_back({static_cast<std::uint8_t>(b0), static_cast<std::uint8_t>(b1),
                          static_cast<std::uint8_t>(b2), static_cast<std::uint8_t>(b3),
                          static_cast<std::uint8_t>(b4)});
        }

  ReplicationSearchResult result;
  result.pair_total = choose(kRepDisks, 2);
  result.max_degree = -1;

  int best_degree = -1;
  int best_covered = -1;
  std::vector<CountMatrix> best_matrices;

  CountMatrix m{};
  std::array<std::uint8_t, kRepDisks> supports{};
  std::array<int, kRepDisks> col_budget;
  col_budget.fill(kRepCopies);

  auto place_disk = [&](auto&& self, int disk) -> void {
    if (disk == kRepDisks) {
      ++result.candidates_examined;
      RepScore score = score_supports(supports);
      result.max_degree = std::max(result.max_degree, score.degree);
      result.max_pair_covered =
          std::max(result.max_pair_covered, static_cast<std::uint64_t>(score.pair_covered));
      if (score.full_pairs) result.full_pair_coverage_exists = true;

      // Compare (degree, coverage at degree+1); totals match within a degree.
      bool better = score.degree > best_degree ||
                    (score.degree == best_degree && score.covered_next > best_covered);
      if (better) {
        best_degree = score.degree;
        best_covered = score.covered_next;
        best_matrices.clear();
      }
      if (score.degree == best_degree && score.covered_next == best_covered)
        best_matrices.push_back(m);
      return;
    }
    for (const auto& row : rows) {
      bool fits = true;
      for (int b = 0; b < kRepDisks; ++b)
        if (row[b] > col_budget[b]) {
          fits = false;
          break;
        }
      if (!fits) continue;
      int supp = 0;
      for (int b = 0; b < kRepDisks; ++b) {
        col_budget[b] -= row[b];
        if (row[b]) supp |= 1 << b;
      }
      m[disk] = row;
      supports[disk] = static_cast<std::uint8_t>(supp);
      self(self, disk + 1);
      for (int b = 0; b < kRepDisks; ++b) col_budget[b] += row[b];
    }
  };
  place_disk(place_disk, 0);

  result.best_count_labeled = best_matrices.size();
  // Ties resolve by ascending canonical serialization of the class.
  std::map<std::string, CountMatrix> classes;
  for (const CountMatrix& cand : best_matrices) {
    CountMatrix canon = canonical_matrix(cand);
    classes.emplace(serialize_layout(matrix_to_layout(canon, "REP")), canon);
  }
  result.best_count_classes = classes.size();

  const CountMatrix& canonical = classes.begin()->second;
  result.best_layout = matrix_to_layout(canonical, "REP");
  result.best.descriptor = matrix_descriptor(canonical);
  result.best.ft_degree = best_degree;
  result.best.covered_next = static_cast<std::uint64_t>(best_covered);
  result.best.total_next = choose(kRepDisks, best_degree + 1);
  result.best.canonical_key = serialize_layout(result.best_layout);
  return result;
}

}  // namespace raidlay
