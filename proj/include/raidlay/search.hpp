#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "raidlay/ft_analysis.hpp"
#include "raidlay/layout.hpp"

namespace raidlay {

// Score of one candidate layout, ranked by fault-tolerance degree
// (descending), then coverage at degree+1 failures (descending), then
// canonical serialization (ascending).
struct CandidateScore {
  std::string descriptor;
  std::vector<int> params;  // the generator offsets, when the family has them
  int ft_degree = 0;
  std::uint64_t covered_next = 0;  // coverage at ft_degree + 1 failures
  std::uint64_t total_next = 0;
  std::string canonical_key;

  double coverage_fraction() const {
    return total_next ? static_cast<double>(covered_next) / total_next : 1.0;
  }
};

bool score_less(const CandidateScore& a, const CandidateScore& b);

// Exhaustive ranking of all PP offset tuples (a1,b1,a2,b2) mod n with
// a1 != b1 and a2 != b2, deduplicated under member order and the
// row-2/row-3 swap. Throws UnsupportedSize below n = 5.
std::vector<CandidateScore> search_pp_offsets(int n_disks);

// Exhaustive ranking of all RP tuples (rho, a, b) mod n with rho != 0 and
// a != b, deduplicated under parity member order.
std::vector<CandidateScore> search_rp_offsets(int n_disks);

struct ReplicationSearchResult {
  CandidateScore best;      // canonical representative of the top class
  Layout best_layout;       // the same placement as a Layout
  int max_degree = 0;       // over the whole balanced family
  std::uint64_t max_pair_covered = 0;  // best coverage at 3 failures
  std::uint64_t pair_total = 0;
  std::uint64_t candidates_examined = 0;
  std::uint64_t best_count_labeled = 0;   // placements achieving the top score
  std::uint64_t best_count_classes = 0;   // ... up to disk/block relabeling
  bool full_pair_coverage_exists = false;
};

// Exhausts every balanced replication-only placement at n = 5 (three
// singleton copies of each block, three cells per disk, repeats allowed) and
// certifies the family-wide maxima. Only n = 5 is enumerable; anything else
// throws UnsupportedSize.
ReplicationSearchResult search_replication_placements(int n_disks);

}  // namespace raidlay
