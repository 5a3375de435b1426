#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "raidlay/layout.hpp"

namespace raidlay {

// The set of disks that survived a failure scenario, as a bitmask.
class AliveSet {
public:
  AliveSet() = default;

  static AliveSet from_bits(std::uint64_t bits) { return AliveSet(bits); }
  static AliveSet of(std::initializer_list<int> disks);
  static AliveSet from_indices(std::span<const int> disks);
  static AliveSet all(int n_disks);

  std::uint64_t bits() const { return bits_; }
  bool contains(int disk) const { return (bits_ >> disk) & 1u; }
  int count() const;
  bool subset_of(const AliveSet& other) const { return (bits_ & ~other.bits_) == 0; }
  std::vector<int> indices() const;

  AliveSet with(int disk) const;
  AliveSet complement(int n_disks) const;

  friend bool operator==(const AliveSet&, const AliveSet&) = default;

private:
  explicit AliveSet(std::uint64_t bits) : bits_(bits) {}
  std::uint64_t bits_ = 0;
};

struct PlanStep {
  int disk = 0;
  int row = 0;
  Cell cell = Cell::single(0);

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

// XOR recipe for one block: the step cells' member sets XOR (symmetric
// difference) to the singleton {target}.
struct RecoveryPlan {
  int target = 0;
  std::vector<PlanStep> steps;
};

// Exactly the blocks whose unit vector lies in the GF(2) span of the cells
// stored on alive disks. Empty alive set yields the empty mask.
BlockMask recoverable_blocks(const Layout& layout, AliveSet alive);

// True iff every block of the layout is recoverable from `alive`.
bool is_fully_recoverable(const Layout& layout, AliveSet alive);

// Explicit XOR plan for one block, extracted from the elimination record.
// Cells are eliminated in (disk, row) order, so plans are reproducible; steps
// are arranged to chain from a singleton when the plan allows it. Throws
// NotRecoverable when the target is not in the alive span.
RecoveryPlan recovery_plan(const Layout& layout, AliveSet alive, int target_block);

}  // namespace raidlay
