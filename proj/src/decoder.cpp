#include "raidlay/decoder.hpp"

#include <algorithm>
#include <bit>

namespace raidlay {

AliveSet AliveSet::of(std::initializer_list<int> disks) {
  std::uint64_t bits = 0;
  for (int d : disks) bits |= std::uint64_t{1} << d;
  return AliveSet(bits);
}

AliveSet AliveSet::from_indices(std::span<const int> disks) {
  std::uint64_t bits = 0;
  for (int d : disks) bits |= std::uint64_t{1} << d;
  return AliveSet(bits);
}

AliveSet AliveSet::all(int n_disks) {
  return AliveSet(n_disks >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_disks) - 1);
}

int AliveSet::count() const { return std::popcount(bits_); }

std::vector<int> AliveSet::indices() const {
  std::vector<int> out;
  std::uint64_t v = bits_;
  while (v) {
    out.push_back(std::countr_zero(v));
    v &= v - 1;
  }
  return out;
}

AliveSet AliveSet::with(int disk) const { return AliveSet(bits_ | (std::uint64_t{1} << disk)); }

AliveSet AliveSet::complement(int n_disks) const {
  return AliveSet(~bits_ & AliveSet::all(n_disks).bits());
}

namespace {

struct AliveCell {
  int disk;
  int row;
  BlockMask mask;
};

std::vector<AliveCell> alive_cells(const Layout& layout, AliveSet alive) {
  std::vector<AliveCell> cells;
  for (int d = 0; d < layout.n_disks; ++d) {
    if (!alive.contains(d)) continue;
    for (int r = 0; r < static_cast<int>(layout.grid[d].size()); ++r)
      cells.push_back({d, r, layout.grid[d][r].mask()});
  }
  return cells;
}

// XOR basis keyed by lowest set bit. basis[b] has lowest bit b, or 0 if empty.
struct XorBasis {
  BlockMask rows[kMaxBlocks] = {};

  // Reduces v; returns the residual (0 means v is in the span).
  BlockMask reduce(BlockMask v) const {
    while (v) {
      int b = std::countr_zero(v);
      if (!rows[b]) break;
      v ^= rows[b];
    }
    return v;
  }

  // Inserts v if independent; returns true when the rank grew.
  bool insert(BlockMask v) {
    v = reduce(v);
    if (!v) return false;
    rows[std::countr_zero(v)] = v;
    return true;
  }
};

// Per-basis-row record of which original cells were XORed together.
struct TrackedBasis {
  std::vector<BlockMask> vecs;
  std::vector<std::vector<std::uint64_t>> combos;  // bit i = original cell i
  int slot[kMaxBlocks];
  std::size_t combo_words;

  explicit TrackedBasis(std::size_t n_cells) : combo_words((n_cells + 63) / 64) {
    std::fill(std::begin(slot), std::end(slot), -1);
  }

  static void xor_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
  }

  // Reduces (v, combo) in place until v is zero or hits an empty slot.
  void reduce(BlockMask& v, std::vector<std::uint64_t>& combo) const {
    while (v) {
      int b = std::countr_zero(v);
      if (slot[b] < 0) break;
      v ^= vecs[slot[b]];
      xor_into(combo, combos[slot[b]]);
    }
  }

  void insert_cell(BlockMask v, std::size_t cell_index) {
    std::vector<std::uint64_t> combo(combo_words, 0);
    combo[cell_index / 64] |= std::uint64_t{1} << (cell_index % 64);
    reduce(v, combo);
    if (!v) return;  // dependent cell
    slot[std::countr_zero(v)] = static_cast<int>(vecs.size());
    vecs.push_back(v);
    combos.push_back(std::move(combo));
  }
};

}  // namespace

BlockMask recoverable_blocks(const Layout& layout, AliveSet alive) {
  XorBasis basis;
  for (const AliveCell& cell : alive_cells(layout, alive)) basis.insert(cell.mask);
  BlockMask recoverable = 0;
  for (int b = 0; b < layout.n_blocks; ++b)
    if (basis.reduce(BlockMask{1} << b) == 0) recoverable |= BlockMask{1} << b;
  return recoverable;
}

bool is_fully_recoverable(const Layout& layout, AliveSet alive) {
  // Span equals the whole block space iff the rank reaches n_blocks.
  XorBasis basis;
  int rank = 0;
  for (const AliveCell& cell : alive_cells(layout, alive)) {
    if (basis.insert(cell.mask) && ++rank == layout.n_blocks) return true;
  }
  return false;
}

RecoveryPlan recovery_plan(const Layout& layout, AliveSet alive, int target_block) {
  if (target_block < 0 || target_block >= layout.n_blocks)
    throw IndexOutOfRange("target block " + std::to_string(target_block) + " outside [0, " +
                          std::to_string(layout.n_blocks) + ")");

  std::vector<AliveCell> cells = alive_cells(layout, alive);
  TrackedBasis basis(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) basis.insert_cell(cells[i].mask, i);

  BlockMask v = BlockMask{1} << target_block;
  std::vector<std::uint64_t> combo(basis.combo_words, 0);
  basis.reduce(v, combo);
  if (v)
    throw NotRecoverable("block " + std::to_string(target_block) +
                         " is not recoverable from the alive set");

  std::vector<PlanStep> steps;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if ((combo[i / 64] >> (i % 64)) & 1u)
      steps.push_back({cells[i].disk, cells[i].row, layout.grid[cells[i].disk][cells[i].row]});
  }

  // Narrate the plan as an XOR chain: repeatedly take the step that keeps the
  // running XOR smallest, starting from a singleton when the plan has one.
  std::vector<PlanStep> ordered;
  ordered.reserve(steps.size());
  BlockMask running = 0;
  while (!steps.empty()) {
    std::size_t best = 0;
    int best_size = kMaxBlocks + 1;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      int size = std::popcount(running ^ steps[i].cell.mask());
      if (size < best_size) {
        best_size = size;
        best = i;
      }
    }
    running ^= steps[best].cell.mask();
    ordered.push_back(steps[best]);
    steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(best));
  }

  return RecoveryPlan{target_block, std::move(ordered)};
}

}  // namespace raidlay
