#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "raidlay/errors.hpp"

namespace raidlay {

// Block member sets are kept as bitmasks, one bit per block index.
using BlockMask = std::uint64_t;

inline constexpr int kMaxBlocks = 64;
inline constexpr int kMaxDisks = 64;

// Ascending list of the bit indices set in `mask`.
std::vector<int> mask_members(BlockMask mask);

// One stored cell: a nonempty set of block indices. A singleton is a stored
// copy of that block; two or more members denote the XOR of those blocks.
class Cell {
public:
  static Cell single(int block);
  static Cell parity(int a, int b);
  static Cell from_members(std::span<const int> blocks);

  BlockMask mask() const { return mask_; }
  int size() const;
  bool is_singleton() const { return size() == 1; }
  bool contains(int block) const { return (mask_ >> block) & 1u; }
  std::vector<int> members() const { return mask_members(mask_); }

  friend bool operator==(const Cell&, const Cell&) = default;

private:
  explicit Cell(BlockMask mask) : mask_(mask) {}
  BlockMask mask_ = 0;
};

// A stripe layout: for each disk, the ordered list of cells it stores.
struct Layout {
  std::string name;
  int n_disks = 0;
  int n_blocks = 0;
  std::vector<std::vector<Cell>> grid;

  // Throws Error if any structural invariant is broken (grid shape, block
  // indices within range, nonempty dimensions).
  void validate() const;

  BlockMask all_blocks_mask() const;
  int total_cells() const;

  friend bool operator==(const Layout&, const Layout&) = default;
};

enum class Scheme { RR, PP1, PP2, RP1, RP2 };

Scheme scheme_from_name(std::string_view name);
std::string_view scheme_name(Scheme scheme);

// The five figure layouts, generalized to any n >= 5 by rotating the offset
// pattern modulo n. Row patterns per disk d:
//   RR:  [{d}, {d-1}, {d-2}]
//   PP1: [{d}, {d+1, d+2}, {d+3, d+4}]
//   PP2: [{d}, {d, d+2}, {d+3, d+4}]
//   RP1: [{d}, {d-1}, {d, d+2}]
//   RP2: [{d}, {d-1}, {d+1, d+2}]
Layout generate_named(Scheme scheme, int n_disks);

// Parity-parity layout with free rotation offsets:
// disk d rows [{d}, {d+a1, d+b1}, {d+a2, d+b2}] (mod n).
// generate_pp(n,1,2,3,4) == generate_named(PP1,n); (n,0,2,3,4) == PP2.
Layout generate_pp(int n_disks, int a1, int b1, int a2, int b2);

// Replica-parity layout: disk d rows [{d}, {d-replica_offset}, {d+a, d+b}].
// generate_rp(n,1,0,2) == generate_named(RP1,n); (n,1,1,2) == RP2.
Layout generate_rp(int n_disks, int replica_offset, int a, int b);

// Parses a layout document (see serialize_layout for the grammar). Non-fatal
// oddities (a block never stored as a singleton, or not stored at all) are
// appended to `warnings` when given.
Layout parse_layout(std::string_view text, std::vector<std::string>* warnings = nullptr);

// Canonical text form, byte-deterministic:
//
//   name = <identifier>
//   disks = <n>
//   blocks = <k>
//   disk <d>: <cell> (, <cell>)*
//
// with disks ascending, rows in stored order, cell members ascending.
// Cells print as B<i> or X(<i>,<j>[,...]). '#' starts a comment.
std::string serialize_layout(const Layout& layout);

}  // namespace raidlay
