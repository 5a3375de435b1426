#include <doctest.h>

#include <random>

#include "raidlay/decoder.hpp"
#include "test_support.hpp"

using namespace raidlay;
using raidlay::testing::random_alive;
using raidlay::testing::random_small_layout;
using raidlay::testing::subset_xor_oracle;

namespace {

BlockMask mask_of(std::initializer_list<int> blocks) {
  BlockMask m = 0;
  for (int b : blocks) m |= BlockMask{1} << b;
  return m;
}

// Replays a plan on concrete contents: cell payload = XOR of member payloads.
std::uint64_t replay(const RecoveryPlan& plan, const std::vector<std::uint64_t>& contents) {
  std::uint64_t acc = 0;
  for (const PlanStep& step : plan.steps)
    for (int b : step.cell.members()) acc ^= contents[b];
  return acc;
}

}  // namespace

TEST_SUITE("decoder") {

TEST_CASE("the walked-through failure scenarios") {
  Layout rr = generate_named(Scheme::RR, 5);
  Layout pp1 = generate_named(Scheme::PP1, 5);
  Layout rp1 = generate_named(Scheme::RP1, 5);

  // RR with only D0, D1 alive: B2 is gone.
  CHECK(recoverable_blocks(rr, AliveSet::of({0, 1})) == mask_of({0, 1, 3, 4}));
  CHECK_FALSE(is_fully_recoverable(rr, AliveSet::of({0, 1})));

  // PP1 with only D0, D1 alive: chaining recovers everything.
  CHECK(recoverable_blocks(pp1, AliveSet::of({0, 1})) == mask_of({0, 1, 2, 3, 4}));
  CHECK(is_fully_recoverable(pp1, AliveSet::of({0, 1})));

  // RP1 with D0, D2 alive loses exactly block 3.
  CHECK(recoverable_blocks(rp1, AliveSet::of({0, 2})) == mask_of({0, 1, 2, 4}));

  CHECK(is_fully_recoverable(rr, AliveSet::of({0, 2})));
  CHECK_FALSE(is_fully_recoverable(pp1, AliveSet::of({0, 2})));
  CHECK(is_fully_recoverable(generate_named(Scheme::PP2, 5), AliveSet::of({3, 4})));
}

TEST_CASE("degenerate alive sets") {
  Layout pp2 = generate_named(Scheme::PP2, 5);
  CHECK(recoverable_blocks(pp2, AliveSet{}) == 0);
  CHECK_FALSE(is_fully_recoverable(pp2, AliveSet{}));
  for (Scheme s : {Scheme::RR, Scheme::PP1, Scheme::PP2, Scheme::RP1, Scheme::RP2}) {
    Layout layout = generate_named(s, 5);
    CHECK(recoverable_blocks(layout, AliveSet::all(5)) == layout.all_blocks_mask());
  }
}

TEST_CASE("monotone in the alive set") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    Layout layout = random_small_layout(rng);
    AliveSet small = random_alive(rng, layout.n_disks);
    AliveSet big = AliveSet::from_bits(small.bits() | random_alive(rng, layout.n_disks).bits());
    BlockMask from_small = recoverable_blocks(layout, small);
    BlockMask from_big = recoverable_blocks(layout, big);
    CAPTURE(serialize_layout(layout));
    CHECK((from_small & ~from_big) == 0);
  }
}

TEST_CASE("matches the all-subset-XOR oracle") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Layout layout = random_small_layout(rng);
    AliveSet alive = random_alive(rng, layout.n_disks);
    CAPTURE(serialize_layout(layout));
    CAPTURE(alive.bits());
    CHECK(recoverable_blocks(layout, alive) == subset_xor_oracle(layout, alive));
  }
}

TEST_CASE("recovery plan for the narrated chain") {
  Layout pp1 = generate_named(Scheme::PP1, 5);
  RecoveryPlan plan = recovery_plan(pp1, AliveSet::of({0, 1}), 3);
  REQUIRE(plan.steps.size() == 3);
  CHECK(plan.steps[0] == PlanStep{1, 0, Cell::single(1)});
  CHECK(plan.steps[1] == PlanStep{0, 1, Cell::parity(1, 2)});
  CHECK(plan.steps[2] == PlanStep{1, 1, Cell::parity(2, 3)});

  BlockMask sym_diff = 0;
  for (const PlanStep& step : plan.steps) sym_diff ^= step.cell.mask();
  CHECK(sym_diff == mask_of({3}));
}

TEST_CASE("a stored replica is a one-step plan") {
  Layout rr = generate_named(Scheme::RR, 5);
  RecoveryPlan plan = recovery_plan(rr, AliveSet::of({0, 2}), 1);
  REQUIRE(plan.steps.size() == 1);
  CHECK(plan.steps[0] == PlanStep{2, 1, Cell::single(1)});
}

TEST_CASE("unreachable targets throw") {
  Layout rr = generate_named(Scheme::RR, 5);
  CHECK_THROWS_AS(recovery_plan(rr, AliveSet::of({0, 1}), 2), NotRecoverable);
  CHECK_THROWS_AS(recovery_plan(rr, AliveSet::of({0, 1}), 7), IndexOutOfRange);
}

TEST_CASE("plans replay correctly on random contents") {
  std::mt19937_64 rng(13);
  int replayed = 0;
  while (replayed < 1000) {
    Layout layout = random_small_layout(rng);
    AliveSet alive = random_alive(rng, layout.n_disks);
    BlockMask recoverable = recoverable_blocks(layout, alive);
    if (!recoverable) continue;

    std::vector<std::uint64_t> contents(layout.n_blocks);
    for (auto& word : contents) word = rng();

    for (int target : mask_members(recoverable)) {
      RecoveryPlan plan = recovery_plan(layout, alive, target);
      for (const PlanStep& step : plan.steps) {
        CHECK(alive.contains(step.disk));
        CHECK(layout.grid[step.disk][step.row] == step.cell);
      }
      CAPTURE(serialize_layout(layout));
      CHECK(replay(plan, contents) == contents[target]);
      ++replayed;
    }
  }
}

TEST_CASE("verdicts depend only on member sets, not contents") {
  // Same member structure under a different block labeling decodes the
  // relabeled set; contents never enter the decoder at all.
  Layout layout = parse_layout("name = A\ndisks = 2\nblocks = 4\n"
                               "disk 0: B0, X(0,1)\ndisk 1: B2, X(2,3)\n");
  CHECK(recoverable_blocks(layout, AliveSet::of({0})) == mask_of({0, 1}));
  CHECK(recoverable_blocks(layout, AliveSet::of({1})) == mask_of({2, 3}));
}

}  // TEST_SUITE
