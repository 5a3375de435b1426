#include <doctest.h>

#include <random>

#include "raidlay/layout.hpp"

using namespace raidlay;

namespace {

Cell c(int a) { return Cell::single(a); }
Cell c(int a, int b) { return Cell::parity(a, b); }

using Grid = std::vector<std::vector<Cell>>;

// All 15 cells of each figure at n = 5, row by row per disk.
const Grid kRrGrid = {{c(0), c(4), c(3)},
                      {c(1), c(0), c(4)},
                      {c(2), c(1), c(0)},
                      {c(3), c(2), c(1)},
                      {c(4), c(3), c(2)}};

const Grid kPp1Grid = {{c(0), c(1, 2), c(3, 4)},
                       {c(1), c(2, 3), c(0, 4)},
                       {c(2), c(3, 4), c(0, 1)},
                       {c(3), c(0, 4), c(1, 2)},
                       {c(4), c(0, 1), c(2, 3)}};

const Grid kRp1Grid = {{c(0), c(4), c(0, 2)},
                       {c(1), c(0), c(1, 3)},
                       {c(2), c(1), c(2, 4)},
                       {c(3), c(2), c(0, 3)},
                       {c(4), c(3), c(1, 4)}};

const Grid kPp2Grid = {{c(0), c(0, 2), c(3, 4)},
                       {c(1), c(1, 3), c(0, 4)},
                       {c(2), c(2, 4), c(0, 1)},
                       {c(3), c(0, 3), c(1, 2)},
                       {c(4), c(1, 4), c(2, 3)}};

const Grid kRp2Grid = {{c(0), c(4), c(1, 2)},
                       {c(1), c(0), c(2, 3)},
                       {c(2), c(1), c(3, 4)},
                       {c(3), c(2), c(0, 4)},
                       {c(4), c(3), c(0, 1)}};

Layout random_layout(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> disks(1, 8), blocks(1, 10), cells(1, 4);
  Layout layout;
  layout.n_disks = disks(rng);
  layout.n_blocks = blocks(rng);
  layout.name = "T" + std::to_string(rng() % 1000);
  layout.grid.resize(layout.n_disks);
  std::uniform_int_distribution<BlockMask> member(1, (BlockMask{1} << layout.n_blocks) - 1);
  for (auto& row : layout.grid) {
    int k = cells(rng);
    for (int i = 0; i < k; ++i) {
      std::vector<int> m = mask_members(member(rng));
      row.push_back(Cell::from_members(m));
    }
  }
  layout.validate();
  return layout;
}

}  // namespace

TEST_SUITE("layout") {

TEST_CASE("cells reject duplicates and emptiness") {
  CHECK_THROWS_AS(Cell::parity(2, 2), DegenerateCell);
  CHECK_THROWS_AS(Cell::from_members(std::vector<int>{}), DegenerateCell);
  CHECK_THROWS_AS(Cell::from_members(std::vector<int>{1, 3, 1}), DegenerateCell);
  CHECK_THROWS_AS(Cell::single(-1), IndexOutOfRange);
  CHECK_THROWS_AS(Cell::single(64), IndexOutOfRange);
  CHECK(Cell::single(3).is_singleton());
  CHECK(Cell::parity(1, 4).members() == std::vector<int>{1, 4});
}

TEST_CASE("named generators reproduce the five figures at n=5") {
  CHECK(generate_named(Scheme::RR, 5).grid == kRrGrid);
  CHECK(generate_named(Scheme::PP1, 5).grid == kPp1Grid);
  CHECK(generate_named(Scheme::PP2, 5).grid == kPp2Grid);
  CHECK(generate_named(Scheme::RP1, 5).grid == kRp1Grid);
  CHECK(generate_named(Scheme::RP2, 5).grid == kRp2Grid);

  // Spot rows named in the figures.
  Layout rr = generate_named(Scheme::RR, 5);
  CHECK(rr.grid[0] == std::vector<Cell>{c(0), c(4), c(3)});
  Layout pp2 = generate_named(Scheme::PP2, 5);
  CHECK(pp2.grid[1] == std::vector<Cell>{c(1), c(1, 3), c(0, 4)});
  Layout rp2 = generate_named(Scheme::RP2, 5);
  CHECK(rp2.grid[4] == std::vector<Cell>{c(4), c(3), c(0, 1)});
  Layout pp1 = generate_named(Scheme::PP1, 5);
  CHECK(pp1.grid[2] == std::vector<Cell>{c(2), c(3, 4), c(0, 1)});
}

TEST_CASE("generators refuse small sizes") {
  for (Scheme s : {Scheme::RR, Scheme::PP1, Scheme::PP2, Scheme::RP1, Scheme::RP2})
    CHECK_THROWS_AS(generate_named(s, 4), UnsupportedSize);
  CHECK_THROWS_AS(generate_pp(4, 1, 2, 3, 4), UnsupportedSize);
  CHECK_THROWS_AS(generate_rp(3, 1, 0, 2), UnsupportedSize);
}

TEST_CASE("free-offset generators cover the named schemes") {
  CHECK(generate_pp(5, 1, 2, 3, 4) == generate_named(Scheme::PP1, 5));
  CHECK(generate_pp(5, 0, 2, 3, 4) == generate_named(Scheme::PP2, 5));
  CHECK(generate_rp(5, 1, 0, 2) == generate_named(Scheme::RP1, 5));
  CHECK(generate_rp(5, 1, 1, 2) == generate_named(Scheme::RP2, 5));
  // Swapped member order builds the same cells.
  CHECK(generate_pp(5, 2, 1, 4, 3) == generate_named(Scheme::PP1, 5));
  for (int n : {5, 6, 9}) {
    CHECK(generate_pp(n, 1, 2, 3, 4) == generate_named(Scheme::PP1, n));
    CHECK(generate_rp(n, 1, 1, 2) == generate_named(Scheme::RP2, n));
  }
}

TEST_CASE("free-offset generators reject degenerate cells") {
  CHECK_THROWS_AS(generate_pp(5, 1, 1, 3, 4), DegenerateCell);
  CHECK_THROWS_AS(generate_pp(5, 1, 2, 4, 4), DegenerateCell);
  CHECK_THROWS_AS(generate_pp(5, 0, 5, 3, 4), DegenerateCell);  // 5 = 0 mod 5
  CHECK_THROWS_AS(generate_rp(5, 0, 1, 2), DegenerateCell);
  CHECK_THROWS_AS(generate_rp(5, 5, 1, 2), DegenerateCell);
  CHECK_THROWS_AS(generate_rp(5, 1, 2, 2), DegenerateCell);
}

TEST_CASE("generated layouts satisfy the structural invariants") {
  std::vector<Layout> layouts;
  for (int n : {5, 6, 7, 11})
    for (Scheme s : {Scheme::RR, Scheme::PP1, Scheme::PP2, Scheme::RP1, Scheme::RP2})
      layouts.push_back(generate_named(s, n));

  for (const Layout& layout : layouts) {
    CAPTURE(layout.name);
    CAPTURE(layout.n_disks);
    const int n = layout.n_disks;
    CHECK(layout.n_blocks == n);

    int singleton_primaries = 0, redundancy = 0;
    for (int d = 0; d < n; ++d) {
      REQUIRE(layout.grid[d].size() == 3);
      CHECK(layout.grid[d][0] == Cell::single(d));
      ++singleton_primaries;
      redundancy += 2;
    }
    CHECK(singleton_primaries == n);
    CHECK(redundancy == 2 * n);

    // Rotation symmetry: disk d is disk 0 with every index shifted by +d.
    for (int d = 0; d < n; ++d) {
      for (int r = 0; r < 3; ++r) {
        std::vector<int> shifted;
        for (int b : layout.grid[0][r].members()) shifted.push_back((b + d) % n);
        CHECK(layout.grid[d][r] == Cell::from_members(shifted));
      }
    }
  }
}

TEST_CASE("serialization is canonical") {
  Layout rr = generate_named(Scheme::RR, 5);
  std::string doc = serialize_layout(rr);
  CHECK(doc == "name = RR\n"
               "disks = 5\n"
               "blocks = 5\n"
               "disk 0: B0, B4, B3\n"
               "disk 1: B1, B0, B4\n"
               "disk 2: B2, B1, B0\n"
               "disk 3: B3, B2, B1\n"
               "disk 4: B4, B3, B2\n");
  CHECK(serialize_layout(generate_named(Scheme::RR, 5)) == doc);  // equal values, equal bytes

  std::string pp1 = serialize_layout(generate_named(Scheme::PP1, 5));
  CHECK(pp1.find("disk 0: B0, X(1,2), X(3,4)\n") != std::string::npos);
}

TEST_CASE("parse accepts the grammar and normalizes") {
  std::string doc =
      "# Fig. 1 grid\n"
      "name = RR\n"
      "disks = 5\n"
      "blocks = 5\n"
      "disk 0: B0, B4, B3\n"
      "disk 2: B2, B1, B0\n"
      "disk 1: B1, B0, B4   # out of order on purpose\n"
      "disk 4: B4, B3, B2\n"
      "disk 3: B3, B2, B1\n";
  Layout parsed = parse_layout(doc);
  CHECK(parsed == generate_named(Scheme::RR, 5));
  CHECK(serialize_layout(parsed) == serialize_layout(generate_named(Scheme::RR, 5)));

  // Parity members are stored ascending regardless of the written order.
  std::string messy =
      "name = M\ndisks = 1\nblocks = 5\ndisk 0: X(4 , 1 ,2), B3\n";
  Layout m = parse_layout(messy);
  CHECK(m.grid[0][0] == Cell::from_members(std::vector<int>{1, 2, 4}));
}

TEST_CASE("parse round-trips every generated layout") {
  for (int n : {5, 6, 8})
    for (Scheme s : {Scheme::RR, Scheme::PP1, Scheme::PP2, Scheme::RP1, Scheme::RP2}) {
      Layout layout = generate_named(s, n);
      CHECK(parse_layout(serialize_layout(layout)) == layout);
    }
  std::mt19937_64 rng(20240811);
  for (int i = 0; i < 200; ++i) {
    Layout layout = random_layout(rng);
    Layout back = parse_layout(serialize_layout(layout));
    CAPTURE(serialize_layout(layout));
    CHECK(back == layout);
    CHECK(serialize_layout(back) == serialize_layout(layout));
  }
}

TEST_CASE("parse rejects malformed documents") {
  std::string header = "name = L\ndisks = 1\nblocks = 5\n";

  CHECK_THROWS_AS(parse_layout(header + "disk 0: X(2,2)\n"), DegenerateCell);
  CHECK_THROWS_AS(parse_layout(header + "disk 0: B7\n"), IndexOutOfRange);
  CHECK_THROWS_AS(parse_layout(header + "disk 0: X(1,9)\n"), IndexOutOfRange);
  CHECK_THROWS_AS(parse_layout(header + "disk 0: B1 B2\n"), ParseError);
  CHECK_THROWS_AS(parse_layout(header + "disk 0: X(3)\n"), ParseError);
  CHECK_THROWS_AS(parse_layout(header + "disk 1: B0\n"), ParseError);  // index out of range
  CHECK_THROWS_AS(parse_layout(header), ParseError);                   // disk 0 missing
  CHECK_THROWS_AS(parse_layout("disks = 1\nblocks = 1\ndisk 0: B0\n"), ParseError);

  try {
    parse_layout("name = L\ndisks = 1\nblocks = 5\ndisk 0: B1 B2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("parser survives garbage input") {
  std::mt19937_64 rng(31);
  const std::string alphabet = "nameblocksdik B,X()=0123456789 \t\n#:xyz";
  std::string valid = serialize_layout(generate_named(Scheme::PP2, 5));
  for (int i = 0; i < 500; ++i) {
    std::string doc;
    if (i % 2 == 0) {
      int len = static_cast<int>(rng() % 120);
      for (int j = 0; j < len; ++j) doc += alphabet[rng() % alphabet.size()];
    } else {
      doc = valid;  // single-character mutation of a good document
      doc[rng() % doc.size()] = alphabet[rng() % alphabet.size()];
    }
    try {
      parse_layout(doc);
    } catch (const Error&) {
      // any typed error is fine; crashing or leaking past Error is not
    }
  }
}

TEST_CASE("layouts that cannot serialize are rejected up front") {
  Layout bad = generate_named(Scheme::RR, 5);
  bad.name = "two words";
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.name = "";
  CHECK_THROWS_AS(bad.validate(), Error);
  bad.name = "fig-1.rr";
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("parse warns on blocks without a stored copy") {
  std::vector<std::string> warnings;
  parse_layout("name = W\ndisks = 2\nblocks = 3\ndisk 0: B0, X(1,2)\ndisk 1: B1, X(0,1)\n",
               &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("block 2") != std::string::npos);

  warnings.clear();
  parse_layout("name = W\ndisks = 1\nblocks = 3\ndisk 0: B0, B1\n", &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("any cell") != std::string::npos);

  warnings.clear();
  parse_layout(serialize_layout(generate_named(Scheme::PP1, 5)), &warnings);
  CHECK(warnings.empty());
}

}  // TEST_SUITE
