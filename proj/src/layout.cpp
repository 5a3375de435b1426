#include "raidlay/layout.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

namespace raidlay {

std::vector<int> mask_members(BlockMask mask) {
  std::vector<int> out;
  while (mask) {
    int i = std::countr_zero(mask);
    out.push_back(i);
    mask &= mask - 1;
  }
  return out;
}

namespace {

BlockMask bit_for(int block) {
  if (block < 0 || block >= kMaxBlocks)
    throw IndexOutOfRange("block index " + std::to_string(block) + " outside [0, " +
                          std::to_string(kMaxBlocks) + ")");
  return BlockMask{1} << block;
}

int mod(int v, int n) {
  int r = v % n;
  return r < 0 ? r + n : r;
}

}  // namespace

Cell Cell::single(int block) { return Cell(bit_for(block)); }

Cell Cell::parity(int a, int b) {
  if (a == b)
    throw DegenerateCell("X(" + std::to_string(a) + "," + std::to_string(b) +
                         "): XOR of a block with itself");
  return Cell(bit_for(a) | bit_for(b));
}

Cell Cell::from_members(std::span<const int> blocks) {
  if (blocks.empty()) throw DegenerateCell("cell with no members");
  BlockMask mask = 0;
  for (int b : blocks) {
    BlockMask bit = bit_for(b);
    if (mask & bit)
      throw DegenerateCell("duplicate block " + std::to_string(b) + " inside one cell");
    mask |= bit;
  }
  return Cell(mask);
}

int Cell::size() const { return std::popcount(mask_); }

void Layout::validate() const {
  auto name_ok = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  };
  if (name.empty() || !std::all_of(name.begin(), name.end(), name_ok))
    throw Error("layout name '" + name + "' is not a plain identifier");
  if (n_disks < 1 || n_disks > kMaxDisks)
    throw Error("layout '" + name + "': n_disks " + std::to_string(n_disks) +
                " outside [1, " + std::to_string(kMaxDisks) + "]");
  if (n_blocks < 1 || n_blocks > kMaxBlocks)
    throw Error("layout '" + name + "': n_blocks " + std::to_string(n_blocks) +
                " outside [1, " + std::to_string(kMaxBlocks) + "]");
  if (static_cast<int>(grid.size()) != n_disks)
    throw Error("layout '" + name + "': grid has " + std::to_string(grid.size()) +
                " disks, declared " + std::to_string(n_disks));
  BlockMask allowed = all_blocks_mask();
  for (int d = 0; d < n_disks; ++d) {
    if (grid[d].empty())
      throw Error("layout '" + name + "': disk " + std::to_string(d) + " has no cells");
    for (const Cell& cell : grid[d]) {
      if (cell.mask() & ~allowed)
        throw IndexOutOfRange("layout '" + name + "': disk " + std::to_string(d) +
                              " references a block >= " + std::to_string(n_blocks));
    }
  }
}

BlockMask Layout::all_blocks_mask() const {
  return n_blocks >= kMaxBlocks ? ~BlockMask{0} : (BlockMask{1} << n_blocks) - 1;
}

int Layout::total_cells() const {
  int total = 0;
  for (const auto& rows : grid) total += static_cast<int>(rows.size());
  return total;
}

Scheme scheme_from_name(std::string_view name) {
  if (name == "RR") return Scheme::RR;
  if (name == "PP1") return Scheme::PP1;
  if (name == "PP2") return Scheme::PP2;
  if (name == "RP1") return Scheme::RP1;
  if (name == "RP2") return Scheme::RP2;
  throw Error("unknown scheme '" + std::string(name) + "' (expected RR, PP1, PP2, RP1 or RP2)");
}

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::RR: return "RR";
    case Scheme::PP1: return "PP1";
    case Scheme::PP2: return "PP2";
    case Scheme::RP1: return "RP1";
    case Scheme::RP2: return "RP2";
  }
  throw Error("invalid scheme value");
}

namespace {

void require_size(int n_disks, int minimum) {
  if (n_disks < minimum)
    throw UnsupportedSize("n = " + std::to_string(n_disks) + " is below the minimum " +
                          std::to_string(minimum) + " for this generator");
  if (n_disks > kMaxDisks)
    throw UnsupportedSize("n = " + std::to_string(n_disks) + " exceeds the representation cap " +
                          std::to_string(kMaxDisks));
}

Layout build_rotational(std::string name, int n,
                        const std::vector<std::vector<int>>& row_offsets) {
  Layout layout;
  layout.name = std::move(name);
  layout.n_disks = n;
  layout.n_blocks = n;
  layout.grid.resize(n);
  for (int d = 0; d < n; ++d) {
    for (const auto& offsets : row_offsets) {
      std::vector<int> members;
      members.reserve(offsets.size());
      for (int off : offsets) members.push_back(mod(d + off, n));
      layout.grid[d].push_back(Cell::from_members(members));
    }
  }
  layout.validate();
  return layout;
}

}  // namespace

Layout generate_named(Scheme scheme, int n_disks) {
  require_size(n_disks, 5);
  switch (scheme) {
    case Scheme::RR:
      return build_rotational("RR", n_disks, {{0}, {-1}, {-2}});
    case Scheme::PP1:
      return build_rotational("PP1", n_disks, {{0}, {1, 2}, {3, 4}});
    case Scheme::PP2:
      return build_rotational("PP2", n_disks, {{0}, {0, 2}, {3, 4}});
    case Scheme::RP1:
      return build_rotational("RP1", n_disks, {{0}, {-1}, {0, 2}});
    case Scheme::RP2:
      return build_rotational("RP2", n_disks, {{0}, {-1}, {1, 2}});
  }
  throw Error("invalid scheme value");
}

namespace {

// A free-offset layout whose grid lands exactly on a named scheme takes that
// scheme's name, so the tuple and the figure compare equal as values.
void adopt_scheme_name(Layout& layout, std::initializer_list<Scheme> candidates) {
  for (Scheme scheme : candidates) {
    Layout named = generate_named(scheme, layout.n_disks);
    if (named.grid == layout.grid) {
      layout.name = named.name;
      return;
    }
  }
}

}  // namespace

Layout generate_pp(int n_disks, int a1, int b1, int a2, int b2) {
  require_size(n_disks, 5);
  if (mod(a1, n_disks) == mod(b1, n_disks))
    throw DegenerateCell("pp offsets a1 = b1 = " + std::to_string(mod(a1, n_disks)) +
                         " (mod n) make row 2 a self-XOR");
  if (mod(a2, n_disks) == mod(b2, n_disks))
    throw DegenerateCell("pp offsets a2 = b2 = " + std::to_string(mod(a2, n_disks)) +
                         " (mod n) make row 3 a self-XOR");
  std::string name = "PP_" + std::to_string(mod(a1, n_disks)) + "_" +
                     std::to_string(mod(b1, n_disks)) + "_" + std::to_string(mod(a2, n_disks)) +
                     "_" + std::to_string(mod(b2, n_disks));
  Layout layout = build_rotational(std::move(name), n_disks, {{0}, {a1, b1}, {a2, b2}});
  adopt_scheme_name(layout, {Scheme::PP1, Scheme::PP2});
  return layout;
}

Layout generate_rp(int n_disks, int replica_offset, int a, int b) {
  require_size(n_disks, 5);
  if (mod(replica_offset, n_disks) == 0)
    throw DegenerateCell("replica offset 0 (mod n) collides with the primary copy");
  if (mod(a, n_disks) == mod(b, n_disks))
    throw DegenerateCell("rp offsets a = b = " + std::to_string(mod(a, n_disks)) +
                         " (mod n) make the parity row a self-XOR");
  std::string name = "RP_" + std::to_string(mod(replica_offset, n_disks)) + "_" +
                     std::to_string(mod(a, n_disks)) + "_" + std::to_string(mod(b, n_disks));
  Layout layout = build_rotational(std::move(name), n_disks, {{0}, {-replica_offset}, {a, b}});
  adopt_scheme_name(layout, {Scheme::RP1, Scheme::RP2});
  return layout;
}

namespace {

// Line-oriented parser. Keeps 1-based line/column for diagnostics.
class LayoutParser {
public:
  explicit LayoutParser(std::string_view text) : text_(text) {}

  Layout parse(std::vector<std::string>* warnings) {
    Layout layout;
    bool have_name = false, have_disks = false, have_blocks = false;
    std::vector<bool> seen_disk;

    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t eol = text_.find('\n', pos);
      if (eol == std::string_view::npos) eol = text_.size();
      line_text_ = text_.substr(pos, eol - pos);
      if (std::size_t hash = line_text_.find('#'); hash != std::string_view::npos)
        line_text_ = line_text_.substr(0, hash);
      col_ = 1;
      skip_ws();
      if (!at_end()) {
        std::string key = read_word();
        if (key == "name") {
          expect('=');
          layout.name = read_identifier();
          require_line_end();
          if (have_name) fail("duplicate 'name'");
          have_name = true;
        } else if (key == "disks") {
          expect('=');
          layout.n_disks = read_int();
          require_line_end();
          if (have_disks) fail("duplicate 'disks'");
          if (layout.n_disks < 1 || layout.n_disks > kMaxDisks)
            fail("disks must be in [1, " + std::to_string(kMaxDisks) + "]");
          have_disks = true;
          seen_disk.assign(layout.n_disks, false);
        } else if (key == "blocks") {
          expect('=');
          layout.n_blocks = read_int();
          require_line_end();
          if (have_blocks) fail("duplicate 'blocks'");
          if (layout.n_blocks < 1 || layout.n_blocks > kMaxBlocks)
            fail("blocks must be in [1, " + std::to_string(kMaxBlocks) + "]");
          have_blocks = true;
        } else if (key == "disk") {
          if (!have_name || !have_disks || !have_blocks)
            fail("'disk' lines must come after name, disks and blocks");
          int d = read_int();
          if (d < 0 || d >= layout.n_disks)
            fail("disk index " + std::to_string(d) + " outside [0, " +
                 std::to_string(layout.n_disks) + ")");
          if (seen_disk[d]) fail("duplicate disk " + std::to_string(d));
          seen_disk[d] = true;
          expect(':');
          if (layout.grid.empty()) layout.grid.resize(layout.n_disks);
          layout.grid[d] = read_cells(layout.n_blocks);
          require_line_end();
        } else {
          fail("expected 'name', 'disks', 'blocks' or 'disk', got '" + key + "'");
        }
      }
      if (eol == text_.size()) break;
      pos = eol + 1;
      ++line_;
    }

    if (!have_name) fail("missing 'name'");
    if (!have_disks) fail("missing 'disks'");
    if (!have_blocks) fail("missing 'blocks'");
    if (layout.grid.empty()) layout.grid.resize(layout.n_disks);
    for (int d = 0; d < layout.n_disks; ++d)
      if (!seen_disk[d]) fail("disk " + std::to_string(d) + " never defined");

    layout.validate();
    if (warnings) collect_warnings(layout, *warnings);
    return layout;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, col_, what); }

  bool at_end() const { return col_ > static_cast<int>(line_text_.size()); }
  char peek() const { return line_text_[col_ - 1]; }

  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++col_;
  }

  void expect(char c) {
    skip_ws();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++col_;
  }

  void require_line_end() {
    skip_ws();
    if (!at_end()) fail("trailing characters");
  }

  std::string read_word() {
    skip_ws();
    std::string out;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) {
      out += peek();
      ++col_;
    }
    if (out.empty()) fail("expected a keyword");
    return out;
  }

  std::string read_identifier() {
    skip_ws();
    std::string out;
    auto ok = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
    };
    while (!at_end() && ok(peek())) {
      out += peek();
      ++col_;
    }
    if (out.empty()) fail("expected an identifier");
    return out;
  }

  int read_int() {
    skip_ws();
    std::size_t start = col_ - 1;
    std::size_t end = start;
    while (end < line_text_.size() && std::isdigit(static_cast<unsigned char>(line_text_[end])))
      ++end;
    if (end == start) fail("expected an integer");
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(line_text_.data() + start, line_text_.data() + end, value);
    if (ec != std::errc()) fail("integer out of range");
    col_ = static_cast<int>(end) + 1;
    return value;
  }

  Cell read_cell(int n_blocks) {
    skip_ws();
    if (at_end()) fail("expected a cell");
    int cell_col = col_;
    char kind = peek();
    if (kind == 'B') {
      ++col_;
      int b = read_int();
      if (b >= n_blocks) {
        col_ = cell_col;
        throw IndexOutOfRange("line " + std::to_string(line_) + ", col " +
                              std::to_string(cell_col) + ": block index " + std::to_string(b) +
                              " >= blocks = " + std::to_string(n_blocks));
      }
      return Cell::single(b);
    }
    if (kind == 'X') {
      ++col_;
      expect('(');
      std::vector<int> members;
      while (true) {
        members.push_back(read_int());
        skip_ws();
        if (!at_end() && peek() == ',') {
          ++col_;
          continue;
        }
        break;
      }
      expect(')');
      if (members.size() < 2) fail("parity cell needs at least 2 members");
      for (int b : members)
        if (b >= n_blocks)
          throw IndexOutOfRange("line " + std::to_string(line_) + ", col " +
                                std::to_string(cell_col) + ": block index " + std::to_string(b) +
                                " >= blocks = " + std::to_string(n_blocks));
      try {
        return Cell::from_members(members);
      } catch (const DegenerateCell& e) {
        throw DegenerateCell("line " + std::to_string(line_) + ", col " +
                             std::to_string(cell_col) + ": " + e.what());
      }
    }
    fail("expected 'B<i>' or 'X(i,j,...)'");
  }

  std::vector<Cell> read_cells(int n_blocks) {
    std::vector<Cell> cells;
    cells.push_back(read_cell(n_blocks));
    while (true) {
      skip_ws();
      if (at_end()) break;
      expect(',');
      cells.push_back(read_cell(n_blocks));
    }
    return cells;
  }

  static void collect_warnings(const Layout& layout, std::vector<std::string>& warnings) {
    BlockMask stored = 0, touched = 0;
    for (const auto& rows : layout.grid) {
      for (const Cell& cell : rows) {
        touched |= cell.mask();
        if (cell.is_singleton()) stored |= cell.mask();
      }
    }
    for (int b = 0; b < layout.n_blocks; ++b) {
      BlockMask bit = BlockMask{1} << b;
      if (!(touched & bit))
        warnings.push_back("block " + std::to_string(b) + " does not appear in any cell");
      else if (!(stored & bit))
        warnings.push_back("block " + std::to_string(b) + " is never stored as a singleton");
    }
  }

  std::string_view text_;
  std::string_view line_text_;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

Layout parse_layout(std::string_view text, std::vector<std::string>* warnings) {
  return LayoutParser(text).parse(warnings);
}

std::string serialize_layout(const Layout& layout) {
  layout.validate();
  std::ostringstream out;
  out << "name = " << layout.name << "\n";
  out << "disks = " << layout.n_disks << "\n";
  out << "blocks = " << layout.n_blocks << "\n";
  for (int d = 0; d < layout.n_disks; ++d) {
    out << "disk " << d << ":";
    bool first = true;
    for (const Cell& cell : layout.grid[d]) {
      out << (first ? " " : ", ");
      first = false;
      std::vector<int> members = cell.members();
      if (members.size() == 1) {
        out << "B" << members[0];
      } else {
        out << "X(";
        for (std::size_t i = 0; i < members.size(); ++i) {
          if (i) out << ",";
          out << members[i];
        }
        out << ")";
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace raidlay
