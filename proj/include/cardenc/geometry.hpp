// Grid-covering test cases: on a square or triangular grid of points,
// every square (or equilateral triangle) of a given family must contain a
// selected point, and a cardinality constraint limits the selection.  The
// minimal satisfiable bounds are the OEIS sequences A152125, A240443,
// A319158, A227116 and A319159.
#pragma once

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <vector>

#include "cardenc/cnf.hpp"
#include "cardenc/encode.hpp"

namespace cardenc {

struct BadSize : CnfError {
  using CnfError::CnfError;
};
struct UnsupportedOrdering : CnfError {
  using CnfError::CnfError;
};

enum class Sequence { A152125, A240443, A319158, A227116, A319159 };

inline const char* sequence_name(Sequence s) {
  switch (s) {
    case Sequence::A152125: return "A152125";
    case Sequence::A240443: return "A240443";
    case Sequence::A319158: return "A319158";
    case Sequence::A227116: return "A227116";
    case Sequence::A319159: return "A319159";
  }
  return "?";
}

inline Sequence parse_sequence(const std::string& s) {
  if (s == "A152125") return Sequence::A152125;
  if (s == "A240443") return Sequence::A240443;
  if (s == "A319158") return Sequence::A319158;
  if (s == "A227116") return Sequence::A227116;
  if (s == "A319159") return Sequence::A319159;
  throw BadSize("unknown sequence id: " + s);
}

inline bool sequence_is_square(Sequence s) {
  return s == Sequence::A152125 || s == Sequence::A240443;
}

/// Known sequence values a(L) starting at L = 2.
inline const std::vector<int>& sequence_values(Sequence s) {
  static const std::vector<int> a152125{1, 2, 4, 8, 12, 17, 23, 30, 39};
  static const std::vector<int> a240443{1, 3, 6, 10, 15, 21, 27, 34, 42};
  static const std::vector<int> a319158{1, 2, 4, 6, 9, 13, 18, 23, 29, 35, 43, 51};
  static const std::vector<int> a227116{1, 2, 4, 7, 9, 14, 18, 23, 29, 36, 44, 52, 61, 71};
  static const std::vector<int> a319159{1, 2, 4, 7, 11, 16, 22, 28, 35, 44, 53, 63, 74, 86};
  switch (s) {
    case Sequence::A152125: return a152125;
    case Sequence::A240443: return a240443;
    case Sequence::A319158: return a319158;
    case Sequence::A227116: return a227116;
    case Sequence::A319159: return a319159;
  }
  return a152125;
}

inline int sequence_value(Sequence s, int L) {
  const auto& v = sequence_values(s);
  if (L < 2 || L - 2 >= static_cast<int>(v.size()))
    throw BadSize("no recorded value for " + std::string(sequence_name(s)) +
                  "(" + std::to_string(L) + ")");
  return v[L - 2];
}

struct GridKind {
  enum Family { Square, Triangular } family;
  int L;

  int num_points() const {
    return family == Square ? L * L : L * (L + 1) / 2;
  }
};

inline GridKind grid_for(Sequence s, int L) {
  return {sequence_is_square(s) ? GridKind::Square : GridKind::Triangular, L};
}

/// Square grid: point (row i, col j), 1-based, id (i-1)L + j.
/// Triangular grid: row i = 1..L holds i points, id i(i-1)/2 + j.
inline int square_point_id(int L, int i, int j) { return (i - 1) * L + j; }
inline int triangle_point_id(int i, int j) { return i * (i - 1) / 2 + j; }

/// Corner ids, sorted ascending; 4 corners for squares, 3 for triangles.
using Shape = std::vector<int>;

inline void push_shape(std::vector<Shape>& out, Shape s) {
  std::sort(s.begin(), s.end());
  out.push_back(std::move(s));
}

/// All shapes of the sequence's family on the grid, in lexicographic
/// corner-id order.
inline std::vector<Shape> enumerate_shapes(const GridKind& kind, Sequence seq) {
  const int L = kind.L;
  if (L < 2) throw BadSize("grid needs L >= 2");
  std::vector<Shape> shapes;

  if (sequence_is_square(seq)) {
    auto id = [&](int i, int j) { return square_point_id(L, i, j); };
    for (int s = 1; s <= L - 1; ++s) {
      for (int i = 1; i + s <= L; ++i) {
        for (int j = 1; j + s <= L; ++j) {
          const int amax = seq == Sequence::A240443 ? s - 1 : 0;
          // Offset a tilts the square inscribed in the s x s bounding box.
          for (int a = 0; a <= amax; ++a)
            push_shape(shapes, {id(i, j + a), id(i + a, j + s),
                                id(i + s, j + s - a), id(i + s - a, j)});
        }
      }
    }
  } else {
    auto id = [&](int i, int j) { return triangle_point_id(i, j); };
    auto upward_corners = [&](int i, int j, int s) {
      return Shape{id(i, j), id(i + s, j), id(i + s, j + s)};
    };
    for (int s = 1; s <= L - 1; ++s) {
      for (int i = 1; i + s <= L; ++i) {
        for (int j = 1; j <= i; ++j) {
          if (seq == Sequence::A319159) {
            // Every lattice equilateral triangle is inscribed in a unique
            // upward bounding triangle of size s, one per offset a.
            for (int a = 0; a <= s - 1; ++a)
              push_shape(shapes, {id(i + a, j), id(i + s, j + a),
                                  id(i + s - a, j + s - a)});
          } else {
            push_shape(shapes, upward_corners(i, j, s));
          }
        }
      }
      if (seq == Sequence::A227116) {
        // Downward triangles: horizontal top edge in row i, apex below.
        for (int i = s + 1; i + s <= L; ++i)
          for (int j = 1; j + s <= i; ++j)
            push_shape(shapes, {id(i, j), id(i, j + s), id(i + s, j + s)});
      }
    }
  }
  std::sort(shapes.begin(), shapes.end());
  return shapes;
}

enum class Ordering { Row, Spiral, Random };

inline const char* ordering_name(Ordering o) {
  switch (o) {
    case Ordering::Row: return "row";
    case Ordering::Spiral: return "spiral";
    case Ordering::Random: return "random";
  }
  return "?";
}

inline Ordering parse_ordering(const std::string& s) {
  if (s == "row") return Ordering::Row;
  if (s == "spiral") return Ordering::Spiral;
  if (s == "random") return Ordering::Random;
  throw UnsupportedOrdering("unknown ordering: " + s);
}

/// Visit order of point ids.  Row: reading order.  Spiral: square spiral
/// from the centre outward (for even L, from the lower-left of the four
/// central points), turning counter-clockwise with the turn cycle
/// right, up, left, down.  Random: seeded Fisher-Yates, reproducible
/// across platforms.
inline std::vector<int> point_ordering(const GridKind& kind, Ordering ordering,
                                       unsigned seed = 0) {
  const int n = kind.num_points();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;

  switch (ordering) {
    case Ordering::Row:
      return order;
    case Ordering::Random: {
      std::mt19937 rng(seed);
      for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng() % static_cast<unsigned>(i + 1));
        std::swap(order[i], order[j]);
      }
      return order;
    }
    case Ordering::Spiral: {
      if (kind.family != GridKind::Square)
        throw UnsupportedOrdering("spiral ordering needs a square grid");
      const int L = kind.L;
      int row = L % 2 == 1 ? (L + 1) / 2 : L / 2 + 1;
      int col = L % 2 == 1 ? (L + 1) / 2 : L / 2;
      // Direction cycle right, up, left, down with run lengths
      // 1,1,2,2,3,3,...; rows grow downward, so "up" is row-1.
      static constexpr std::array<std::array<int, 2>, 4> dirs{
          {{0, 1}, {-1, 0}, {0, -1}, {1, 0}}};
      std::vector<int> out;
      out.reserve(n);
      auto visit = [&](int i, int j) {
        if (i >= 1 && i <= L && j >= 1 && j <= L)
          out.push_back(square_point_id(L, i, j));
      };
      visit(row, col);
      int run = 1, dir = 0;
      while (static_cast<int>(out.size()) < n) {
        for (int leg = 0; leg < 2; ++leg) {
          for (int step = 0; step < run; ++step) {
            row += dirs[dir][0];
            col += dirs[dir][1];
            visit(row, col);
          }
          dir = (dir + 1) % 4;
        }
        ++run;
      }
      return out;
    }
  }
  return order;
}

struct TestCaseSpec {
  Sequence sequence = Sequence::A227116;
  int L = 2;
  bool sat_polarity = true;  // SAT: r = a(L); UNSAT: r = a(L) - 1
  Ordering ordering = Ordering::Row;
  unsigned seed = 0;

  int r() const {
    const int a = sequence_value(sequence, L);
    return sat_polarity ? a : a - 1;
  }
};

/// Builds the full CNF instance: one positive clause per shape, then the
/// chosen cardinality encoding over all mains.  The ordering decides which
/// main index each grid point receives, so only the encoder's view of the
/// variables changes.
inline Formula build_instance(const TestCaseSpec& spec,
                              const EncodingChoice& choice) {
  const GridKind kind = grid_for(spec.sequence, spec.L);
  const int n = kind.num_points();
  const int r = spec.r();

  Formula f(n);
  f.add_comment("mains " + std::to_string(n));
  f.add_comment("sequence " + std::string(sequence_name(spec.sequence)));
  f.add_comment("L " + std::to_string(spec.L));
  f.add_comment("polarity " + std::string(spec.sat_polarity ? "sat" : "unsat"));
  f.add_comment("r " + std::to_string(r));
  f.add_comment("encoding " + method_name(choice.method));
  f.add_comment("variant " + choice.variant_name());
  f.add_comment("ordering " + std::string(ordering_name(spec.ordering)));
  if (spec.ordering == Ordering::Random)
    f.add_comment("seed " + std::to_string(spec.seed));

  const std::vector<int> order = point_ordering(kind, spec.ordering, spec.seed);
  std::vector<Var> var_of_point(n + 1, 0);
  for (int k = 0; k < n; ++k) var_of_point[order[k]] = k + 1;

  for (const Shape& shape : enumerate_shapes(kind, spec.sequence)) {
    Clause c;
    c.reserve(shape.size());
    for (int p : shape) c.push_back(pos(var_of_point[p]));
    f.add_clause(std::move(c));
  }

  encode_cardinality(f, f.main_vars(), r, choice);
  return f;
}

}  // namespace cardenc
