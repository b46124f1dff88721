// Sinz sequential-counter encoding of <=r and =r over a staggered grid of
// auxiliary variables e_j^k (rows k = 1..r, columns j = k..n+k-r-1), its
// strengthening clause families, the transition-based pigeonhole generator
// shown to produce the identical clause set, and the canonical-assignment
// oracle.
#pragma once

#include <cstdint>
#include <vector>

#include "cardenc/cnf.hpp"

namespace cardenc {

/// Variant flags for the sequential counter.  `equality` implies both
/// strengthenings: the =r conversion extends the fully strengthened form.
struct SeqVariant {
  bool strengthen_se = false;          // south-east propagation clauses
  bool strengthen_transition = false;  // transition-witness clauses
  bool equality = false;

  static SeqVariant unstrengthened() { return {}; }
  static SeqVariant with_se() { return {true, false, false}; }
  static SeqVariant with_transition() { return {false, true, false}; }
  static SeqVariant fully_strengthened() { return {true, true, false}; }
  static SeqVariant equality_constraint() { return {true, true, true}; }

  void validate() const {
    if (equality && !(strengthen_se && strengthen_transition))
      throw BadBounds("equality variant requires both strengthenings");
  }
};

/// The staggered grid of auxiliary variables.  Cells are allocated
/// row-major in k then j, so DIMACS output is reproducible.
class SeqGrid {
 public:
  SeqGrid() = default;
  SeqGrid(Formula& f, int n, int r) : n_(n), r_(r), cols_(n - r) {
    cells_.reserve(static_cast<std::size_t>(r) * cols_);
    for (int k = 1; k <= r; ++k)
      for (int j = k; j <= n + k - r - 1; ++j) cells_.push_back(f.fresh_var());
  }

  int n() const { return n_; }
  int r() const { return r_; }
  std::size_t cell_count() const { return cells_.size(); }

  bool in_grid(int k, int j) const {
    return k >= 1 && k <= r_ && j >= k && j <= n_ + k - r_ - 1;
  }

  /// Variable housing e_j^k.
  Var cell(int k, int j) const {
    if (!in_grid(k, j)) throw BadBounds("grid cell out of range");
    return cells_[static_cast<std::size_t>(k - 1) * cols_ + (j - k)];
  }

  const std::vector<Var>& cells() const { return cells_; }

 private:
  int n_ = 0, r_ = 0, cols_ = 0;
  std::vector<Var> cells_;
};

/// Unstrengthened clause count 2r(n-r)+n-2r.
inline std::int64_t seq_unstrengthened_clause_count(std::int64_t n, std::int64_t r) {
  return 2 * r * (n - r) + n - 2 * r;
}

/// Extra clauses added by full strengthening: 2r(n-r)-n+r.
inline std::int64_t seq_strengthening_clause_count(std::int64_t n, std::int64_t r) {
  return 2 * r * (n - r) - n + r;
}

/// Encodes <=r (or =r) over `mains`.  Implicitly-true/false grid cells are
/// never allocated; clauses referencing them are shortened or dropped.
inline SeqGrid encode_seqcounter(Formula& f, const std::vector<Var>& mains,
                                 int r, SeqVariant variant = {}) {
  variant.validate();
  const int n = static_cast<int>(mains.size());
  if (r < 1 || r >= n) throw BadBounds("sequential counter needs 1 <= r < n");

  SeqGrid grid(f, n, r);
  auto e = [&](int k, int j) { return grid.cell(k, j); };
  auto x = [&](int j) { return mains[j - 1]; };  // 1-based

  // Row monotonicity: (~e_j^k | e_{j+1}^k).
  for (int k = 1; k <= r; ++k)
    for (int j = k; j <= n + k - r - 2; ++j)
      f.add_clause({neg(e(k, j)), pos(e(k, j + 1))});

  // Increment clauses: (~e_j^k | e_{j+1}^{k+1} | ~x_{j+1}), with e^0 true
  // and e^{r+1} false handled by literal omission.
  for (int k = 0; k <= r; ++k) {
    for (int j = k; j <= n + k - r - 1; ++j) {
      Clause c;
      if (k >= 1) c.push_back(neg(e(k, j)));
      if (k + 1 <= r) c.push_back(pos(e(k + 1, j + 1)));
      c.push_back(neg(x(j + 1)));
      f.add_clause(std::move(c));
    }
  }

  // South-east propagation: (e_j^k | ~e_{j+1}^{k+1}).
  if (variant.strengthen_se) {
    for (int k = 1; k <= r - 1; ++k)
      for (int j = k; j <= n + k - r - 1; ++j)
        f.add_clause({pos(e(k, j)), neg(e(k + 1, j + 1))});
  }

  // Transition witness: (e_j^k | ~e_{j+1}^k | x_{j+1}); e_{k-1}^k is
  // implicitly false.  The equality conversion raises the j limit by one,
  // with e_{n+k-r}^k implicitly true.
  if (variant.strengthen_transition) {
    for (int k = 1; k <= r; ++k) {
      const int j_hi = variant.equality ? n + k - r - 1 : n + k - r - 2;
      for (int j = k - 1; j <= j_hi; ++j) {
        Clause c;
        if (j >= k) c.push_back(pos(e(k, j)));
        if (j + 1 <= n + k - r - 1) c.push_back(neg(e(k, j + 1)));
        c.push_back(pos(x(j + 1)));
        f.add_clause(std::move(c));
      }
    }
  }
  return grid;
}

/// The squared-up transition grid t_j^k of the improved pigeonhole
/// encoding: rows k = 1..q, columns j = 1..n-q, with t_0^k implicitly true
/// and t_{n-q+1}^k implicitly false.  Encodes >=q over `mains`
/// (complemented when `complement_mains` is set, which turns it into <=n-q
/// over the originals).
class TransitionGrid {
 public:
  TransitionGrid() = default;
  TransitionGrid(Formula& f, int n, int q) : n_(n), q_(q), cols_(n - q) {
    cells_.reserve(static_cast<std::size_t>(q) * cols_);
    for (int k = 1; k <= q; ++k)
      for (int j = 1; j <= cols_; ++j) cells_.push_back(f.fresh_var());
  }

  int n() const { return n_; }
  int q() const { return q_; }

  Var cell(int k, int j) const {
    if (k < 1 || k > q_ || j < 1 || j > cols_)
      throw BadBounds("transition grid cell out of range");
    return cells_[static_cast<std::size_t>(k - 1) * cols_ + (j - 1)];
  }

 private:
  int n_ = 0, q_ = 0, cols_ = 0;
  std::vector<Var> cells_;
};

inline TransitionGrid encode_pigeonhole_transition(Formula& f,
                                                   const std::vector<Var>& mains,
                                                   int q,
                                                   bool complement_mains = false) {
  const int n = static_cast<int>(mains.size());
  if (q < 1 || q >= n) throw BadBounds("pigeonhole transition needs 1 <= q < n");

  TransitionGrid grid(f, n, q);
  auto t = [&](int k, int j) { return grid.cell(k, j); };
  auto x = [&](int i) { return Lit(mains[i - 1], complement_mains); };

  // Transition ordering: (~t_j^k | t_j^{k+1}).
  for (int k = 1; k <= q - 1; ++k)
    for (int j = 1; j <= n - q; ++j)
      f.add_clause({neg(t(k, j)), pos(t(k + 1, j))});

  // A transition forces its main variable: (~t_j^k | t_{j+1}^k | x_{j+k}).
  for (int k = 1; k <= q; ++k) {
    for (int j = 0; j <= n - q; ++j) {
      Clause c;
      if (j >= 1) c.push_back(neg(t(k, j)));
      if (j + 1 <= n - q) c.push_back(pos(t(k, j + 1)));
      c.push_back(x(j + k));
      f.add_clause(std::move(c));
    }
  }
  return grid;
}

/// The unique auxiliary assignment satisfying the strengthened condition:
/// e_j^k = 1 iff the prefix sum through x_j is >= k.  Returned indexed by
/// the grid's allocation order.
inline std::vector<bool> canonical_aux(const std::vector<bool>& mains, int n,
                                       int r) {
  if (static_cast<int>(mains.size()) != n)
    throw BadBounds("assignment size must equal n");
  int pop = 0;
  for (bool b : mains) pop += b ? 1 : 0;
  if (pop > r) throw ConstraintViolated("more than r true main variables");

  std::vector<int> prefix(n + 1, 0);
  for (int j = 1; j <= n; ++j) prefix[j] = prefix[j - 1] + (mains[j - 1] ? 1 : 0);

  std::vector<bool> cells;
  cells.reserve(static_cast<std::size_t>(r) * (n - r));
  for (int k = 1; k <= r; ++k)
    for (int j = k; j <= n + k - r - 1; ++j) cells.push_back(prefix[j] >= k);
  return cells;
}

/// (n-r+1)^r: the number of auxiliary solutions when every main variable is
/// false and the encoding is unstrengthened.  With all mains false the
/// increment clauses are vacuous, so each of the r rows independently takes
/// any of its n-r+1 monotone states (a 0->1 transition at one of the n-r
/// cells, or the all-false row).
inline unsigned long long count_aux_freedom_all_false(int n, int r) {
  if (r < 1 || r >= n) throw BadBounds("needs 1 <= r < n");
  unsigned long long result = 1;
  for (int k = 0; k < r; ++k)
    result *= static_cast<unsigned long long>(n - r + 1);
  return result;
}

}  // namespace cardenc
