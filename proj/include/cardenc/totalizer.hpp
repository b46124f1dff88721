// Bailleux-Boufkhad tree-based encoding.  The main variables sit as leaves
// of a binary tree packed into an array of size 2n-1 (leaves at n..2n-1,
// node k has daughters 2k and 2k+1).  Node variables b_j^k count the true
// leaves below node k.  b_0^k is implicitly true, b_{L_k+1}^k implicitly
// false, and b_1^k at a leaf is the main variable itself; none of these is
// ever allocated, so no variable ends up outside every clause.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "cardenc/cnf.hpp"

namespace cardenc {

struct TreeVariant {
  bool sideways = false;
  bool inequality = false;

  static TreeVariant unstrengthened() { return {}; }
  static TreeVariant with_sideways() { return {true, false}; }
  static TreeVariant with_inequality() { return {false, true}; }
  static TreeVariant with_both() { return {true, true}; }
};

/// Per-node bookkeeping plus the (node, count) -> Var table.
class NodeVarTable {
 public:
  NodeVarTable() = default;
  NodeVarTable(int n, int r) : n_(n), r_(r) {
    const int total = 2 * n;
    leaf_count_.assign(total, 0);
    cap_.assign(total, 0);
    co_cap_.assign(total, 0);
    for (int k = 2 * n - 1; k >= n; --k) leaf_count_[k] = 1;
    for (int k = n - 1; k >= 1; --k)
      leaf_count_[k] = leaf_count_[2 * k] + leaf_count_[2 * k + 1];
    for (int k = 1; k <= 2 * n - 1; ++k) {
      cap_[k] = std::min(r, leaf_count_[k]);
      co_cap_[k] = std::min(n - r, leaf_count_[k]);
    }
    required_le_.assign(total, {});
    required_extra_.assign(total, {});
    vars_.assign(total, {});
    for (int k = 1; k < total; ++k) {
      required_le_[k].assign(leaf_count_[k] + 1, false);
      required_extra_[k].assign(leaf_count_[k] + 1, false);
      vars_[k].assign(leaf_count_[k] + 1, 0);
    }
  }

  int n() const { return n_; }
  int r() const { return r_; }
  int leaf_count(int k) const { return leaf_count_[k]; }
  int cap(int k) const { return cap_[k]; }      // t_k = min(r, L_k)
  int co_cap(int k) const { return co_cap_[k]; }  // u_k = min(n-r, L_k)
  bool is_leaf(int k) const { return k >= n_; }

  bool required_le(int k, int j) const { return required_le_[k][j]; }
  bool required_extra(int k, int j) const { return required_extra_[k][j]; }
  void mark_le(int k, int j) { required_le_[k][j] = true; }
  void mark_extra(int k, int j) { required_extra_[k][j] = true; }

  /// Variable for b_j^k, if one was allocated (internal nodes only;
  /// implicit cells and leaf b_1 have none).
  std::optional<Var> var(int k, int j) const {
    if (j < 1 || j > leaf_count_[k] || vars_[k][j] == 0) return std::nullopt;
    return vars_[k][j];
  }
  void set_var(int k, int j, Var v) { vars_[k][j] = v; }

 private:
  int n_ = 0, r_ = 0;
  std::vector<int> leaf_count_, cap_, co_cap_;
  std::vector<std::vector<bool>> required_le_, required_extra_;
  std::vector<std::vector<Var>> vars_;
};

/// r(n-2), the variable-count bound on the tree encoding.
inline std::int64_t tree_variable_bound(std::int64_t n, std::int64_t r) {
  if (r < 1 || r >= n) throw BadBounds("needs 1 <= r < n");
  return r * (n - 2);
}

namespace detail {

// A literal in tree space; index 0 means implicitly true, index
// leaf_count+1 implicitly false.  Leaf b_1 is the main variable.
struct TreeLit {
  int node, index;
  bool positive;
};

enum class TreePass { AtMostOnly, Equality, InequalityStrengthen };

inline bool tree_lit_is_main(const NodeVarTable& t, const TreeLit& l) {
  return t.is_leaf(l.node) && l.index == 1;
}

// Resolves implicit cells: returns false if the clause is satisfied by an
// implicit-constant literal; drops implicitly-false positives and
// implicitly-true negatives.
inline bool tree_clause_concrete(const NodeVarTable& t,
                                 const std::vector<TreeLit>& lits,
                                 std::vector<TreeLit>& out) {
  out.clear();
  for (const TreeLit& l : lits) {
    const bool implicitly_true = l.index == 0;
    const bool implicitly_false = l.index > t.leaf_count(l.node);
    if (implicitly_true) {
      if (l.positive) return false;  // satisfied
      continue;                      // ~true drops out
    }
    if (implicitly_false) {
      if (!l.positive) return false;
      continue;
    }
    out.push_back(l);
  }
  return true;
}

template <typename Sink>
void tree_atmost_pass(NodeVarTable& t, Sink&& sink) {
  const int n = t.n(), r = t.r();
  // Constraint clauses: (~b_i^{2k} | ~b_j^{2k+1}) whenever i+j = r+1.
  for (int k = 1; k <= n - 1; ++k) {
    for (int i = 1; i <= t.cap(2 * k); ++i) {
      const int j = r + 1 - i;
      if (j < 1 || j > t.cap(2 * k + 1)) continue;
      sink({TreeLit{2 * k, i, false}, TreeLit{2 * k + 1, j, false}});
      t.mark_le(2 * k, i);
      t.mark_le(2 * k + 1, j);
    }
  }
  // Descent clauses, top-down so the requirements cascade in one pass:
  // (~b_i^{2k} | ~b_j^{2k+1} | b_m^k) for i+j = m on required b_m^k.
  for (int k = 2; k <= n - 1; ++k) {
    for (int m = 1; m <= t.cap(k); ++m) {
      if (!t.required_le(k, m)) continue;
      for (int i = 0; i <= t.cap(2 * k); ++i) {
        const int j = m - i;
        if (j < 0 || j > t.cap(2 * k + 1)) continue;
        sink({TreeLit{2 * k, i, false}, TreeLit{2 * k + 1, j, false},
              TreeLit{k, m, true}});
        if (i >= 1) t.mark_le(2 * k, i);
        if (j >= 1) t.mark_le(2 * k + 1, j);
      }
    }
  }
}

template <typename Sink>
void tree_sideways_pass(const NodeVarTable& t, Sink&& sink) {
  for (int k = 1; k <= t.n() - 1; ++k)
    for (int i = 1; i + 1 <= t.cap(k); ++i)
      if (t.required_le(k, i) && t.required_le(k, i + 1))
        sink({TreeLit{k, i, true}, TreeLit{k, i + 1, false}});
}

// The equality conversion writes sideways clauses wherever adjacent cells
// are required by either direction of counting.
template <typename Sink>
void tree_sideways_union_pass(const NodeVarTable& t, Sink&& sink) {
  auto required = [&](int k, int i) {
    return t.required_le(k, i) || t.required_extra(k, i);
  };
  for (int k = 1; k <= t.n() - 1; ++k)
    for (int i = 1; i + 1 <= t.leaf_count(k); ++i)
      if (required(k, i) && required(k, i + 1))
        sink({TreeLit{k, i, true}, TreeLit{k, i + 1, false}});
}

// The reverse-direction pass: the same procedure applied to >=_{n-r} over the
// complemented leaves, reusing the auxiliary variables via
// c_j^k = ~b_{L_k+1-j}^k.  With `skip_mains`, any clause that restricts a
// main variable is omitted (inequality strengthening).
template <typename Sink>
void tree_extra_pass(NodeVarTable& t, bool skip_mains, Sink&& sink) {
  const int n = t.n(), r = t.r();
  auto hi = [&](int node, int i) {
    return TreeLit{node, t.leaf_count(node) + 1 - i, true};
  };
  for (int k = 1; k <= n - 1; ++k) {
    for (int i = 1; i <= t.co_cap(2 * k); ++i) {
      const int j = n - r + 1 - i;
      if (j < 1 || j > t.co_cap(2 * k + 1)) continue;
      TreeLit a = hi(2 * k, i), b = hi(2 * k + 1, j);
      if (skip_mains && (tree_lit_is_main(t, a) || tree_lit_is_main(t, b)))
        continue;
      sink({a, b});
      t.mark_extra(a.node, a.index);
      t.mark_extra(b.node, b.index);
    }
  }
  for (int k = 2; k <= n - 1; ++k) {
    for (int m = 1; m <= t.co_cap(k); ++m) {
      const int parent_index = t.leaf_count(k) + 1 - m;
      if (!t.required_extra(k, parent_index)) continue;
      for (int i = 0; i <= t.co_cap(2 * k); ++i) {
        const int j = m - i;
        if (j < 0 || j > t.co_cap(2 * k + 1)) continue;
        TreeLit a = hi(2 * k, i), b = hi(2 * k + 1, j);
        TreeLit p{k, parent_index, false};
        if (skip_mains && ((i >= 1 && tree_lit_is_main(t, a)) ||
                           (j >= 1 && tree_lit_is_main(t, b))))
          continue;
        sink({a, b, p});
        if (i >= 1 && a.index <= t.leaf_count(a.node))
          t.mark_extra(a.node, a.index);
        if (j >= 1 && b.index <= t.leaf_count(b.node))
          t.mark_extra(b.node, b.index);
      }
    }
  }
}

enum class TreeKind { AtMost, Equality };

inline NodeVarTable encode_tree(Formula& f, const std::vector<Var>& mains,
                                int r, TreeKind kind, TreeVariant variant) {
  const int n = static_cast<int>(mains.size());
  if (r < 1 || r >= n) throw BadBounds("tree encoding needs 1 <= r < n");

  // Dry run: collect the clause list in tree space while computing the
  // required sets, then allocate variables (node ascending, then index
  // ascending) and emit.
  NodeVarTable table(n, r);
  std::vector<std::vector<TreeLit>> staged;
  std::vector<TreeLit> concrete;
  auto stage = [&](std::vector<TreeLit> lits) {
    if (!tree_clause_concrete(table, lits, concrete)) return;
    staged.push_back(concrete);
  };

  tree_atmost_pass(table, stage);
  if (kind == TreeKind::AtMost && variant.sideways)
    tree_sideways_pass(table, stage);
  if (kind == TreeKind::Equality) {
    tree_extra_pass(table, /*skip_mains=*/false, stage);
    tree_sideways_union_pass(table, stage);
  } else if (variant.inequality) {
    tree_extra_pass(table, /*skip_mains=*/true, stage);
  }

  for (int k = 2; k <= n - 1; ++k)
    for (int j = 1; j <= table.leaf_count(k); ++j)
      if (table.required_le(k, j) || table.required_extra(k, j))
        table.set_var(k, j, f.fresh_var());

  for (const auto& lits : staged) {
    Clause c;
    c.reserve(lits.size());
    for (const TreeLit& l : lits) {
      Var v;
      if (table.is_leaf(l.node)) {
        v = mains[l.node - n];  // b_1 at a leaf is the main variable
      } else {
        auto tv = table.var(l.node, l.index);
        if (!tv) throw CnfError("tree clause references unallocated cell");
        v = *tv;
      }
      c.push_back(Lit(v, !l.positive));
    }
    f.add_clause(std::move(c));
  }
  return table;
}

}  // namespace detail

inline NodeVarTable encode_totalizer_atmost(Formula& f,
                                            const std::vector<Var>& mains,
                                            int r, bool sideways = false,
                                            bool inequality = false) {
  return detail::encode_tree(f, mains, r, detail::TreeKind::AtMost,
                             TreeVariant{sideways, inequality});
}

inline NodeVarTable encode_totalizer_equality(Formula& f,
                                              const std::vector<Var>& mains,
                                              int r) {
  return detail::encode_tree(f, mains, r, detail::TreeKind::Equality, {});
}

}  // namespace cardenc
