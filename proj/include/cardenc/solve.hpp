// Embedded complete solver: a small CDCL engine for single solutions and a
// non-learning exhaustive DFS for exact AllSAT counting, total or
// projected onto the main-variable block.  Both are deterministic; the
// CDCL branching is seeded.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cardenc/cnf.hpp"

namespace cardenc {

enum class SolveStatus { Sat, Unsat, Timeout };

struct SolveResult {
  SolveStatus status = SolveStatus::Timeout;
  std::optional<std::vector<bool>> model;  // values for vars 1..V
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  double wall_time = 0.0;
};

inline bool check_model(const Formula& f, const std::vector<bool>& model) {
  if (static_cast<int>(model.size()) < f.num_vars() + 1) return false;
  for (const Clause& c : f.clauses()) {
    bool sat = false;
    for (const Lit& l : c)
      if (model[l.var()] != l.negated()) {
        sat = true;
        break;
      }
    if (!sat) return false;
  }
  return true;
}

namespace detail {

// Internal literal encoding: 2*(v-1) + sign.
inline int ilit(Lit l) { return 2 * (l.var() - 1) + (l.negated() ? 1 : 0); }
inline int ivar(int il) { return il >> 1; }          // 0-based
inline int ineg(int il) { return il ^ 1; }

inline double luby(int i) {
  // Knuth's loopless formulation.
  int k;
  for (k = 1; (1 << k) <= i + 1; ++k) {}
  --k;
  while ((1 << k) - 1 != i) {
    i -= (1 << k) - 1;
    for (k = 1; (1 << k) <= i + 1; ++k) {}
    --k;
  }
  return static_cast<double>(1 << k);
}

// Indexed max-heap over variable activities.
class VarHeap {
 public:
  explicit VarHeap(const std::vector<double>& act) : act_(act) {}

  bool empty() const { return heap_.empty(); }
  bool contains(int v) const {
    return v < static_cast<int>(pos_.size()) && pos_[v] >= 0;
  }

  void insert(int v) {
    if (static_cast<int>(pos_.size()) <= v) pos_.resize(v + 1, -1);
    if (pos_[v] >= 0) return;
    pos_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    up(pos_[v]);
  }

  int pop() {
    int v = heap_[0];
    swap_at(0, static_cast<int>(heap_.size()) - 1);
    heap_.pop_back();
    pos_[v] = -1;
    if (!heap_.empty()) down(0);
    return v;
  }

  void bumped(int v) {
    if (contains(v)) up(pos_[v]);
  }

 private:
  bool before(int a, int b) const {
    return act_[a] > act_[b] || (act_[a] == act_[b] && a < b);
  }
  void swap_at(int i, int j) {
    std::swap(heap_[i], heap_[j]);
    pos_[heap_[i]] = i;
    pos_[heap_[j]] = j;
  }
  void up(int i) {
    while (i > 0 && before(heap_[i], heap_[(i - 1) / 2])) {
      swap_at(i, (i - 1) / 2);
      i = (i - 1) / 2;
    }
  }
  void down(int i) {
    const int sz = static_cast<int>(heap_.size());
    for (;;) {
      int best = i, l = 2 * i + 1, r = 2 * i + 2;
      if (l < sz && before(heap_[l], heap_[best])) best = l;
      if (r < sz && before(heap_[r], heap_[best])) best = r;
      if (best == i) return;
      swap_at(i, best);
      i = best;
    }
  }

  const std::vector<double>& act_;
  std::vector<int> heap_;
  std::vector<int> pos_;
};

class CdclSolver {
 public:
  explicit CdclSolver(const Formula& f) : nvars_(f.num_vars()) {
    val_.assign(nvars_, 0);
    level_.assign(nvars_, 0);
    reason_.assign(nvars_, -1);
    polarity_.assign(nvars_, true);  // saved phase, start false
    activity_.assign(nvars_, 0.0);
    watches_.assign(2 * nvars_, {});
    for (const Clause& c : f.clauses()) {
      std::vector<int> cl;
      cl.reserve(c.size());
      for (const Lit& l : c) cl.push_back(ilit(l));
      add_clause_internal(std::move(cl));
      if (contradiction_) return;
    }
  }

  SolveResult solve(unsigned seed, double timeout_s = 0.0) {
    const auto start = std::chrono::steady_clock::now();
    SolveResult res;
    auto finish = [&](SolveStatus s) {
      res.status = s;
      res.decisions = decisions_;
      res.conflicts = conflicts_;
      res.wall_time =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      return res;
    };

    if (contradiction_) return finish(SolveStatus::Unsat);

    std::mt19937 rng(seed);
    for (int v = 0; v < nvars_; ++v)
      activity_[v] = (rng() % 1024) * 1e-6;  // seeded tie-breaking
    VarHeap heap(activity_);
    for (int v = 0; v < nvars_; ++v) heap.insert(v);

    if (propagate() >= 0) return finish(SolveStatus::Unsat);

    int restart = 0;
    std::uint64_t conflict_budget =
        static_cast<std::uint64_t>(100 * luby(restart));
    std::uint64_t conflicts_here = 0;

    for (;;) {
      const int confl = propagate();
      if (confl >= 0) {
        ++conflicts_;
        ++conflicts_here;
        if (decision_level() == 0) return finish(SolveStatus::Unsat);
        std::vector<int> learnt;
        int back_level = 0;
        analyze(confl, learnt, back_level);
        backtrack(back_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          const int ci = add_learnt(learnt);
          enqueue(learnt[0], ci);
        }
        decay_activity();
        for (int v : bumped_) heap.bumped(v);
        bumped_.clear();
        for (int v : unassigned_buffer_) heap.insert(v);
        unassigned_buffer_.clear();
        if ((conflicts_ & 255) == 0 && timeout_s > 0) {
          const double elapsed = std::chrono::duration<double>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
          if (elapsed > timeout_s) return finish(SolveStatus::Timeout);
        }
      } else {
        if (conflicts_here >= conflict_budget) {
          conflicts_here = 0;
          conflict_budget = static_cast<std::uint64_t>(100 * luby(++restart));
          backtrack(0);
          for (int v : unassigned_buffer_) heap.insert(v);
          unassigned_buffer_.clear();
          continue;
        }
        int next = -1;
        while (!heap.empty()) {
          const int v = heap.pop();
          if (val_[v] == 0) {
            next = v;
            break;
          }
        }
        if (next < 0) {
          res.model = extract_model();
          return finish(SolveStatus::Sat);
        }
        ++decisions_;
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        enqueue(2 * next + (polarity_[next] ? 1 : 0), -1);
      }
    }
  }

 private:
  int nvars_;
  bool contradiction_ = false;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_;  // lit -> clause indices
  std::vector<std::int8_t> val_;           // 0 undef, 1 true, -1 false
  std::vector<int> level_, reason_;
  std::vector<bool> polarity_;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<int> trail_, trail_lim_;
  std::size_t qhead_ = 0;
  std::uint64_t decisions_ = 0, conflicts_ = 0;
  std::vector<int> bumped_, unassigned_buffer_;

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  bool lit_true(int il) const {
    return val_[ivar(il)] == ((il & 1) ? -1 : 1);
  }
  bool lit_false(int il) const {
    return val_[ivar(il)] == ((il & 1) ? 1 : -1);
  }

  void add_clause_internal(std::vector<int> cl) {
    std::sort(cl.begin(), cl.end());
    cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
    for (std::size_t i = 1; i < cl.size(); ++i)
      if (ivar(cl[i]) == ivar(cl[i - 1])) return;  // tautology
    if (cl.empty()) {
      contradiction_ = true;
      return;
    }
    if (cl.size() == 1) {
      if (lit_false(cl[0])) contradiction_ = true;
      else if (!lit_true(cl[0])) enqueue(cl[0], -1);
      return;
    }
    const int ci = static_cast<int>(clauses_.size());
    watches_[cl[0]].push_back(ci);
    watches_[cl[1]].push_back(ci);
    clauses_.push_back(std::move(cl));
  }

  int add_learnt(const std::vector<int>& cl) {
    const int ci = static_cast<int>(clauses_.size());
    watches_[cl[0]].push_back(ci);
    watches_[cl[1]].push_back(ci);
    clauses_.push_back(cl);
    return ci;
  }

  void enqueue(int il, int reason) {
    const int v = ivar(il);
    val_[v] = (il & 1) ? -1 : 1;
    level_[v] = decision_level();
    reason_[v] = reason;
    polarity_[v] = (il & 1) != 0;
    trail_.push_back(il);
  }

  // Returns the index of a conflicting clause, or -1.
  int propagate() {
    while (qhead_ < trail_.size()) {
      const int il = trail_[qhead_++];
      const int falsified = ineg(il);
      auto& wl = watches_[falsified];
      std::size_t keep = 0;
      for (std::size_t wi = 0; wi < wl.size(); ++wi) {
        const int ci = wl[wi];
        auto& cl = clauses_[ci];
        if (cl[0] == falsified) std::swap(cl[0], cl[1]);
        if (lit_true(cl[0])) {
          wl[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < cl.size(); ++k) {
          if (!lit_false(cl[k])) {
            std::swap(cl[1], cl[k]);
            watches_[cl[1]].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        wl[keep++] = ci;
        if (lit_false(cl[0])) {
          // Conflict: restore remaining watches and report.
          for (std::size_t wj = wi + 1; wj < wl.size(); ++wj)
            wl[keep++] = wl[wj];
          wl.resize(keep);
          return ci;
        }
        enqueue(cl[0], ci);
      }
      wl.resize(keep);
    }
    return -1;
  }

  void bump(int v) {
    activity_[v] += var_inc_;
    bumped_.push_back(v);
    if (activity_[v] > 1e100) {
      for (double& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
  }

  void decay_activity() { var_inc_ /= 0.95; }

  // First-UIP conflict analysis; learnt[0] is the asserting literal.
  void analyze(int confl, std::vector<int>& learnt, int& back_level) {
    std::vector<bool> seen(nvars_, false);
    learnt.clear();
    learnt.push_back(0);  // placeholder for the asserting literal
    int counter = 0;
    int idx = static_cast<int>(trail_.size()) - 1;
    int il = -1;

    for (;;) {
      const auto& cl = clauses_[confl];
      for (int q : cl) {
        if (il != -1 && q == il) continue;
        const int v = ivar(q);
        if (seen[v] || level_[v] == 0) continue;
        seen[v] = true;
        bump(v);
        if (level_[v] == decision_level()) ++counter;
        else learnt.push_back(q);
      }
      while (!seen[ivar(trail_[idx])]) --idx;
      il = trail_[idx];
      seen[ivar(il)] = false;
      --idx;
      if (--counter == 0) break;
      confl = reason_[ivar(il)];
    }
    learnt[0] = ineg(il);

    back_level = 0;
    int where = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      if (level_[ivar(learnt[i])] > back_level) {
        back_level = level_[ivar(learnt[i])];
        where = static_cast<int>(i);
      }
    }
    if (learnt.size() > 1) std::swap(learnt[1], learnt[where]);
  }

  void backtrack(int target_level) {
    if (decision_level() <= target_level) return;
    const int limit = trail_lim_[target_level];
    for (int i = static_cast<int>(trail_.size()) - 1; i >= limit; --i) {
      const int v = ivar(trail_[i]);
      val_[v] = 0;
      unassigned_buffer_.push_back(v);
    }
    trail_.resize(limit);
    trail_lim_.resize(target_level);
    qhead_ = trail_.size();
  }

  std::vector<bool> extract_model() const {
    std::vector<bool> m(nvars_ + 1, false);
    for (int v = 0; v < nvars_; ++v) m[v + 1] = val_[v] == 1;
    return m;
  }
};

}  // namespace detail

/// Complete search for one model (or an UNSAT proof); deterministic per
/// seed.  Models are verified before being returned.
inline SolveResult solve(const Formula& f, unsigned seed = 0,
                         double timeout_s = 0.0) {
  detail::CdclSolver solver(f);
  SolveResult res = solver.solve(seed, timeout_s);
  if (res.status == SolveStatus::Sat) {
    if (!res.model || !check_model(f, *res.model))
      throw CnfError("internal solver returned a bad model");
  }
  return res;
}

enum class Projection { AllVars, MainsOnly };

struct EnumerateResult {
  unsigned long long count = 0;
  bool exact = true;  // false when the cap was hit; count is a lower bound
  std::vector<std::vector<bool>> models;  // main-block bits (MainsOnly) or
                                          // full assignments, 1-based
};

namespace detail {

// Exhaustive DFS with watched-literal propagation and no learning.
// Branching is on ascending variable index, main block first, so projected
// counting visits each main assignment exactly once.
class Enumerator {
 public:
  Enumerator(const Formula& f, Projection projection, unsigned long long cap,
             std::size_t collect_limit)
      : nvars_(f.num_vars()),
        nmain_(f.num_main()),
        projection_(projection),
        cap_(cap),
        collect_limit_(collect_limit) {
    val_.assign(nvars_, 0);
    watches_.assign(2 * nvars_, {});
    for (const Clause& c : f.clauses()) {
      std::vector<int> cl;
      for (const Lit& l : c) cl.push_back(ilit(l));
      std::sort(cl.begin(), cl.end());
      cl.erase(std::unique(cl.begin(), cl.end()), cl.end());
      bool taut = false;
      for (std::size_t i = 1; i < cl.size(); ++i)
        if (ivar(cl[i]) == ivar(cl[i - 1])) taut = true;
      if (taut) continue;
      if (cl.size() == 1) {
        units_.push_back(cl[0]);
        continue;
      }
      const int ci = static_cast<int>(clauses_.size());
      watches_[cl[0]].push_back(ci);
      watches_[cl[1]].push_back(ci);
      clauses_.push_back(std::move(cl));
    }
  }

  EnumerateResult run() {
    EnumerateResult res;
    for (int u : units_) {
      if (lit_false(u)) return res;  // contradictory units: zero models
      if (!lit_true(u)) enqueue(u);
    }
    if (propagate() == Conflict::Yes) return res;
    const int scope = projection_ == Projection::AllVars ? nvars_ : nmain_;
    dfs(0, scope, res);
    res.exact = !capped_;
    return res;
  }

 private:
  enum class Conflict { No, Yes };

  int nvars_, nmain_;
  Projection projection_;
  unsigned long long cap_;
  std::size_t collect_limit_;
  std::vector<std::vector<int>> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<std::int8_t> val_;
  std::vector<int> trail_;
  std::vector<int> units_;
  std::size_t qhead_ = 0;
  bool capped_ = false;

  bool lit_true(int il) const { return val_[ivar(il)] == ((il & 1) ? -1 : 1); }
  bool lit_false(int il) const { return val_[ivar(il)] == ((il & 1) ? 1 : -1); }

  void enqueue(int il) {
    val_[ivar(il)] = (il & 1) ? -1 : 1;
    trail_.push_back(il);
  }

  Conflict propagate() {
    while (qhead_ < trail_.size()) {
      const int il = trail_[qhead_++];
      const int falsified = ineg(il);
      auto& wl = watches_[falsified];
      std::size_t keep = 0;
      for (std::size_t wi = 0; wi < wl.size(); ++wi) {
        const int ci = wl[wi];
        auto& cl = clauses_[ci];
        if (cl[0] == falsified) std::swap(cl[0], cl[1]);
        if (lit_true(cl[0])) {
          wl[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < cl.size(); ++k) {
          if (!lit_false(cl[k])) {
            std::swap(cl[1], cl[k]);
            watches_[cl[1]].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        wl[keep++] = ci;
        if (lit_false(cl[0])) {
          for (std::size_t wj = wi + 1; wj < wl.size(); ++wj)
            wl[keep++] = wl[wj];
          wl.resize(keep);
          return Conflict::Yes;
        }
        enqueue(cl[0]);
      }
      wl.resize(keep);
    }
    return Conflict::No;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      val_[ivar(trail_.back())] = 0;
      trail_.pop_back();
    }
    qhead_ = trail_.size();
  }

  int next_unassigned(int hint, int limit) const {  // 0-based, < limit
    for (int v = hint; v < limit; ++v)
      if (val_[v] == 0) return v;
    return -1;
  }

  void record(EnumerateResult& res) {
    ++res.count;
    if (res.count >= cap_) capped_ = true;
    if (res.models.size() < collect_limit_) {
      const int width = projection_ == Projection::AllVars ? nvars_ : nmain_;
      std::vector<bool> m(width + 1, false);
      for (int v = 0; v < width; ++v) m[v + 1] = val_[v] == 1;
      res.models.push_back(std::move(m));
    }
  }

  void dfs(int hint, int scope, EnumerateResult& res) {
    if (capped_) return;
    const int v = next_unassigned(hint, scope);
    if (v < 0) {
      if (projection_ == Projection::AllVars) {
        record(res);  // complete, conflict-free assignment
        return;
      }
      // All mains assigned: count this projection iff an extension exists.
      if (exists(nmain_)) record(res);
      return;
    }
    for (int sign = 1; sign >= 0; --sign) {  // false branch first
      const std::size_t mark = trail_.size();
      enqueue(2 * v + sign);
      if (propagate() == Conflict::No) dfs(v + 1, scope, res);
      undo_to(mark);
      if (capped_) return;
    }
  }

  bool exists(int hint) {
    const int v = next_unassigned(hint, nvars_);
    if (v < 0) return true;
    for (int sign = 1; sign >= 0; --sign) {
      const std::size_t mark = trail_.size();
      enqueue(2 * v + sign);
      const bool ok = propagate() == Conflict::No && exists(v + 1);
      undo_to(mark);
      if (ok) return true;
    }
    return false;
  }
};

}  // namespace detail

/// Exact model counting by exhaustive DFS.  MainsOnly counts distinct
/// main-variable assignments extendable to a model.  When `cap` is hit the
/// result carries exact = false and the count is a lower bound.
inline EnumerateResult enumerate_models(const Formula& f,
                                        Projection projection,
                                        unsigned long long cap = 2'000'000,
                                        std::size_t collect_limit = 0) {
  detail::Enumerator e(f, projection, cap, collect_limit);
  return e.run();
}

}  // namespace cardenc
