// Mergesort-based sorting-network encoding.  A recursive odd-even
// mergesort over the main variables produces sorted outputs a_1..a_n
// (non-increasing top to bottom); the constraint is imposed by seeding
// statuses on the sorted outputs rather than by unit clauses.  Wires can
// be active, known-true, known-false or irrelevant; known and irrelevant
// wires never receive variables, and two vertex-removal rules merge
// logically equivalent active wires.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

#include "cardenc/cnf.hpp"

namespace cardenc {

enum class WireStatus { Active, KnownTrue, KnownFalse, Irrelevant };

enum class SortDirection { OneWay, TwoWay, Backward };
enum class SortAssignment { Partial, Full };
enum class SortKind { AtMost, Exactly, AtLeast };

struct SortVariant {
  SortDirection direction = SortDirection::OneWay;
  SortAssignment assignment = SortAssignment::Partial;
  SortKind kind = SortKind::AtMost;

  static SortVariant partial_one_way() { return {}; }
  static SortVariant full_one_way() {
    return {SortDirection::OneWay, SortAssignment::Full, SortKind::AtMost};
  }
  static SortVariant partial_two_way() {
    return {SortDirection::TwoWay, SortAssignment::Partial, SortKind::AtMost};
  }
  static SortVariant full_two_way() {
    return {SortDirection::TwoWay, SortAssignment::Full, SortKind::AtMost};
  }
  static SortVariant equality_full() {
    return {SortDirection::TwoWay, SortAssignment::Full, SortKind::Exactly};
  }
  static SortVariant equality_partial() {
    return {SortDirection::TwoWay, SortAssignment::Partial, SortKind::Exactly};
  }
};

/// out_top carries max(in_top, in_bot); out_bot carries the min.
struct Comparator {
  int in_top, in_bot, out_top, out_bot;
};

class SortNetwork {
 public:
  int n = 0;
  int num_wires = 0;                // wire ids 1..num_wires
  std::vector<int> inputs;          // wires carrying x_1..x_n
  std::vector<int> outputs;         // sorted outputs a_1..a_n == wires 1..n
  std::vector<Comparator> comps;    // topological order
  std::vector<WireStatus> status;   // indexed by wire id
  std::vector<int> merge_parent;    // union-find over wires

  bool is_input_wire(int w) const { return input_flag_[w]; }

  int find(int w) const {
    while (merge_parent[w] != w) w = merge_parent[w];
    return w;
  }

  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Root preference: a main-variable wire, else the smaller id.
    int root = a, child = b;
    if (input_flag_[b] || (!input_flag_[a] && b < a)) std::swap(root, child);
    merge_parent[child] = root;
    // A known status wins over active; active wins over irrelevant.
    WireStatus sa = status[root], sb = status[child];
    auto rank = [](WireStatus s) {
      switch (s) {
        case WireStatus::KnownTrue:
        case WireStatus::KnownFalse: return 2;
        case WireStatus::Active: return 1;
        default: return 0;
      }
    };
    status[root] = rank(sa) >= rank(sb) ? sa : sb;
  }

  void finish_build(std::vector<int>&& raw_inputs,
                    std::vector<int>&& raw_outputs, int raw_count) {
    // Relabel so the sorted outputs are wires 1..n and everything else
    // follows in creation order.
    n = static_cast<int>(raw_outputs.size());
    std::vector<int> relabel(raw_count + 1, 0);
    int next = 1;
    for (int w : raw_outputs) relabel[w] = next++;
    for (int w = 1; w <= raw_count; ++w)
      if (relabel[w] == 0) relabel[w] = next++;
    num_wires = raw_count;
    inputs.resize(raw_inputs.size());
    outputs.resize(raw_outputs.size());
    for (std::size_t i = 0; i < raw_inputs.size(); ++i)
      inputs[i] = relabel[raw_inputs[i]];
    for (std::size_t i = 0; i < raw_outputs.size(); ++i)
      outputs[i] = relabel[raw_outputs[i]];
    for (Comparator& c : comps) {
      c.in_top = relabel[c.in_top];
      c.in_bot = relabel[c.in_bot];
      c.out_top = relabel[c.out_top];
      c.out_bot = relabel[c.out_bot];
    }
    status.assign(num_wires + 1, WireStatus::Active);
    merge_parent.resize(num_wires + 1);
    std::iota(merge_parent.begin(), merge_parent.end(), 0);
    input_flag_.assign(num_wires + 1, false);
    for (int w : inputs) input_flag_[w] = true;
  }

 private:
  std::vector<bool> input_flag_;
};

namespace detail {

struct NetBuilder {
  SortNetwork net;
  int next_wire = 0;

  int fresh() { return ++next_wire; }

  std::pair<int, int> comparator(int top, int bot) {
    int t = fresh(), b = fresh();
    net.comps.push_back({top, bot, t, b});
    return {t, b};
  }

  // Batcher odd-even merge of two non-increasing sorted wire lists.
  std::vector<int> merge(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.size() == 1 && b.size() == 1) {
      auto [t, bt] = comparator(a[0], b[0]);
      return {t, bt};
    }
    std::vector<int> ao, ae, bo, be;
    for (std::size_t i = 0; i < a.size(); ++i)
      (i % 2 == 0 ? ao : ae).push_back(a[i]);
    for (std::size_t i = 0; i < b.size(); ++i)
      (i % 2 == 0 ? bo : be).push_back(b[i]);
    std::vector<int> d = merge(ao, bo);
    std::vector<int> e = merge(ae, be);
    std::vector<int> z{d[0]};
    const std::size_t pairs = std::min(e.size(), d.size() - 1);
    for (std::size_t i = 0; i < pairs; ++i) {
      auto [t, bt] = comparator(d[i + 1], e[i]);
      z.push_back(t);
      z.push_back(bt);
    }
    if (d.size() == e.size()) z.push_back(e.back());
    else if (d.size() == e.size() + 2) z.push_back(d.back());
    return z;
  }

  std::vector<int> sort(const std::vector<int>& in) {
    if (in.size() <= 1) return in;
    const std::size_t half = (in.size() + 1) / 2;
    std::vector<int> lo(in.begin(), in.begin() + half);
    std::vector<int> hi(in.begin() + half, in.end());
    std::vector<int> sorted_lo = sort(lo);  // sequence: wire ids must not
    std::vector<int> sorted_hi = sort(hi);  // depend on argument order
    return merge(sorted_lo, sorted_hi);
  }
};

}  // namespace detail

/// Recursive halving plus odd-even merge.  This construction is pinned:
/// one-way total model counts and exact size statistics depend on it.
inline SortNetwork build_network(int n) {
  if (n < 1) throw BadBounds("network needs n >= 1");
  detail::NetBuilder b;
  std::vector<int> raw_inputs;
  for (int i = 0; i < n; ++i) raw_inputs.push_back(b.fresh());
  std::vector<int> ins = raw_inputs;
  std::vector<int> raw_outputs = b.sort(ins);
  SortNetwork net = std::move(b.net);
  net.finish_build(std::move(raw_inputs), std::move(raw_outputs), b.next_wire);
  return net;
}

/// Two-way functional simulation; the oracle for encoding correctness.
inline std::vector<bool> eval_network(const SortNetwork& net,
                                      const std::vector<bool>& input) {
  if (static_cast<int>(input.size()) != net.n)
    throw BadBounds("input size must equal n");
  std::vector<bool> val(net.num_wires + 1, false);
  for (int i = 0; i < net.n; ++i) val[net.inputs[i]] = input[i];
  for (const Comparator& c : net.comps) {
    val[c.out_top] = val[c.in_top] || val[c.in_bot];
    val[c.out_bot] = val[c.in_top] && val[c.in_bot];
  }
  std::vector<bool> out(net.n);
  for (int i = 0; i < net.n; ++i) out[i] = val[net.outputs[i]];
  return out;
}

/// Seeds output statuses from the variant and runs the semantic deduction
/// rules to fixpoint, then marks wires that cannot affect any active wire
/// as irrelevant (right to left; a wire is kept only if it appears in a
/// surviving clause of its consumer).
inline void propagate_statuses(SortNetwork& net, const SortVariant& variant,
                               int r) {
  const int n = net.n;
  if (r < 1 || r >= n) throw BadBounds("needs 1 <= r < n");
  auto seed = [&](int idx, WireStatus s) {  // idx is 1-based output position
    net.status[net.outputs[idx - 1]] = s;
  };
  switch (variant.kind) {
    case SortKind::AtMost:
      if (variant.assignment == SortAssignment::Partial) {
        seed(r + 1, WireStatus::KnownFalse);
      } else {
        for (int i = r + 1; i <= n; ++i) seed(i, WireStatus::KnownFalse);
      }
      break;
    case SortKind::Exactly:
      if (variant.assignment == SortAssignment::Partial) {
        seed(r, WireStatus::KnownTrue);
        seed(r + 1, WireStatus::KnownFalse);
      } else {
        for (int i = 1; i <= r; ++i) seed(i, WireStatus::KnownTrue);
        for (int i = r + 1; i <= n; ++i) seed(i, WireStatus::KnownFalse);
      }
      break;
    case SortKind::AtLeast:
      if (variant.assignment == SortAssignment::Partial) {
        seed(r, WireStatus::KnownTrue);
      } else {
        for (int i = 1; i <= r; ++i) seed(i, WireStatus::KnownTrue);
      }
      break;
  }

  auto is_false = [&](int w) { return net.status[w] == WireStatus::KnownFalse; };
  auto is_true = [&](int w) { return net.status[w] == WireStatus::KnownTrue; };
  auto set = [&](int w, WireStatus s, bool& changed) {
    if (net.status[w] == s) return;
    if (net.status[w] != WireStatus::Active)
      throw CnfError("contradictory wire status during propagation");
    net.status[w] = s;
    changed = true;
  };

  // The statuses are semantic facts about the functional network, so the
  // two-way deduction rules apply whatever clause direction is emitted.
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Comparator& c : net.comps) {
      if (is_false(c.out_top)) {
        set(c.in_top, WireStatus::KnownFalse, changed);
        set(c.in_bot, WireStatus::KnownFalse, changed);
      }
      if (is_false(c.in_top) && is_false(c.in_bot))
        set(c.out_top, WireStatus::KnownFalse, changed);
      if (is_false(c.in_top) || is_false(c.in_bot))
        set(c.out_bot, WireStatus::KnownFalse, changed);
      if (is_true(c.out_bot)) {
        set(c.in_top, WireStatus::KnownTrue, changed);
        set(c.in_bot, WireStatus::KnownTrue, changed);
      }
      if (is_true(c.in_top) && is_true(c.in_bot))
        set(c.out_bot, WireStatus::KnownTrue, changed);
      if (is_true(c.in_top) || is_true(c.in_bot))
        set(c.out_top, WireStatus::KnownTrue, changed);
    }
  }

  // Irrelevance: unconstrained network outputs first, then right to left.
  std::vector<bool> is_net_output(net.num_wires + 1, false);
  for (int w : net.outputs) is_net_output[w] = true;
  for (int w : net.outputs)
    if (net.status[w] == WireStatus::Active) net.status[w] = WireStatus::Irrelevant;

  const bool fwd = variant.direction != SortDirection::Backward;
  const bool bwd = variant.direction != SortDirection::OneWay;
  for (auto it = net.comps.rbegin(); it != net.comps.rend(); ++it) {
    const Comparator& c = *it;
    bool need_top = false, need_bot = false;
    // A clause survives if no known literal satisfies it and no wire in it
    // is irrelevant; an input is needed if it appears in a survivor.
    auto survives = [&](std::initializer_list<std::pair<int, bool>> lits) {
      for (auto [w, positive] : lits) {
        WireStatus s = net.status[w];
        if (s == WireStatus::Irrelevant) return false;
        if (positive && s == WireStatus::KnownTrue) return false;
        if (!positive && s == WireStatus::KnownFalse) return false;
      }
      return true;
    };
    auto note = [&](std::initializer_list<std::pair<int, bool>> lits) {
      if (!survives(lits)) return;
      for (auto [w, positive] : lits) {
        if (w == c.in_top && net.status[w] == WireStatus::Active) need_top = true;
        if (w == c.in_bot && net.status[w] == WireStatus::Active) need_bot = true;
      }
    };
    if (fwd) {
      note({{c.in_top, false}, {c.out_top, true}});
      note({{c.in_bot, false}, {c.out_top, true}});
      note({{c.in_top, false}, {c.in_bot, false}, {c.out_bot, true}});
    }
    if (bwd) {
      note({{c.in_top, true}, {c.out_bot, false}});
      note({{c.in_bot, true}, {c.out_bot, false}});
      note({{c.in_top, true}, {c.in_bot, true}, {c.out_top, false}});
    }
    auto demote = [&](int w) {
      if (net.status[w] == WireStatus::Active && !net.is_input_wire(w))
        net.status[w] = WireStatus::Irrelevant;
    };
    if (!need_top) demote(c.in_top);
    if (!need_bot) demote(c.in_bot);
  }
}

/// Vertex removal.  Rule A: one known-false input plus known-false bottom
/// output makes the remaining input and the top output logically
/// equivalent; they are merged everywhere.  Rule B (one-way only): a
/// comparator whose bottom output is irrelevant while the other three
/// wires are active collapses those three into a single variable.
inline void reduce_network(SortNetwork& net, bool one_way) {
  auto st = [&](int w) { return net.status[net.find(w)]; };
  for (const Comparator& c : net.comps) {
    const bool top_false = st(c.in_top) == WireStatus::KnownFalse;
    const bool bot_false = st(c.in_bot) == WireStatus::KnownFalse;
    if (st(c.out_bot) == WireStatus::KnownFalse && (top_false != bot_false)) {
      net.merge(top_false ? c.in_bot : c.in_top, c.out_top);
      continue;
    }
    if (one_way && st(c.out_bot) == WireStatus::Irrelevant &&
        st(c.in_top) == WireStatus::Active &&
        st(c.in_bot) == WireStatus::Active &&
        st(c.out_top) == WireStatus::Active &&
        !net.is_input_wire(net.find(c.in_top)) &&
        !net.is_input_wire(net.find(c.in_bot))) {
      net.merge(c.in_top, c.in_bot);
      net.merge(c.in_top, c.out_top);
    }
  }
}

/// Plain-text dump of wires, statuses and comparators, for diff-testing.
inline std::string dump_network(const SortNetwork& net) {
  std::ostringstream os;
  auto code = [&](int w) {
    switch (net.status[net.find(w)]) {
      case WireStatus::Active: return 'a';
      case WireStatus::KnownTrue: return 'T';
      case WireStatus::KnownFalse: return 'F';
      default: return 'i';
    }
  };
  os << "n " << net.n << " wires " << net.num_wires << '\n';
  os << "inputs";
  for (int w : net.inputs) os << ' ' << net.find(w) << code(w);
  os << "\noutputs";
  for (int w : net.outputs) os << ' ' << net.find(w) << code(w);
  os << '\n';
  for (const Comparator& c : net.comps)
    os << "comp " << net.find(c.in_top) << code(c.in_top) << ' '
       << net.find(c.in_bot) << code(c.in_bot) << " -> "
       << net.find(c.out_top) << code(c.out_top) << ' ' << net.find(c.out_bot)
       << code(c.out_bot) << '\n';
  return os.str();
}

struct SortEncodeResult {
  SortNetwork network;
  std::map<int, Var> output_vars;  // 1-based sorted-output index -> Var
};

/// Builds, propagates, reduces (optional), allocates variables for active
/// wire classes and emits the comparator clauses for the direction,
/// substituting known statuses and dropping clauses on irrelevant wires.
inline SortEncodeResult encode_sortnet(Formula& f, const std::vector<Var>& mains,
                                       int r, const SortVariant& variant,
                                       bool apply_reductions = true) {
  const int n = static_cast<int>(mains.size());
  if (r < 1 || r >= n) throw BadBounds("sort encoding needs 1 <= r < n");

  SortNetwork net = build_network(n);
  propagate_statuses(net, variant, r);
  if (apply_reductions)
    reduce_network(net, variant.direction == SortDirection::OneWay);

  // Representative wire -> variable.  Input wires map to their mains.
  std::vector<Var> wire_var(net.num_wires + 1, 0);
  for (int i = 0; i < n; ++i) wire_var[net.inputs[i]] = mains[i];
  for (int w = 1; w <= net.num_wires; ++w) {
    const int rep = net.find(w);
    if (rep != w || net.status[rep] != WireStatus::Active) continue;
    if (wire_var[rep] == 0) wire_var[rep] = f.fresh_var();
  }

  auto emit = [&](std::initializer_list<std::pair<int, bool>> lits) {
    Clause c;
    for (auto [w, positive] : lits) {
      const int rep = net.find(w);
      switch (net.status[rep]) {
        case WireStatus::Irrelevant: return;
        case WireStatus::KnownTrue:
          if (positive) return;  // satisfied
          continue;
        case WireStatus::KnownFalse:
          if (!positive) return;
          continue;
        case WireStatus::Active:
          c.push_back(Lit(wire_var[rep], !positive));
      }
    }
    // Merged wires can turn a clause into a tautology or shrink it to a
    // duplicate pair; both mean the comparator vanished.
    std::sort(c.begin(), c.end(),
              [](Lit a, Lit b) { return a.code < b.code; });
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i].var() == c[i - 1].var()) return;  // tautology
    if (c.empty()) return;
    f.add_clause(std::move(c));
  };

  const bool fwd = variant.direction != SortDirection::Backward;
  const bool bwd = variant.direction != SortDirection::OneWay;
  for (const Comparator& c : net.comps) {
    if (fwd) {
      emit({{c.in_top, false}, {c.out_top, true}});
      emit({{c.in_bot, false}, {c.out_top, true}});
      emit({{c.in_top, false}, {c.in_bot, false}, {c.out_bot, true}});
    }
    if (bwd) {
      emit({{c.in_top, true}, {c.out_bot, false}});
      emit({{c.in_bot, true}, {c.out_bot, false}});
      emit({{c.in_top, true}, {c.in_bot, true}, {c.out_top, false}});
    }
  }

  SortEncodeResult res;
  res.output_vars.clear();
  for (int i = 1; i <= n; ++i) {
    const int rep = net.find(net.outputs[i - 1]);
    if (net.status[rep] == WireStatus::Active && wire_var[rep] != 0)
      res.output_vars[i] = wire_var[rep];
  }
  res.network = std::move(net);
  return res;
}

}  // namespace cardenc
