// Uniform entry point over the three encoders, with the degenerate
// cardinality bounds handled explicitly: the grids and trees are undefined
// for r = 0 and r >= n, so those emit unit clauses or nothing.
#pragma once

#include <string>
#include <vector>

#include "cardenc/cnf.hpp"
#include "cardenc/seqcounter.hpp"
#include "cardenc/sortnet.hpp"
#include "cardenc/totalizer.hpp"

namespace cardenc {

enum class Method { SeqCounter, Tree, Sort };

struct EncodingChoice {
  Method method = Method::SeqCounter;
  SeqVariant seq;
  TreeVariant tree;
  bool tree_equality = false;
  SortVariant sort;

  bool is_equality() const {
    switch (method) {
      case Method::SeqCounter: return seq.equality;
      case Method::Tree: return tree_equality;
      case Method::Sort: return sort.kind == SortKind::Exactly;
    }
    return false;
  }

  /// Canonical variant name, as accepted by the CLI.
  std::string variant_name() const;

  static EncodingChoice parse(const std::string& method,
                              const std::string& variant);
};

inline std::string method_name(Method m) {
  switch (m) {
    case Method::SeqCounter: return "seq";
    case Method::Tree: return "tree";
    case Method::Sort: return "sort";
  }
  return "?";
}

inline std::string EncodingChoice::variant_name() const {
  switch (method) {
    case Method::SeqCounter:
      if (seq.equality) return "equality";
      if (seq.strengthen_se && seq.strengthen_transition) return "full";
      if (seq.strengthen_se) return "se";
      if (seq.strengthen_transition) return "transition";
      return "unstrengthened";
    case Method::Tree:
      if (tree_equality) return "equality";
      if (tree.sideways && tree.inequality) return "both";
      if (tree.sideways) return "sideways";
      if (tree.inequality) return "inequality";
      return "unstrengthened";
    case Method::Sort: {
      if (sort.kind == SortKind::Exactly)
        return sort.assignment == SortAssignment::Full ? "equality"
                                                       : "equality-partial";
      std::string a =
          sort.assignment == SortAssignment::Partial ? "partial" : "full";
      std::string d =
          sort.direction == SortDirection::OneWay ? "oneway" : "twoway";
      return a + "-" + d;
    }
  }
  return "?";
}

inline EncodingChoice EncodingChoice::parse(const std::string& method,
                                            const std::string& variant) {
  EncodingChoice c;
  if (method == "seq") {
    c.method = Method::SeqCounter;
    if (variant == "unstrengthened" || variant.empty()) c.seq = SeqVariant::unstrengthened();
    else if (variant == "se") c.seq = SeqVariant::with_se();
    else if (variant == "transition") c.seq = SeqVariant::with_transition();
    else if (variant == "full") c.seq = SeqVariant::fully_strengthened();
    else if (variant == "equality") c.seq = SeqVariant::equality_constraint();
    else throw BadBounds("unknown seq variant: " + variant);
  } else if (method == "tree") {
    c.method = Method::Tree;
    if (variant == "unstrengthened" || variant.empty()) c.tree = TreeVariant::unstrengthened();
    else if (variant == "sideways") c.tree = TreeVariant::with_sideways();
    else if (variant == "inequality") c.tree = TreeVariant::with_inequality();
    else if (variant == "both") c.tree = TreeVariant::with_both();
    else if (variant == "equality") c.tree_equality = true;
    else throw BadBounds("unknown tree variant: " + variant);
  } else if (method == "sort") {
    c.method = Method::Sort;
    if (variant == "partial-oneway" || variant.empty()) c.sort = SortVariant::partial_one_way();
    else if (variant == "full-oneway") c.sort = SortVariant::full_one_way();
    else if (variant == "partial-twoway") c.sort = SortVariant::partial_two_way();
    else if (variant == "full-twoway") c.sort = SortVariant::full_two_way();
    else if (variant == "equality") c.sort = SortVariant::equality_full();
    else if (variant == "equality-partial") c.sort = SortVariant::equality_partial();
    else throw BadBounds("unknown sort variant: " + variant);
  } else {
    throw BadBounds("unknown method: " + method);
  }
  return c;
}

/// Encodes <=r (or =r, per the choice) over `mains`, including the
/// degenerate bounds the per-encoder entry points reject.
inline void encode_cardinality(Formula& f, const std::vector<Var>& mains,
                               int r, const EncodingChoice& choice) {
  const int n = static_cast<int>(mains.size());
  const bool eq = choice.is_equality();
  if (r < 0) throw BadBounds("negative cardinality bound");
  if (r == 0) {
    for (Var v : mains) f.add_clause({neg(v)});  // <=0 and =0 coincide
    return;
  }
  if (r >= n) {
    if (!eq) return;  // vacuous
    if (r > n) throw BadBounds("=r with r > n is unsatisfiable");
    for (Var v : mains) f.add_clause({pos(v)});  // =n
    return;
  }
  switch (choice.method) {
    case Method::SeqCounter:
      encode_seqcounter(f, mains, r, choice.seq);
      break;
    case Method::Tree:
      if (choice.tree_equality) encode_totalizer_equality(f, mains, r);
      else encode_totalizer_atmost(f, mains, r, choice.tree.sideways,
                                   choice.tree.inequality);
      break;
    case Method::Sort:
      encode_sortnet(f, mains, r, choice.sort);
      break;
  }
}

}  // namespace cardenc
