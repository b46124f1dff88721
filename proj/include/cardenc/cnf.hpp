// CNF data model shared by all encoders: variables, literals, clauses,
// formulas and size statistics.
#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace cardenc {

/// 1-based variable index, DIMACS convention.  Indices 1..num_main are the
/// main variables; anything above is auxiliary.
using Var = int;

/// A literal is a signed variable index, never 0.
struct Lit {
  int code = 0;

  Lit() = default;
  explicit Lit(int dimacs_code) : code(dimacs_code) {}
  Lit(Var v, bool negated) : code(negated ? -v : v) {}

  Var var() const { return std::abs(code); }
  bool negated() const { return code < 0; }
  Lit operator~() const { return Lit(-code); }
  bool operator==(const Lit&) const = default;
  bool operator<(const Lit& o) const { return code < o.code; }
};

inline Lit pos(Var v) { return Lit(v, false); }
inline Lit neg(Var v) { return Lit(v, true); }

using Clause = std::vector<Lit>;

struct CnfError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyClauseError : CnfError {
  EmptyClauseError() : CnfError("empty clause (encoding bug)") {}
};
struct TautologyError : CnfError {
  TautologyError() : CnfError("tautological clause (encoding bug)") {}
};
struct UnallocatedVariableError : CnfError {
  explicit UnallocatedVariableError(Var v)
      : CnfError("literal references unallocated variable " + std::to_string(v)) {}
};
struct BadBounds : CnfError {
  using CnfError::CnfError;
};
struct ConstraintViolated : CnfError {
  using CnfError::CnfError;
};

/// Size measures of an encoding: auxiliary variables, clauses, literals and
/// main-variable literals.
struct EncodingStats {
  std::int64_t aux_vars = 0;
  std::int64_t clauses = 0;
  std::int64_t literals = 0;
  std::int64_t main_var_literals = 0;

  bool operator==(const EncodingStats&) const = default;
};

/// A growable CNF instance.  The main variables occupy indices 1..num_main
/// and are fixed at construction; encoders allocate auxiliaries above them.
/// Single-writer during construction; immutable once complete.
class Formula {
 public:
  explicit Formula(int num_main = 0)
      : num_main_(num_main), next_var_(num_main + 1) {
    if (num_main < 0) throw BadBounds("negative main-variable count");
  }

  int num_main() const { return num_main_; }
  Var next_var() const { return next_var_; }
  int num_vars() const { return next_var_ - 1; }
  int num_aux() const { return next_var_ - 1 - num_main_; }

  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::vector<std::string>& comments() const { return comments_; }

  Var fresh_var() { return next_var_++; }

  std::vector<Var> main_vars() const {
    std::vector<Var> v(num_main_);
    for (int i = 0; i < num_main_; ++i) v[i] = i + 1;
    return v;
  }

  void add_comment(std::string line) { comments_.push_back(std::move(line)); }

  /// Append a clause.  Duplicate literals are merged; tautologies and empty
  /// clauses are hard errors, since the encodings never produce either.
  void add_clause(Clause lits) {
    if (lits.empty()) throw EmptyClauseError();
    for (const Lit& l : lits) {
      if (l.var() < 1 || l.var() >= next_var_)
        throw UnallocatedVariableError(l.var());
    }
    std::sort(lits.begin(), lits.end(), [](Lit a, Lit b) {
      return a.var() != b.var() ? a.var() < b.var() : a.code < b.code;
    });
    Clause out;
    out.reserve(lits.size());
    for (const Lit& l : lits) {
      if (!out.empty() && out.back() == l) continue;  // set semantics
      if (!out.empty() && out.back().var() == l.var()) throw TautologyError();
      out.push_back(l);
    }
    if (counting_only_) {
      counted_clauses_++;
      counted_literals_ += static_cast<std::int64_t>(out.size());
      for (const Lit& l : out)
        if (l.var() <= num_main_) counted_main_literals_++;
    } else {
      clauses_.push_back(std::move(out));
    }
  }

  void add_clause(std::initializer_list<Lit> lits) { add_clause(Clause(lits)); }

  /// When set, clauses are tallied but not stored; used by the large
  /// count-sweep checks where only EncodingStats are wanted.
  void set_counting_only(bool on) { counting_only_ = on; }

  EncodingStats stats() const {
    EncodingStats s;
    s.aux_vars = num_aux();
    s.clauses = counted_clauses_;
    s.literals = counted_literals_;
    s.main_var_literals = counted_main_literals_;
    for (const Clause& c : clauses_) {
      s.clauses++;
      s.literals += static_cast<std::int64_t>(c.size());
      for (const Lit& l : c)
        if (l.var() <= num_main_) s.main_var_literals++;
    }
    return s;
  }

 private:
  int num_main_;
  Var next_var_;
  std::vector<Clause> clauses_;
  std::vector<std::string> comments_;
  bool counting_only_ = false;
  std::int64_t counted_clauses_ = 0;
  std::int64_t counted_literals_ = 0;
  std::int64_t counted_main_literals_ = 0;
};

inline Var fresh_var(Formula& f) { return f.fresh_var(); }
inline EncodingStats stats(const Formula& f) { return f.stats(); }

}  // namespace cardenc
