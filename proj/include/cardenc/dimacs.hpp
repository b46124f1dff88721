// DIMACS CNF reading and writing.  Metadata travels in `c key value...`
// comment lines so that an instance file is self-describing.
#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "cardenc/cnf.hpp"

namespace cardenc {

struct ParseError : CnfError {
  ParseError(int line, const std::string& what)
      : CnfError("line " + std::to_string(line) + ": " + what), line_no(line) {}
  int line_no;
};
struct CountMismatch : CnfError {
  using CnfError::CnfError;
};

inline void write_dimacs(const Formula& f, std::ostream& os) {
  for (const std::string& c : f.comments()) os << "c " << c << '\n';
  os << "p cnf " << f.num_vars() << ' ' << f.clauses().size() << '\n';
  for (const Clause& cl : f.clauses()) {
    for (const Lit& l : cl) os << l.code << ' ';
    os << "0\n";
  }
}

inline std::string write_dimacs(const Formula& f) {
  std::ostringstream os;
  write_dimacs(f, os);
  return os.str();
}

/// Parses DIMACS text.  num_main defaults to the header variable count
/// unless a `c mains K` comment overrides it.
inline Formula read_dimacs(std::istream& is) {
  std::string line;
  int line_no = 0;
  int num_vars = -1;
  std::int64_t num_clauses = -1;
  int num_main = -1;
  std::vector<std::string> comments;
  std::vector<std::vector<int>> raw_clauses;
  std::vector<int> pending;

  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == 'c') {
      std::string body = line.size() > 1 && line[1] == ' ' ? line.substr(2)
                                                           : line.substr(1);
      comments.push_back(body);
      std::istringstream cs(body);
      std::string key;
      if (cs >> key && key == "mains") {
        int k;
        if (cs >> k) num_main = k;
      }
      continue;
    }
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, cnf;
      if (!(hs >> p >> cnf >> num_vars >> num_clauses) || cnf != "cnf")
        throw ParseError(line_no, "malformed problem line");
      continue;
    }
    if (num_vars < 0) throw ParseError(line_no, "clause before problem line");
    std::istringstream ls(line);
    int v;
    while (ls >> v) {
      if (v == 0) {
        if (pending.empty()) throw ParseError(line_no, "empty clause");
        raw_clauses.push_back(pending);
        pending.clear();
      } else {
        if (std::abs(v) > num_vars)
          throw ParseError(line_no, "variable index exceeds header");
        pending.push_back(v);
      }
    }
    if (!ls.eof()) throw ParseError(line_no, "bad token in clause");
  }
  if (num_vars < 0) throw ParseError(line_no, "missing problem line");
  if (!pending.empty()) throw ParseError(line_no, "unterminated clause");
  if (static_cast<std::int64_t>(raw_clauses.size()) != num_clauses)
    throw CountMismatch("header claims " + std::to_string(num_clauses) +
                        " clauses, body has " +
                        std::to_string(raw_clauses.size()));

  if (num_main < 0) num_main = num_vars;
  Formula f(num_main);
  while (f.num_vars() < num_vars) f.fresh_var();
  for (const std::string& c : comments) f.add_comment(c);
  for (const auto& rc : raw_clauses) {
    Clause cl;
    cl.reserve(rc.size());
    for (int code : rc) cl.push_back(Lit(code));
    f.add_clause(std::move(cl));
  }
  return f;
}

inline Formula read_dimacs(const std::string& text) {
  std::istringstream is(text);
  return read_dimacs(is);
}

}  // namespace cardenc
