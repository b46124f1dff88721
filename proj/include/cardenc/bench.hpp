// Benchmark harness: runs encoding x testcase matrices against a solver
// with repeated seeds, and summarizes effort with medians and the
// Rousseeuw-Croux S_n dispersion of log10 values.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cardenc/cnf.hpp"
#include "cardenc/dimacs.hpp"
#include "cardenc/encode.hpp"
#include "cardenc/external.hpp"
#include "cardenc/geometry.hpp"
#include "cardenc/solve.hpp"

namespace cardenc {

struct TooFewValues : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rousseeuw-Croux S_n: c * lowmed_i { highmed_{j!=i} |x_i - x_j| } with
/// c = 1.1926.  lowmed of m values is the floor((m+1)/2)-th order
/// statistic; highmed of the m-1 differences is the (floor(m/2)+1)-th.
inline double sn_dispersion(const std::vector<double>& values) {
  const int m = static_cast<int>(values.size());
  if (m < 2) throw TooFewValues("sn_dispersion needs at least 2 values");
  std::vector<double> inner;
  inner.reserve(m);
  std::vector<double> diffs(m - 1);
  for (int i = 0; i < m; ++i) {
    int k = 0;
    for (int j = 0; j < m; ++j)
      if (j != i) diffs[k++] = std::abs(values[i] - values[j]);
    const int hi_rank = m / 2;  // 0-based index of the (floor(m/2)+1)-th
    std::nth_element(diffs.begin(), diffs.begin() + hi_rank, diffs.end());
    inner.push_back(diffs[hi_rank]);
  }
  const int lo_rank = (m + 1) / 2 - 1;  // 0-based
  std::nth_element(inner.begin(), inner.begin() + lo_rank, inner.end());
  return 1.1926 * inner[lo_rank];
}

enum class EffortMetric { WallTime, Decisions, Conflicts };

inline EffortMetric parse_metric(const std::string& s) {
  if (s == "time" || s == "wall_time") return EffortMetric::WallTime;
  if (s == "decisions") return EffortMetric::Decisions;
  if (s == "conflicts") return EffortMetric::Conflicts;
  throw ConfigError("unknown metric: " + s);
}

inline std::string metric_name(EffortMetric m) {
  switch (m) {
    case EffortMetric::WallTime: return "time";
    case EffortMetric::Decisions: return "decisions";
    default: return "conflicts";
  }
}

/// One benchmark case: a test instance plus an encoding choice.
struct BenchCase {
  TestCaseSpec spec;
  EncodingChoice choice;

  std::string label() const {
    return std::string(sequence_name(spec.sequence)) + "-L" +
           std::to_string(spec.L) +
           (spec.sat_polarity ? "-sat" : "-unsat") + "-" +
           ordering_name(spec.ordering) + "-" + method_name(choice.method) +
           "-" + choice.variant_name();
  }
};

struct BenchConfig {
  std::vector<BenchCase> cases;
  int repeats = 19;
  unsigned seed_base = 1;
  double timeout_s = 60.0;
  std::string solver;  // command template; empty = embedded CDCL
  EffortMetric metric = EffortMetric::WallTime;
  int workers = 1;
  std::string csv_path;
  std::string svg_path;
};

/// Line-oriented `key = value` config.  `case` lines may repeat:
///   case = <sequence> <L> <sat|unsat> <row|spiral|random> <method> <variant>
inline BenchConfig parse_bench_config(std::istream& in) {
  BenchConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "repeats") cfg.repeats = std::stoi(val);
      else if (key == "seed") cfg.seed_base = static_cast<unsigned>(std::stoul(val));
      else if (key == "timeout") cfg.timeout_s = std::stod(val);
      else if (key == "solver") cfg.solver = val;
      else if (key == "metric") cfg.metric = parse_metric(val);
      else if (key == "workers") cfg.workers = std::stoi(val);
      else if (key == "csv") cfg.csv_path = val;
      else if (key == "svg") cfg.svg_path = val;
      else if (key == "case") {
        std::istringstream cs(val);
        std::string seq, pol, ord, method, variant;
        int L = 0;
        if (!(cs >> seq >> L >> pol >> ord >> method >> variant))
          throw ConfigError("bad case line");
        BenchCase bc;
        bc.spec.sequence = parse_sequence(seq);
        bc.spec.L = L;
        if (pol == "sat") bc.spec.sat_polarity = true;
        else if (pol == "unsat") bc.spec.sat_polarity = false;
        else throw ConfigError("polarity must be sat or unsat");
        bc.spec.ordering = parse_ordering(ord);
        bc.choice = EncodingChoice::parse(method, variant);
        cfg.cases.push_back(bc);
      } else {
        throw ConfigError("unknown key: " + key);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (cfg.repeats < 1) throw ConfigError("repeats must be >= 1");
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  return cfg;
}

struct RunRecord {
  int case_index = 0;
  std::string label;
  int repeat = 0;
  unsigned seed = 0;
  SolveStatus status = SolveStatus::Timeout;
  double wall_time = 0.0;
  std::uint64_t decisions = 0;  // 0 for external solvers
  std::uint64_t conflicts = 0;
  int vars = 0;
  int clauses = 0;
};

struct Summary {
  int case_index = 0;
  std::string label;
  int total = 0;
  int completed = 0;
  int timeouts = 0;
  bool censored = false;            // > half the repeats timed out
  std::optional<double> median;     // of the metric, completions only
  std::optional<double> sn_log10;   // S_n of log10(metric), completions only
  int vars = 0;
  int clauses = 0;
};

namespace detail {

inline double metric_value(const RunRecord& r, EffortMetric m) {
  switch (m) {
    case EffortMetric::WallTime: return r.wall_time;
    case EffortMetric::Decisions: return static_cast<double>(r.decisions);
    default: return static_cast<double>(r.conflicts);
  }
}

}  // namespace detail

/// Runs the full case x repeat matrix.  Instances are built once per case
/// (byte-deterministic); run seeds are seed_base + repeat index.  Records
/// come back in case-major, repeat-minor order regardless of worker count.
inline std::vector<RunRecord> run_suite(const BenchConfig& cfg) {
  struct Job {
    int case_index;
    int repeat;
  };
  std::vector<Formula> instances;
  instances.reserve(cfg.cases.size());
  for (std::size_t c = 0; c < cfg.cases.size(); ++c) {
    TestCaseSpec spec = cfg.cases[c].spec;
    spec.seed = cfg.seed_base;  // ordering shuffle seed is config-level
    instances.push_back(build_instance(spec, cfg.cases[c].choice));
  }

  std::vector<Job> jobs;
  for (std::size_t c = 0; c < cfg.cases.size(); ++c)
    for (int rep = 0; rep < cfg.repeats; ++rep)
      jobs.push_back({static_cast<int>(c), rep});
  std::vector<RunRecord> records(jobs.size());

  auto run_one = [&](const Job& job, RunRecord& rec) {
    const Formula& f = instances[job.case_index];
    rec.case_index = job.case_index;
    rec.label = cfg.cases[job.case_index].label();
    rec.repeat = job.repeat;
    rec.seed = cfg.seed_base + static_cast<unsigned>(job.repeat);
    rec.vars = f.num_vars();
    rec.clauses = static_cast<int>(f.stats().clauses);
    if (cfg.solver.empty()) {
      const SolveResult r = solve(f, rec.seed, cfg.timeout_s);
      rec.status = r.status;
      rec.wall_time = r.wall_time;
      rec.decisions = r.decisions;
      rec.conflicts = r.conflicts;
    } else {
      SolverCommand sc;
      sc.command = cfg.solver;
      sc.timeout_s = cfg.timeout_s;
      const ExternalResult r = run_external(f, sc, rec.seed);
      rec.status = r.status;
      rec.wall_time = r.wall_time;
    }
  };

  if (cfg.workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_one(jobs[i], records[i]);
  } else {
    std::mutex mu;
    std::size_t next = 0;
    auto worker = [&]() {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard<std::mutex> lk(mu);
          if (next >= jobs.size()) return;
          i = next++;
        }
        run_one(jobs[i], records[i]);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < cfg.workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

/// Per-case median + S_n(log10) over completed runs.  If more than half
/// the repeats timed out the median is censored (reported as "> timeout").
inline std::vector<Summary> summarize(const std::vector<RunRecord>& records,
                                      EffortMetric metric) {
  std::map<int, std::vector<const RunRecord*>> by_case;
  for (const RunRecord& r : records) by_case[r.case_index].push_back(&r);
  std::vector<Summary> out;
  for (auto& [ci, recs] : by_case) {
    std::sort(recs.begin(), recs.end(),
              [](const RunRecord* a, const RunRecord* b) {
                return a->repeat < b->repeat;
              });
    Summary s;
    s.case_index = ci;
    s.label = recs.front()->label;
    s.total = static_cast<int>(recs.size());
    s.vars = recs.front()->vars;
    s.clauses = recs.front()->clauses;
    std::vector<double> vals;
    for (const RunRecord* r : recs) {
      if (r->status == SolveStatus::Timeout) ++s.timeouts;
      else {
        ++s.completed;
        vals.push_back(detail::metric_value(*r, metric));
      }
    }
    s.censored = 2 * s.timeouts > s.total;
    if (!s.censored && !vals.empty()) {
      std::sort(vals.begin(), vals.end());
      s.median = vals[(vals.size() - 1) / 2];  // lower median, a sample point
    }
    if (vals.size() >= 2) {
      std::vector<double> logs;
      for (double v : vals) logs.push_back(std::log10(std::max(v, 1e-9)));
      s.sn_log10 = sn_dispersion(logs);
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline constexpr const char* kCsvSchema = "# cardenc-bench-csv v1";

inline void write_csv(std::ostream& os, const std::vector<Summary>& summaries,
                      EffortMetric metric) {
  os << kCsvSchema << "\n";
  os << "case,label,vars,clauses,metric,total,completed,timeouts,median,sn_log10\n";
  os << std::setprecision(12);
  for (const Summary& s : summaries) {
    os << s.case_index << ',' << s.label << ',' << s.vars << ',' << s.clauses
       << ',' << metric_name(metric) << ',' << s.total << ',' << s.completed
       << ',' << s.timeouts << ',';
    if (s.censored) os << ">timeout";
    else if (s.median) os << *s.median;
    os << ',';
    if (s.sn_log10) os << *s.sn_log10;
    os << '\n';
  }
}

inline std::vector<Summary> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvSchema)
    throw ConfigError("missing or unrecognized CSV schema line");
  if (!std::getline(in, line)) throw ConfigError("missing CSV column header");
  std::vector<Summary> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cols.push_back(cell);
    while (cols.size() < 10) cols.emplace_back();
    Summary s;
    s.case_index = std::stoi(cols[0]);
    s.label = cols[1];
    s.vars = std::stoi(cols[2]);
    s.clauses = std::stoi(cols[3]);
    s.total = std::stoi(cols[5]);
    s.completed = std::stoi(cols[6]);
    s.timeouts = std::stoi(cols[7]);
    if (cols[8] == ">timeout") s.censored = true;
    else if (!cols[8].empty()) s.median = std::stod(cols[8]);
    if (!cols[9].empty()) s.sn_log10 = std::stod(cols[9]);
    out.push_back(std::move(s));
  }
  return out;
}

/// Minimal SVG: one column per case with a linear-scale clause-count bar
/// and a log-scale point for the median effort.
inline void write_svg(std::ostream& os, const std::vector<Summary>& summaries,
                      EffortMetric metric) {
  const int col_w = 90, left = 70, top = 20, plot_h = 320, bottom = 110;
  const int width = left + col_w * std::max<int>(1, summaries.size()) + 30;
  const int height = top + plot_h + bottom;

  double max_clauses = 1.0, max_log = -9.0, min_log = 9.0;
  for (const Summary& s : summaries) {
    max_clauses = std::max(max_clauses, static_cast<double>(s.clauses));
    if (s.median && *s.median > 0) {
      max_log = std::max(max_log, std::log10(*s.median));
      min_log = std::min(min_log, std::log10(*s.median));
    }
  }
  if (max_log < min_log) { min_log = 0.0; max_log = 1.0; }
  if (max_log - min_log < 1.0) max_log = min_log + 1.0;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n";
  os << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "  <text x=\"10\" y=\"14\" font-size=\"12\">bars: clauses (linear)"
        " | points: median " << metric_name(metric) << " (log)</text>\n";
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const Summary& s = summaries[i];
    const int x0 = left + static_cast<int>(i) * col_w;
    const double bar_h = plot_h * (s.clauses / max_clauses);
    os << "  <rect x=\"" << x0 + 10 << "\" y=\"" << top + plot_h - bar_h
       << "\" width=\"30\" height=\"" << bar_h
       << "\" fill=\"#b8cbe4\" stroke=\"#4a6fa5\"/>\n";
    if (s.median && *s.median > 0) {
      const double frac =
          (std::log10(*s.median) - min_log) / (max_log - min_log);
      const double cy = top + plot_h - frac * plot_h;
      os << "  <circle cx=\"" << x0 + 55 << "\" cy=\"" << cy
         << "\" r=\"5\" fill=\"#c0392b\"/>\n";
    } else if (s.censored) {
      os << "  <text x=\"" << x0 + 48 << "\" y=\"" << top + 14
         << "\" font-size=\"11\" fill=\"#c0392b\">&gt;t/o</text>\n";
    }
    os << "  <text x=\"" << x0 + 45 << "\" y=\"" << top + plot_h + 12
       << "\" font-size=\"9\" text-anchor=\"middle\" transform=\"rotate(45 "
       << x0 + 45 << ' ' << top + plot_h + 12 << ")\">" << s.label
       << "</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace cardenc
