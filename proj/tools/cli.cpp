#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfree/identities.hpp"
#include "rfree/omega.hpp"
#include "rfree/scan_io.hpp"

namespace rfree::cli {

namespace {

struct RunConfig {
  double precision = 1e-30;
  std::uint64_t sieve_limit = 0;  // 0: just large enough for the request
  std::uint64_t enumeration_budget = 100'000'000;
  unsigned workers = 0;
  std::string output_format = "csv";
  std::string output_path;

  int digits() const { return digits_for_tolerance(precision); }
};

/// A failed check rather than an error: output is still written, the exit status is 1.
struct Outcome {
  bool passed = true;
};

MobiusTable make_table(const RunConfig& cfg, std::uint64_t needed) {
  const std::uint64_t limit = cfg.sieve_limit > 0 ? cfg.sieve_limit : std::max<std::uint64_t>(needed, 1);
  MobiusTable table(limit);
  table.require(needed, "sieve");
  return table;
}

std::string decimal(const BigRational& q, int digits) {
  return Ball::exact(q, working_bits(digits, 64)).mid().to_fixed(digits);
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) line += ',';
    line += fields[i];
  }
  return line;
}

/// Emits rows either as CSV (header + lines) or as a JSON array of string-valued objects.
class Table {
public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& out, const std::string& format) const {
    if (format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& row : rows_) {
        nlohmann::json obj;
        for (std::size_t i = 0; i < columns_.size(); ++i) obj[columns_[i]] = row[i];
        arr.push_back(std::move(obj));
      }
      out << arr.dump(2) << '\n';
      return;
    }
    out << csv_line(columns_) << '\n';
    for (const auto& row : rows_) out << csv_line(row) << '\n';
  }

private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

void emit(const RunConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (cfg.output_path.empty()) {
    body(out);
    return;
  }
  std::ofstream file(cfg.output_path);
  if (!file) throw std::ios_base::failure("cannot open output file " + cfg.output_path);
  body(file);
  file.flush();
  if (!file) throw std::ios_base::failure("write failed for " + cfg.output_path);
}

std::vector<std::string> record_fields(const CountRecord& rec, int digits) {
  const ScanRow row = to_row(rec, digits);
  return {std::to_string(rec.params.r),
          std::to_string(rec.params.k),
          std::to_string(rec.params.x),
          row.count.get_str(),
          row.main_term,
          row.error,
          row.normalized_error,
          row.density,
          to_string(error_scale(rec.params.r, rec.params.k))};
}

Outcome cmd_count(const RunConfig& cfg, unsigned r, unsigned k, std::uint64_t x, bool with_oracle, std::ostream& out) {
  const CountParams params{r, k, x};
  const MobiusTable table = make_table(cfg, integer_root(x, r));
  const ZetaValue zeta = zeta_value(r * k, cfg.precision);
  const CountRecord rec = count_record(params, table, zeta, cfg.digits());

  std::vector<std::string> columns{"r", "k", "x", "V", "main_term", "error", "normalized_error", "density", "scale"};
  std::vector<std::string> fields = record_fields(rec, cfg.digits());
  Outcome outcome;
  if (with_oracle) {
    const BigInt oracle = count_oracle(params, cfg.enumeration_budget);
    outcome.passed = oracle == rec.count;
    columns.insert(columns.end(), {"oracle", "agreement"});
    fields.insert(fields.end(), {oracle.get_str(), outcome.passed ? "true" : "false"});
  }
  Table t(columns);
  t.add(fields);
  emit(cfg, out, [&](std::ostream& o) { t.write(o, cfg.output_format); });
  return outcome;
}

Outcome cmd_jordan(const RunConfig& cfg, std::uint64_t n, unsigned r, unsigned k, bool with_oracle, std::ostream& out) {
  const TotientParams p{r, k};
  const BigInt value = jordan(n, p);
  std::vector<std::string> columns{"n", "r", "k", "J"};
  std::vector<std::string> fields{std::to_string(n), std::to_string(r), std::to_string(k), value.get_str()};
  Outcome outcome;
  if (with_oracle) {
    const BigInt oracle = jordan_oracle(n, p, cfg.enumeration_budget);
    outcome.passed = oracle == value;
    columns.insert(columns.end(), {"oracle", "agreement"});
    fields.insert(fields.end(), {oracle.get_str(), outcome.passed ? "true" : "false"});
  }
  Table t(columns);
  t.add(fields);
  emit(cfg, out, [&](std::ostream& o) { t.write(o, cfg.output_format); });
  return outcome;
}

Outcome cmd_partial_sum(const RunConfig& cfg, std::uint64_t x, unsigned r, unsigned k, const std::string& method,
                        std::ostream& out) {
  const TotientParams p{r, k};
  std::vector<std::string> columns{"x", "r", "k"};
  std::vector<std::string> fields{std::to_string(x), std::to_string(r), std::to_string(k)};
  std::optional<BigInt> direct;
  std::optional<BigInt> expanded;
  if (method == "direct" || method == "both") {
    direct = partial_sum_direct(x, p);
    columns.push_back("direct");
    fields.push_back(direct->get_str());
  }
  if (method == "bernoulli" || method == "both") {
    const MobiusTable table = make_table(cfg, integer_root(x, r));
    expanded = partial_sum_bernoulli(x, p, table);
    columns.push_back("bernoulli");
    fields.push_back(expanded->get_str());
  }
  Outcome outcome;
  if (direct && expanded) {
    outcome.passed = *direct == *expanded;
    columns.push_back("agreement");
    fields.push_back(outcome.passed ? "true" : "false");
  }
  Table t(columns);
  t.add(fields);
  emit(cfg, out, [&](std::ostream& o) { t.write(o, cfg.output_format); });
  return outcome;
}

Outcome cmd_identity(const RunConfig& cfg, unsigned r, unsigned k, std::uint64_t x_max, std::ostream& out) {
  const MobiusTable table = make_table(cfg, integer_root(x_max, r));
  Table t({"x", "umbral", "fast", "oracle", "verdict", "combinatorial"});
  Outcome outcome;
  // The oracle joins in only while (2x+1)^k stays small enough to enumerate quickly.
  const std::uint64_t oracle_budget = std::min<std::uint64_t>(cfg.enumeration_budget, 1'000'000);
  for (std::uint64_t x = 0; x <= x_max; ++x) {
    const IdentityVerdict v = identity_check(r, k, x, table, oracle_budget);
    outcome.passed = outcome.passed && v.equal;
    t.add({std::to_string(x), v.umbral.get_str(), v.fast.get_str(), v.oracle ? v.oracle->get_str() : "",
           v.equal ? "equal" : "mismatch", v.combinatorial ? v.combinatorial->get_str() : ""});
  }
  emit(cfg, out, [&](std::ostream& o) { t.write(o, cfg.output_format); });
  return outcome;
}

Outcome cmd_scan(const RunConfig& cfg, unsigned r, unsigned k, std::uint64_t x_min, std::uint64_t x_max,
                 std::uint64_t step, std::ostream& out) {
  if (x_min > x_max) throw InvalidArgument("scan: --x-min must not exceed --x-max");
  ScanConfig sc;
  sc.precision = cfg.precision;
  sc.workers = cfg.workers;
  const auto records = error_scan(r, k, x_min, x_max, step, sc);
  std::vector<ScanRow> rows;
  rows.reserve(records.size());
  for (const auto& rec : records) rows.push_back(to_row(rec, cfg.digits()));
  emit(cfg, out, [&](std::ostream& o) {
    if (cfg.output_format == "json") {
      o << scan_json(rows) << '\n';
    } else {
      write_scan_csv(o, rows);
    }
  });
  return {};
}

Outcome cmd_witness(const RunConfig& cfg, bool large, bool small, unsigned r, unsigned k, std::size_t count,
                    const std::string& m_text, std::uint64_t cutoff, std::ostream& out) {
  if (large == small) throw InvalidArgument("witness: pass exactly one of --large or --small");
  std::vector<BigInt> xs;
  unsigned k_used = k;
  if (large) {
    xs = witness_large(r, k, count);
  } else {
    BigInt m;
    if (m.set_str(m_text, 10) != 0) throw InvalidArgument("witness: --m must be a decimal integer");
    xs.push_back(witness_small(r, m));
    k_used = 1;
  }
  const MobiusTable table = make_table(cfg, cutoff);

  Table t({"x", "r", "k", "cutoff", "full_evaluation", "finite_part", "finite_part_decimal", "tail_bound",
           "upper_bound", "upper_bound_decimal", "verdict", "paper_bound", "below_paper_bound"});
  Outcome outcome;
  const int digits = cfg.digits();
  for (const auto& x : xs) {
    const WitnessReport rep = lemma_check(x, r, k_used, cutoff, table);
    outcome.passed = outcome.passed && rep.verdict == Verdict::negative;
    t.add({rep.x.get_str(), std::to_string(r), std::to_string(k_used), std::to_string(cutoff),
           rep.full_evaluation ? "true" : "false", rep.finite_part.get_str(), decimal(rep.finite_part, digits),
           rep.tail_bound.get_str(), rep.upper_bound.get_str(), decimal(rep.upper_bound, digits),
           to_string(rep.verdict), rep.paper_bound ? rep.paper_bound->get_str() : "",
           rep.paper_bound ? (rep.below_paper_bound ? "true" : "false") : ""});
  }
  emit(cfg, out, [&](std::ostream& o) { t.write(o, cfg.output_format); });
  return outcome;
}

Outcome cmd_zeta(const RunConfig& cfg, unsigned s, std::ostream& out) {
  const ZetaValue z = zeta_value(s, cfg.precision);
  Table t({"s", "value", "error_radius", "depth", "correction_terms"});
  t.add({std::to_string(s), z.value().to_fixed(cfg.digits()), z.error_radius().to_scientific(6),
         std::to_string(z.depth), std::to_string(z.correction_terms)});
  emit(cfg, out, [&](std::ostream& o) { t.write(o, cfg.output_format); });
  return {};
}

Outcome cmd_report(const RunConfig& cfg, std::uint64_t split, const std::string& input, std::optional<double> min_ratio,
                   std::ostream& out, std::istream& in) {
  std::vector<ScanRow> rows;
  if (input == "-") {
    rows = read_scan_csv(in);
  } else {
    std::ifstream file(input);
    if (!file) throw std::ios_base::failure("cannot open input file " + input);
    rows = read_scan_csv(file);
  }
  std::vector<std::pair<std::uint64_t, double>> points;
  for (const auto& row : rows) {
    if (!row.normalized_error.empty()) points.emplace_back(row.x, std::stod(row.normalized_error));
  }
  const OmegaRatio summary = omega_ratio_report(points, split);
  Outcome outcome;
  if (min_ratio) outcome.passed = summary.ratio >= *min_ratio;

  auto fmt = [](double v) {
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
  };
  Table t({"split", "max_early", "max_late", "ratio"});
  t.add({std::to_string(split), fmt(summary.max_early), fmt(summary.max_late), fmt(summary.ratio)});
  emit(cfg, out, [&](std::ostream& o) { t.write(o, cfg.output_format); });
  return outcome;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Counts relatively r-prime k-tuples and checks their error-term behaviour"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--precision", cfg.precision, "Zeta enclosure target; also sets printed digits")
      ->envname("RFREE_PRECISION")
      ->check(CLI::PositiveNumber);
  app.add_option("--sieve-limit", cfg.sieve_limit, "Mobius table size (0: as needed)")->envname("RFREE_SIEVE_LIMIT");
  app.add_option("--budget", cfg.enumeration_budget, "Tuple budget for enumeration oracles")
      ->envname("RFREE_BUDGET")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", cfg.workers, "Scan worker threads (0: hardware concurrency)")->envname("RFREE_WORKERS");
  app.add_option("--format", cfg.output_format, "Output format")
      ->envname("RFREE_FORMAT")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", cfg.output_path, "Write output to this file instead of stdout")->envname("RFREE_OUTPUT");

  unsigned r = 1;
  unsigned k = 1;
  std::uint64_t x = 0;
  std::uint64_t n = 1;
  bool with_oracle = false;
  std::string method = "both";
  std::uint64_t x_min = 2;
  std::uint64_t x_max = 0;
  std::uint64_t step = 1;
  bool large = false;
  bool small = false;
  std::size_t count = 5;
  std::string m_text = "1";
  std::uint64_t cutoff = 100;
  unsigned s = 2;
  std::uint64_t split = 0;
  std::string input = "-";
  std::optional<double> min_ratio;

  auto* count_cmd = app.add_subcommand("count", "V_k^r(x) with main term and error");
  count_cmd->add_option("--r", r)->required()->check(CLI::PositiveNumber);
  count_cmd->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  count_cmd->add_option("--x", x)->required();
  count_cmd->add_flag("--oracle", with_oracle, "Also enumerate and compare");

  auto* jordan_cmd = app.add_subcommand("jordan", "Generalised Jordan totient J_k^r(n)");
  jordan_cmd->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  jordan_cmd->add_option("--r", r)->required()->check(CLI::PositiveNumber);
  jordan_cmd->add_option("--k", k)->required();
  jordan_cmd->add_flag("--oracle", with_oracle, "Also enumerate and compare");

  auto* partial_cmd = app.add_subcommand("partial-sum", "sum_{n<=x} J_{k-1}^r(n)");
  partial_cmd->add_option("--x", x)->required();
  partial_cmd->add_option("--r", r)->required()->check(CLI::PositiveNumber);
  partial_cmd->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  partial_cmd->add_option("--method", method)->check(CLI::IsMember({"direct", "bernoulli", "both"}));

  auto* identity_cmd = app.add_subcommand("identity", "Closed-form identity against the direct count for x = 0..x_max");
  identity_cmd->add_option("--r", r)->required()->check(CLI::PositiveNumber);
  identity_cmd->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  identity_cmd->add_option("--x-max", x_max)->required();

  auto* scan_cmd = app.add_subcommand("scan", "Error-term scan as CSV");
  scan_cmd->add_option("--r", r)->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--x-min", x_min)->required();
  scan_cmd->add_option("--x-max", x_max)->required();
  scan_cmd->add_option("--step", step)->check(CLI::PositiveNumber);

  auto* witness_cmd = app.add_subcommand("witness", "Fractional-part sums at the constructed witnesses");
  witness_cmd->add_flag("--large", large, "x = 2^r - 1 mod 2^r, x >= 3^r (needs r >= 2, rk >= 4)");
  witness_cmd->add_flag("--small", small, "x = m^2 prod_{3<=p<100} p^r (r = 2 or 3, k = 1)");
  witness_cmd->add_option("--r", r)->required()->check(CLI::PositiveNumber);
  witness_cmd->add_option("--k", k)->check(CLI::PositiveNumber);
  witness_cmd->add_option("--count", count)->check(CLI::PositiveNumber);
  witness_cmd->add_option("--m", m_text);
  witness_cmd->add_option("--cutoff", cutoff, "Exact summation cutoff D")->check(CLI::Range(2, 100'000));

  auto* zeta_cmd = app.add_subcommand("zeta", "Rigorous zeta(s) enclosure");
  zeta_cmd->add_option("--s", s)->required()->check(CLI::Range(2u, 100'000u));

  auto* report_cmd = app.add_subcommand("report", "Two-window ratio summary of a scan CSV");
  report_cmd->add_option("--split", split)->required();
  report_cmd->add_option("--input", input, "Scan CSV path, or - for stdin");
  report_cmd->add_option("--min-ratio", min_ratio, "Fail unless ratio reaches this value");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    Outcome outcome;
    if (*count_cmd) {
      outcome = cmd_count(cfg, r, k, x, with_oracle, out);
    } else if (*jordan_cmd) {
      outcome = cmd_jordan(cfg, n, r, k, with_oracle, out);
    } else if (*partial_cmd) {
      outcome = cmd_partial_sum(cfg, x, r, k, method, out);
    } else if (*identity_cmd) {
      outcome = cmd_identity(cfg, r, k, x_max, out);
    } else if (*scan_cmd) {
      outcome = cmd_scan(cfg, r, k, x_min, x_max, step, out);
    } else if (*witness_cmd) {
      outcome = cmd_witness(cfg, large, small, r, k, count, m_text, cutoff, out);
    } else if (*zeta_cmd) {
      outcome = cmd_zeta(cfg, s, out);
    } else if (*report_cmd) {
      outcome = cmd_report(cfg, split, input, min_ratio, out, in);
    }
    return outcome.passed ? ok : check_failed;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return resource;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return invariant;
  } catch (const std::ios_base::failure& e) {
    err << "i/o error: " << e.what() << '\n';
    return io;
  }
}

}  // namespace rfree::cli
