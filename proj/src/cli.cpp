#include "tml/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "tml/expsum.hpp"
#include "tml/field.hpp"
#include "tml/lfun.hpp"
#include "tml/moment.hpp"
#include "tml/report_io.hpp"
#include "tml/toric.hpp"
#include "tml/torus.hpp"

namespace tml::cli {

namespace {

using i64 = std::int64_t;
using u64 = std::uint64_t;

std::vector<i64> parse_list(const std::string& text) {
  std::vector<i64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error(ErrorCode::ParseError, "empty entry in '" + text + "'");
    item = item.substr(b, e - b + 1);
    std::size_t used = 0;
    i64 v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad integer '" + item + "'");
    }
    if (used != item.size()) throw Error(ErrorCode::ParseError, "bad integer '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty list");
  return out;
}

std::vector<u64> parse_residues(const std::string& text, u64 q) {
  std::vector<u64> out;
  for (i64 v : parse_list(text)) out.push_back(arith::mod(v, q));
  return out;
}

TestFunction parse_test_function(const std::string& s) {
  if (s == "gauss") return TestFunction::Gauss;
  if (s == "gauss2") return TestFunction::Gauss2;
  throw Error(ErrorCode::ParseError, "unknown test function '" + s + "'");
}

std::string join(const std::vector<u64>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : json_(cfg.format == "json") {
    if (!cfg.out_path.empty()) {
      file_.open(cfg.out_path, std::ios::binary);
      if (!file_) throw Error(ErrorCode::ParseError, "cannot open '" + cfg.out_path + "'");
      os_ = &file_;
    } else {
      os_ = &out;
    }
  }

  void emit(const Table& t) {
    if (json_) {
      write_json(*os_, t);
    } else {
      write_csv(*os_, t);
    }
    os_->flush();
  }

  // CSV rows are streamed chunk by chunk; JSON is written once at the end.
  void begin(const std::vector<std::string>& columns) {
    pending_.columns = columns;
    if (!json_) write_csv_header(*os_, pending_);
  }
  void add(const Table& chunk) {
    if (json_) {
      pending_.rows.insert(pending_.rows.end(), chunk.rows.begin(), chunk.rows.end());
    } else {
      write_csv_rows(*os_, chunk);
      os_->flush();
    }
  }
  void finish() {
    if (json_) write_json(*os_, pending_);
    os_->flush();
  }

 private:
  bool json_;
  std::ofstream file_;
  std::ostream* os_ = nullptr;
  Table pending_;
};

int cmd_moment(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const FieldCtx ctx = build_ctx(cfg.q);
  MomentReport r;
  if (cfg.method == "exact") {
    r = moment_exact(ctx, cfg.a, cfg.b, cfg.workers);
  } else {
    const double x = cfg.x > 0 ? cfg.x : static_cast<double>(cfg.q);
    r = afe_moment(ctx, cfg.a, cfg.b, x, parse_test_function(cfg.test_function));
  }
  Emitter em(cfg, out);
  em.emit(moment_table(std::span(&r, 1), cfg.timing));
  return kOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.qmin < 3 || cfg.qmax < cfg.qmin) throw Error(ErrorCode::ParseError, "need 3 <= qmin <= qmax");
  const auto primes = primes_between(cfg.qmin, cfg.qmax);
  SweepOptions opt;
  opt.method = cfg.method == "exact" ? Method::Exact : Method::Afe;
  opt.workers = cfg.workers;
  if (cfg.x > 0) opt.afe_x_over_q = cfg.x;
  Emitter em(cfg, out);
  em.begin(moment_columns());
  const std::size_t chunk = std::max<std::size_t>(1, 2 * static_cast<std::size_t>(cfg.workers));
  std::vector<MomentReport> all;
  for (std::size_t i = 0; i < primes.size(); i += chunk) {
    const auto part = std::span(primes).subspan(i, std::min(chunk, primes.size() - i));
    auto reports = sweep(cfg.a, cfg.b, part, opt);
    em.add(moment_table(reports, cfg.timing));
    all.insert(all.end(), reports.begin(), reports.end());
  }
  em.finish();
  err << "sweep: " << all.size() << " primes, fitted error slope " << format_real(fitted_slope(all)) << "\n";
  return kOk;
}

int cmd_expsum(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const FieldCtx ctx = build_ctx(cfg.q);
  if (cfg.a == 0 || cfg.b == 0) throw Error(ErrorCode::ZeroExponent, "exponents must be nonzero");
  Emitter em(cfg, out);
  if (cfg.weil) {
    const WeilReport w = weil_report(ctx, cfg.a, cfg.b);
    Table t{{"q", "a", "b", "max_abs", "argmax", "bound", "applicable", "ok"}, {}};
    t.rows.push_back({cfg.q, cfg.a, cfg.b, w.max_abs, w.argmax, w.bound, std::string(w.applicable ? "true" : "false"),
                      std::string(w.ok ? "true" : "false")});
    em.emit(t);
    return kOk;
  }
  std::vector<u64> us;
  if (cfg.all) {
    for (u64 u = 1; u < cfg.q; ++u) us.push_back(u);
  } else if (cfg.random > 0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<u64> pick(1, cfg.q - 1);
    for (u64 i = 0; i < cfg.random; ++i) us.push_back(pick(rng));
  } else {
    if (cfg.u.empty()) throw Error(ErrorCode::ParseError, "expsum needs --u, --all, --random or --weil");
    us = parse_residues(cfg.u, cfg.q);
  }
  const auto table = t_tilde_all(ctx, cfg.a, cfg.b);
  const bool anti = cfg.a + cfg.b == 0;
  Table t{{"q", "a", "b", "u", "t_re", "t_im", "abs", "closed_re", "closed_im"}, {}};
  for (u64 u : us) {
    if (u == 0) throw Error(ErrorCode::BadResidue, "u must be a unit");
    const cplx v = table[u];
    std::vector<Cell> row{cfg.q, cfg.a, cfg.b, u, v.real(), v.imag(), std::abs(v)};
    if (anti) {
      const cplx c = t_tilde_antidiagonal(ctx, cfg.a, u);
      row.emplace_back(c.real());
      row.emplace_back(c.imag());
    } else {
      row.emplace_back(std::monostate{});
      row.emplace_back(std::monostate{});
    }
    t.rows.push_back(std::move(row));
  }
  em.emit(t);
  return kOk;
}

int cmd_meansquare(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const FieldCtx ctx = build_ctx(cfg.q);
  const TorusMatrix a = TorusMatrix::parse(cfg.matrix);
  const double ms = mean_square(ctx, a);
  const double ex = mean_square_expected(ctx, a);
  Table t{{"q", "matrix", "rank", "subgroup_order", "mean_square", "expected", "rel_diff"}, {}};
  t.rows.push_back({cfg.q, cfg.matrix, static_cast<u64>(a.rank()), subgroup_order(ctx, a), ms, ex,
                    std::abs(ms - ex) / ex});
  Emitter(cfg, out).emit(t);
  return kOk;
}

int cmd_count(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const FieldCtx ctx = build_ctx(cfg.q);
  const IntBox box = IntBox::parse(cfg.box);
  const auto u = parse_residues(cfg.u, cfg.q);
  Table t{{"q", "matrix", "box", "u", "pair", "count", "count_units", "normalized", "lambda1", "bound", "method"}, {}};
  if (!cfg.pair.empty()) {
    const auto ij = parse_list(cfg.pair);
    if (ij.size() != 2 || ij[0] < 1 || ij[1] < 1) throw Error(ErrorCode::ParseError, "--pair takes i,j (1-based)");
    const auto r = count_lattice_linear(ctx, static_cast<std::size_t>(ij[0] - 1), static_cast<std::size_t>(ij[1] - 1),
                                        u, box);
    t.rows.push_back({cfg.q, std::monostate{}, box.to_string(), join(u), cfg.pair, r.count, r.count_units,
                      std::monostate{}, r.lambda1, r.bound, std::string("lattice")});
  } else {
    const TorusMatrix a = TorusMatrix::parse(cfg.matrix);
    const auto r = count_brute(ctx, a, u, box);
    t.rows.push_back({cfg.q, cfg.matrix, box.to_string(), join(u), std::monostate{}, r.count, std::monostate{},
                      r.normalized, std::monostate{}, std::monostate{}, r.method});
  }
  Emitter(cfg, out).emit(t);
  return kOk;
}

int cmd_roottwist(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto f = parse_list(cfg.poly);
  std::vector<u64> qs;
  if (cfg.q != 0) {
    qs.push_back(cfg.q);
  } else {
    if (cfg.qmin < 3 || cfg.qmax < cfg.qmin) throw Error(ErrorCode::ParseError, "need --q or 3 <= qmin <= qmax");
    qs = primes_between(cfg.qmin, cfg.qmax);
  }
  Table t{{"q", "root", "value_re", "value_im", "abs", "status"}, {}};
  std::vector<double> mags;
  for (u64 q : qs) {
    const FieldCtx ctx = build_ctx(q);
    const LTable lt = l_central_all(ctx, cfg.workers);
    const RootTwist r = root_twist(ctx, lt, f);
    if (r.root) {
      t.rows.push_back({q, *r.root, r.value.real(), r.value.imag(), std::abs(r.value), std::string("ok")});
      mags.push_back(std::abs(r.value));
    } else {
      t.rows.push_back({q, std::monostate{}, std::monostate{}, std::monostate{}, std::monostate{}, std::string("no_root")});
    }
  }
  Emitter(cfg, out).emit(t);
  if (!mags.empty()) {
    std::sort(mags.begin(), mags.end());
    const std::size_t m = mags.size();
    const double med = m % 2 ? mags[m / 2] : 0.5 * (mags[m / 2 - 1] + mags[m / 2]);
    err << "roottwist: " << m << " primes with a root, median |value| " << format_real(med) << "\n";
  }
  return kOk;
}

int cmd_lvalue(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const FieldCtx ctx = build_ctx(cfg.q);
  Table t{{"q", "j", "re", "im", "abs", "method"}, {}};
  if (cfg.all) {
    const LTable lt = l_central_all(ctx, cfg.workers);
    for (u64 j = 0; j < lt.values.size(); ++j) {
      const cplx v = lt.values[j];
      t.rows.push_back({cfg.q, j, v.real(), v.imag(), std::abs(v), lt.method});
    }
  } else {
    const Character chi(ctx, cfg.j);
    const cplx v = l_central(chi);
    t.rows.push_back({cfg.q, chi.index(), v.real(), v.imag(), std::abs(v), std::string("direct")});
  }
  Emitter(cfg, out).emit(t);
  return kOk;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime:
    case ErrorCode::TooSmall:
      return kBadModulus;
    case ErrorCode::QuadratureFailure:
    case ErrorCode::PoleError:
    case ErrorCode::DomainError:
    case ErrorCode::TooLarge:
      return kNumericalFailure;
    default:
      return kUsage;
  }
}

unsigned default_workers() {
  const char* env = std::getenv("TML_WORKERS");
  if (env == nullptr) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1 || v > 4096) return 1;
  return static_cast<unsigned>(v);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.workers = default_workers();

  CLI::App app{"Toroidal moments of Dirichlet L-functions", "tml"};
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_path, "write data to this file");
    sub->add_option("--workers", cfg.workers, "worker threads (default $TML_WORKERS or 1)")
        ->check(CLI::Range(1U, 4096U));
    sub->add_option("--seed", cfg.seed, "seed for randomized inputs");
  };

  auto* moment = app.add_subcommand("moment", "second toroidal moment for one prime");
  moment->add_option("--q", cfg.q, "prime modulus")->required();
  moment->add_option("--a", cfg.a)->required();
  moment->add_option("--b", cfg.b)->required();
  moment->add_option("--method", cfg.method, "exact or afe")->check(CLI::IsMember({"exact", "afe"}));
  moment->add_option("--x", cfg.x, "X for the afe method (default q)");
  moment->add_option("--test-function", cfg.test_function, "gauss or gauss2")
      ->check(CLI::IsMember({"gauss", "gauss2"}));
  moment->add_flag("--timing", cfg.timing, "fill the seconds column");
  common(moment);

  auto* sw = app.add_subcommand("sweep", "moments over all primes in a range");
  sw->add_option("--a", cfg.a)->required();
  sw->add_option("--b", cfg.b)->required();
  sw->add_option("--qmin", cfg.qmin)->required();
  sw->add_option("--qmax", cfg.qmax)->required();
  sw->add_option("--method", cfg.method, "exact or afe")->check(CLI::IsMember({"exact", "afe"}));
  sw->add_option("--x", cfg.x, "X/q for the afe method (default 1)");
  sw->add_flag("--timing", cfg.timing, "fill the seconds column");
  common(sw);

  auto* ex = app.add_subcommand("expsum", "T~_{a,b}(u; q)");
  ex->add_option("--q", cfg.q)->required();
  ex->add_option("--a", cfg.a)->required();
  ex->add_option("--b", cfg.b)->required();
  ex->add_option("--u", cfg.u, "comma-separated residues");
  ex->add_flag("--all", cfg.all, "every u in F_q^x");
  ex->add_option("--random", cfg.random, "this many random u (see --seed)");
  ex->add_flag("--weil", cfg.weil, "maximum over u against the Weil bound");
  common(ex);

  auto* ms = app.add_subcommand("meansquare", "mean square of T_A(u; q) over u");
  ms->add_option("--q", cfg.q)->required();
  ms->add_option("--matrix", cfg.matrix, "rows separated by ';', entries by ','")->required();
  common(ms);

  auto* ct = app.add_subcommand("count", "toric congruence count M_A(u, B; q)");
  ct->add_option("--q", cfg.q)->required();
  ct->add_option("--matrix", cfg.matrix, "rows separated by ';', entries by ','");
  ct->add_option("--box", cfg.box, "lo..hi,lo..hi,...")->required();
  ct->add_option("--u", cfg.u, "comma-separated residues")->required();
  ct->add_option("--pair", cfg.pair, "i,j (1-based): count u_i x_i = u_j x_j by lattice reduction");
  common(ct);

  auto* rt = app.add_subcommand("roottwist", "twisted second moment at a root of f");
  rt->add_option("--poly", cfg.poly, "integer coefficients, highest degree first")->required();
  rt->add_option("--q", cfg.q);
  rt->add_option("--qmin", cfg.qmin);
  rt->add_option("--qmax", cfg.qmax);
  common(rt);

  auto* lv = app.add_subcommand("lvalue", "central values L(1/2, chi_j)");
  lv->add_option("--q", cfg.q)->required();
  lv->add_option("--j", cfg.j, "character index");
  lv->add_flag("--all", cfg.all, "every character");
  common(lv);

  std::vector<const char*> argv{"tml"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (cfg.subcommand == "count" && cfg.pair.empty() && cfg.matrix.empty())
      throw Error(ErrorCode::ParseError, "count needs --matrix or --pair");
    if (cfg.subcommand == "moment") return cmd_moment(cfg, out, err);
    if (cfg.subcommand == "sweep") return cmd_sweep(cfg, out, err);
    if (cfg.subcommand == "expsum") return cmd_expsum(cfg, out, err);
    if (cfg.subcommand == "meansquare") return cmd_meansquare(cfg, out, err);
    if (cfg.subcommand == "count") return cmd_count(cfg, out, err);
    if (cfg.subcommand == "roottwist") return cmd_roottwist(cfg, out, err);
    return cmd_lvalue(cfg, out, err);
  } catch (const Error& e) {
    err << "tml " << cfg.subcommand << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    err << "tml " << cfg.subcommand << ": out of memory\n";
    return kNumericalFailure;
  }
}

}  // namespace tml::cli
