#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qaw/awpoly.hpp"
#include "qaw/densities.hpp"
#include "qaw/moments.hpp"
#include "qaw/polyfam.hpp"
#include "qaw/verify.hpp"

namespace qaw::cli {
namespace {

using Cell = std::variant<long long, double>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
  if (const long long* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return format_double(std::get<double>(c));
}

void write_csv(const Table& t, std::ostream& out) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (const long long* v = std::get_if<long long>(&row[i]))
        o[t.columns[i]] = *v;
      else if (std::isfinite(std::get<double>(row[i])))
        o[t.columns[i]] = std::get<double>(row[i]);
      else
        o[t.columns[i]] = cell_text(row[i]);
    }
    arr.push_back(std::move(o));
  }
  out << arr.dump(2) << '\n';
}

struct Options {
  std::string selector;
  int n = 0;
  bool n_set = false;
  std::vector<double> q;
  double rho1 = 0.0;
  double rho2 = 0.0;
  double y = 0.0;
  double z = 0.0;
  std::vector<double> x;
  std::string grid;
  std::string format;
  std::optional<double> tol;
  std::optional<int> max_terms;
  std::vector<std::string> checks;
  int nmax = 8;
  bool all = false;
};

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw DomainError("grid must have the form lo:hi:count");
  auto number = [](const std::string& s) {
    double v = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size()) throw DomainError("grid: bad number '" + s + "'");
    return v;
  };
  const double lo = number(parts[0]);
  const double hi = number(parts[1]);
  long long count = 0;
  const auto r = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
  if (r.ec != std::errc() || r.ptr != parts[2].data() + parts[2].size() || count < 1)
    throw DomainError("grid: count must be an integer >= 1");
  if (count > 1000000) throw DomainError("grid: count must be <= 1000000");
  if (!(lo <= hi)) throw DomainError("grid: lo must not exceed hi");
  std::vector<double> xs(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    const double step = count == 1 ? 0.0 : (hi - lo) / static_cast<double>(count - 1);
    xs[static_cast<std::size_t>(i)] = i + 1 == count && count > 1 ? hi : lo + step * static_cast<double>(i);
  }
  return xs;
}

std::vector<double> points(const Options& o) {
  std::vector<double> xs = o.x;
  if (!o.grid.empty()) {
    const std::vector<double> g = parse_grid(o.grid);
    xs.insert(xs.end(), g.begin(), g.end());
  }
  if (xs.empty()) throw DomainError("no evaluation points: give --x or --grid");
  return xs;
}

TruncationPolicy policy(const Options& o) {
  TruncationPolicy p;
  if (o.tol) p.rel_tol = *o.tol;
  if (o.max_terms) p.max_terms = *o.max_terms;
  p.validate();
  return p;
}

double single_q(const Options& o) {
  if (o.q.size() > 1) throw DomainError("eval and expand take a single --q");
  const double q = o.q.empty() ? 0.0 : o.q[0];
  QParam<double> check(q);
  return q;
}

void require_n(const Options& o) {
  if (o.n < 0) throw DomainError("--n must be nonnegative");
}

Table eval_table(const Options& o) {
  const std::string& s = o.selector;
  const double q = single_q(o);
  const TruncationPolicy pol = policy(o);
  const CondDensityParams<double> p{o.y, o.rho1, o.z, o.rho2, q};
  Table t;
  auto ll = [](int v) { return Cell(static_cast<long long>(v)); };

  if (s == "C" || s == "C_n") {
    require_n(o);
    p.validate();
    const double v = q == 1.0 ? c_n_gaussian(o.n, o.y, o.z, o.rho1, o.rho2) : c_n_main(o.n, p);
    t.columns = {"n", "q", "y", "rho1", "z", "rho2", "value"};
    t.rows.push_back({ll(o.n), q, o.y, o.rho1, o.z, o.rho2, v});
    return t;
  }

  const std::vector<double> xs = points(o);
  if (s == "f_N") {
    t.columns = {"q", "x", "value", "terms"};
    for (double x : xs) {
      const DensityEval e = f_N(x, q, pol);
      t.rows.push_back({q, x, e.value, ll(e.terms)});
    }
    return t;
  }
  if (s == "f_CN") {
    t.columns = {"q", "y", "rho1", "x", "value", "terms"};
    for (double x : xs) {
      const DensityEval e = f_CN(x, o.y, o.rho1, q, pol);
      t.rows.push_back({q, o.y, o.rho1, x, e.value, ll(e.terms)});
    }
    return t;
  }
  if (s == "phi") {
    t.columns = {"q", "y", "rho1", "z", "rho2", "x", "value", "terms"};
    for (double x : xs) {
      const DensityEval e = phi_cond(x, p, pol);
      t.rows.push_back({q, o.y, o.rho1, o.z, o.rho2, x, e.value, ll(e.terms)});
    }
    return t;
  }

  require_n(o);
  using Fn = std::function<double(double)>;
  Fn f;
  std::vector<std::string> extra;
  std::vector<Cell> extra_cells;
  if (s == "h") {
    f = [&](double x) { return hermite_h(o.n, x, q); };
  } else if (s == "H") {
    f = [&](double x) { return hermite_H(o.n, x, q); };
  } else if (s == "B") {
    f = [&](double x) { return b_big(o.n, x, q); };
  } else if (s == "b") {
    f = [&](double x) { return b_small(o.n, x, q); };
  } else if (s == "U") {
    f = [&](double x) { return chebyshev_U(o.n, x); };
  } else if (s == "P") {
    if (!(std::abs(o.rho1) < 1.0)) throw DomainError("|rho1| must be < 1");
    extra = {"y", "rho1"};
    extra_cells = {o.y, o.rho1};
    f = [&](double x) { return asc_P(o.n, x, o.y, o.rho1, q); };
  } else if (s == "Q") {
    const AWComplexParams a = map_params({o.y, o.rho1, 0.0, 0.0, q});
    extra = {"y", "rho1"};
    extra_cells = {o.y, o.rho1};
    f = [a, &o, q](double x) { return asc_Q(o.n, x, a.a, a.b, q); };
  } else if (s == "D") {
    const AWComplexParams a = map_params(p);
    extra = {"y", "rho1", "z", "rho2"};
    extra_cells = {o.y, o.rho1, o.z, o.rho2};
    f = [a, &o, q](double x) { return aw_D(o.n, x, a, q); };
  } else if (s == "A") {
    p.validate();
    extra = {"y", "rho1", "z", "rho2"};
    extra_cells = {o.y, o.rho1, o.z, o.rho2};
    f = [&](double x) { return aw_A_sym(o.n, x, p); };
  } else {
    throw DomainError("unknown selector '" + s + "'");
  }
  t.columns = {"n", "q"};
  t.columns.insert(t.columns.end(), extra.begin(), extra.end());
  t.columns.insert(t.columns.end(), {"x", "value"});
  for (double x : xs) {
    std::vector<Cell> row{ll(o.n), q};
    row.insert(row.end(), extra_cells.begin(), extra_cells.end());
    row.push_back(x);
    row.push_back(f(x));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table expand_table(const Options& o) {
  const double q = single_q(o);
  if (q == 1.0) throw DomainError("expand requires |q| < 1");
  const int N = o.n_set ? o.n : 40;
  if (N < 1) throw DomainError("--n (number of terms) must be >= 1");
  const TruncationPolicy pol = policy(o);
  const std::vector<double> xs = points(o);
  Table t;
  t.columns = {"x", "closed_form", "partial_sum_" + std::to_string(N), "abs_error"};
  const std::string& s = o.selector.empty() ? std::string("phi") : o.selector;
  if (s == "phi") {
    const CondDensityParams<double> p{o.y, o.rho1, o.z, o.rho2, q};
    p.validate();
    const Vector<double> c = c_n_sequence(N, p);
    for (double x : xs) {
      const double exact = phi_cond(x, p, pol).value;
      const double partial = phi_expansion_partial(x, p, c, pol);
      t.rows.push_back({x, exact, partial, std::abs(partial - exact)});
    }
  } else if (s == "f_CN") {
    for (double x : xs) {
      const double exact = f_CN(x, o.y, o.rho1, q, pol).value;
      const double partial = poisson_mehler_partial(x, o.y, o.rho1, q, N, pol);
      t.rows.push_back({x, exact, partial, std::abs(partial - exact)});
    }
  } else {
    throw DomainError("expand selector must be phi or f_CN");
  }
  return t;
}

void write_table(const Table& t, const std::string& format, std::ostream& out) {
  if (format.empty() || format == "csv")
    write_csv(t, out);
  else
    write_json(t, out);
}

int verify(const Options& o, std::ostream& out) {
  SuiteConfig c;
  if (o.all) c.checks = check_names();
  for (const std::string& name : o.checks)
    if (std::find(c.checks.begin(), c.checks.end(), name) == c.checks.end()) c.checks.push_back(name);
  if (c.checks.empty()) throw DomainError("verify: give --all or at least one --check");
  if (!o.q.empty()) c.q_grid = o.q;
  c.nmax = o.nmax;
  c.tol = o.tol;
  if (o.max_terms) c.policy.max_terms = *o.max_terms;
  const std::vector<CheckReport> r = run_suite(c);
  if (o.format == "json") {
    out << reports_to_json(r);
  } else if (o.format == "csv") {
    out << "name,params,residual,tolerance,pass\n";
    for (const CheckReport& x : r) {
      std::string params;
      for (const auto& [k, v] : x.params) params += (params.empty() ? "" : ";") + k + "=" + format_double(v);
      out << x.name << ',' << params << ',' << format_double(x.residual) << ','
          << format_double(x.tolerance) << ',' << (x.pass ? "true" : "false") << '\n';
    }
  } else {
    out << reports_to_text(r);
  }
  return all_pass(r) ? kOk : kVerificationFailed;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Askey-Wilson polynomials, conditional q-Hermite moments and their verification", "qaw"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub, bool with_points) {
    sub->add_option("--q", o.q, "base q in (-1, 1]")->delimiter(',');
    sub->add_option("--tol", o.tol, "relative truncation tolerance (verify: check tolerance)");
    sub->add_option("--max-terms", o.max_terms, "maximum terms in infinite products");
    if (with_points) {
      sub->add_option("--n", o.n, "degree (expand: number of terms)")->each([&o](const std::string&) { o.n_set = true; });
      sub->add_option("--rho1", o.rho1);
      sub->add_option("--rho2", o.rho2);
      sub->add_option("--y", o.y);
      sub->add_option("--z", o.z);
      sub->add_option("--x", o.x, "evaluation points")->delimiter(',');
      sub->add_option("--grid", o.grid, "lo:hi:count, endpoints included");
    }
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate a family, density or moment");
  eval->add_option("selector", o.selector, "h H Q P B b U D A f_N f_CN phi C")->required();
  common(eval, true);
  eval->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  CLI::App* expand = app.add_subcommand("expand", "partial sums of the density expansions");
  expand->add_option("selector", o.selector, "phi (default) or f_CN");
  common(expand, true);
  expand->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));

  CLI::App* ver = app.add_subcommand("verify", "run the verification suite");
  common(ver, false);
  ver->add_option("--check", o.checks, "check name (repeatable)");
  ver->add_flag("--all", o.all, "run every check");
  ver->add_option("--nmax", o.nmax, "largest degree");
  ver->add_option("--format", o.format)->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "qaw: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (eval->parsed()) {
      write_table(eval_table(o), o.format, out);
      return kOk;
    }
    if (expand->parsed()) {
      write_table(expand_table(o), o.format, out);
      return kOk;
    }
    return verify(o, out);
  } catch (const Error& e) {
    err << "qaw: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace qaw::cli
