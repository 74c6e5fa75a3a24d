#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "frobmu/bounds.hpp"
#include "frobmu/cache.hpp"
#include "frobmu/charsums.hpp"
#include "frobmu/curves.hpp"
#include "frobmu/diophantine.hpp"
#include "frobmu/mobius.hpp"
#include "frobmu/specstring.hpp"
#include "frobmu/zeta.hpp"

using namespace frobmu;
using nlohmann::json;

namespace {

struct GlobalOpts {
  long precision_bits = 128;
  std::uint64_t budget = 100'000'000;
  unsigned workers = 1;
  double slack = 1.0;
  std::string cache_path;
  std::string format = "csv";
};

// Tabular report, emitted as CSV (with a # header) or a JSON row array.
struct Table {
  std::string header;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }

  void print(const std::string& format) const {
    if (format == "json") {
      json out;
      out["report"] = header;
      json jrows = json::array();
      for (const auto& row : rows) {
        json obj;
        for (size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = row[i];
        jrows.push_back(obj);
      }
      out["rows"] = jrows;
      if (!notes.empty()) out["notes"] = notes;
      std::cout << out.dump(2) << "\n";
      return;
    }
    std::cout << "# " << header << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
      std::cout << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows)
      for (size_t i = 0; i < row.size(); ++i)
        std::cout << row[i] << (i + 1 < row.size() ? "," : "\n");
    for (const auto& note : notes) std::cout << "# " << note << "\n";
  }
};

// q = p^m for prime p; rejects non-prime-powers.
std::pair<std::uint64_t, unsigned> parse_prime_power(std::uint64_t q) {
  if (q < 2) throw Error(Errc::InvalidParams, "q must be >= 2");
  std::uint64_t p = q;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  unsigned m = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) throw Error(Errc::InvalidParams, std::to_string(q) + " is not a prime power");
  return {p, m};
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_value(const Real& re, const Real& im, double rounding) {
  bool has_im = std::abs(im.to_double()) > rounding + 1e-300;
  if (!has_im) return re.str();
  std::string s = re.str();
  std::string i = im.str();
  if (!i.empty() && i[0] != '-') s += "+";
  return s + i + "j";
}

// --alpha accepts "r/s" or a decimal literal; both are exact rationals.
std::pair<Real, double> parse_alpha(const std::string& s, mpfr_prec_t prec) {
  mpq_t q;
  mpq_init(q);
  std::string norm = s;
  size_t dot = norm.find('.');
  if (dot != std::string::npos) {
    std::string digits = norm.substr(0, dot) + norm.substr(dot + 1);
    size_t frac_len = norm.size() - dot - 1;
    norm = digits + "/1" + std::string(frac_len, '0');
  }
  if (norm.empty() || mpq_set_str(q, norm.c_str(), 10) != 0) {
    mpq_clear(q);
    throw std::invalid_argument("alpha must be a decimal or r/s rational: " + s);
  }
  mpq_canonicalize(q);
  Real r(prec);
  mpfr_set_q(r.raw(), q, MPFR_RNDN);
  mpq_clear(q);
  double radius = std::ldexp(std::abs(r.to_double()) + 1e-300, -static_cast<int>(prec));
  return {std::move(r), radius};
}

FieldElement parse_element_arg(const std::shared_ptr<const Field>& fq, const std::string& s) {
  std::vector<std::uint64_t> coeffs;
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw std::invalid_argument("unterminated element list: " + s);
    std::string inner = s.substr(1, s.size() - 2);
    size_t pos = 0;
    while (pos <= inner.size() && !inner.empty()) {
      size_t comma = inner.find(',', pos);
      if (comma == std::string::npos) comma = inner.size();
      coeffs.push_back(std::stoull(inner.substr(pos, comma - pos)));
      pos = comma + 1;
      if (pos > inner.size()) break;
    }
  } else {
    coeffs.push_back(std::stoull(s));
  }
  return fq->element(coeffs);
}

std::string resolve_cache_path(const GlobalOpts& g) {
  if (!g.cache_path.empty()) return g.cache_path;
  if (const char* env = std::getenv("FROBMU_CACHE")) return env;
  return "frobmu-cache.json";
}

LPolynomial zeta_of(const CurveSpec& curve, const GlobalOpts& g, CacheStore* cache) {
  CountOptions copts;
  copts.enumeration_budget = g.budget;
  copts.workers = g.workers;
  std::vector<CountRecord> recs = trace_sequence(curve, 2 * curve.genus(), cache, copts);
  return reconstruct_l_polynomial(recs, curve.base()->q(), curve.genus());
}

FrobeniusSpectrum spectrum_of(const CurveSpec& curve, const GlobalOpts& g, CacheStore* cache) {
  LPolynomial lp = zeta_of(curve, g, cache);
  mpfr_prec_t start = static_cast<mpfr_prec_t>(g.precision_bits);
  return compute_spectrum_auto(lp, start, std::max<mpfr_prec_t>(1024, start));
}

std::vector<std::string> sum_row(const MobiusSumResult& r) {
  return {std::to_string(r.N),
          r.method,
          fmt_value(r.value_re, r.value_im, r.error_bound),
          fmt_double(r.error_bound),
          r.bound_rhs > 0 ? fmt_double(r.bound_rhs) : "",
          r.bound_rhs > 0 ? fmt_double(r.ratio) : ""};
}

const std::vector<std::string> kSumColumns = {"N",           "method",    "value",
                                              "error_bound", "bound_rhs", "ratio"};

int run_cli(int argc, char** argv) {
  CLI::App app{"Frobenius traces, Mobius sums and the explicit constants around them"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--precision-bits", g.precision_bits, "working precision (bits, >= 64)")
      ->capture_default_str();
  app.add_option("--budget", g.budget, "enumeration budget (elements)")->capture_default_str();
  app.add_option("--workers", g.workers, "worker threads")->capture_default_str();
  app.add_option("--slack", g.slack, "slack constant for bound shapes")->capture_default_str();
  app.add_option("--cache", g.cache_path, "count cache path (overrides env FROBMU_CACHE)");
  app.add_option("--format", g.format,
                 "csv or json for tabular reports (curve-zeta/angles/bounds are always JSON)")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  std::string curve_str, alpha_str, a_str;
  std::uint64_t N = 0, smax = 0, sieve_limit = 0;
  unsigned n_max = 0;
  int angle_idx = -1;
  bool no_cache = false;
  bool use_kappa_frobenius = false;
  double alpha_radius = -1;
  std::string method = "direct";

  auto* ccount = app.add_subcommand("curve-count", "point counts and Frobenius traces");
  ccount->add_option("--curve", curve_str, "curve spec string")->required();
  ccount->add_option("--n-max", n_max, "count over F_{q^n} for n = 1..n_max")->required();
  ccount->add_flag("--no-cache", no_cache, "skip the count cache");

  auto* czeta = app.add_subcommand("curve-zeta", "L-polynomial and ordinarity");
  czeta->add_option("--curve", curve_str)->required();
  czeta->add_flag("--no-cache", no_cache);

  auto* cang = app.add_subcommand("curve-angles", "certified Frobenius eigenvalues and angles");
  cang->add_option("--curve", curve_str)->required();
  cang->add_flag("--no-cache", no_cache);

  auto* msum = app.add_subcommand("mobius-sum", "Mobius-weighted sums");
  msum->add_option("--curve", curve_str, "curve for a_C(n) sums or --angle source");
  msum->add_option("--alpha", alpha_str, "decimal or r/s exponent");
  msum->add_option("--alpha-radius", alpha_radius, "uncertainty radius for --alpha");
  msum->add_option("--angle", angle_idx, "use angle j of the curve's spectrum");
  msum->add_option("--N", N, "sum length")->required();
  msum->add_option("--method", method, "direct, swapped or both")
      ->check(CLI::IsMember({"direct", "swapped", "both"}));
  msum->add_option("--sieve-limit", sieve_limit, "Mobius sieve limit (default N)");
  msum->add_flag("--no-cache", no_cache);

  auto* bnd = app.add_subcommand("bounds", "explicit constants and bound shapes");
  std::uint64_t bq = 0, bs = 0;
  unsigned bg = 0, bd = 0;
  double bB = 0;
  bnd->add_option("--q", bq, "field size")->required();
  bnd->add_option("--g", bg, "genus")->required();
  bnd->add_option("--d", bd, "degree for C(2,d)");
  bnd->add_option("--N", N, "bound shapes evaluated at N");
  bnd->add_option("--s", bs, "denominator for gap_lower / mobexp2");
  bnd->add_option("--B", bB, "Davenport log power");

  auto* apx = app.add_subcommand("approx", "continued fractions and Dirichlet approximants");
  apx->add_option("--curve", curve_str);
  apx->add_option("--angle", angle_idx);
  apx->add_option("--alpha", alpha_str);
  apx->add_option("--alpha-radius", alpha_radius);
  apx->add_option("--N", N, "Dirichlet parameter (>= 2)")->required();
  apx->add_option("--s-max", smax, "probe convergents up to this denominator (default N)");
  apx->add_flag("--kappa-frobenius", use_kappa_frobenius,
                "check the large-denominator bound with kappa(q,g) of --curve");
  apx->add_flag("--no-cache", no_cache);

  auto* klo = app.add_subcommand("kloosterman", "Kloosterman sums across extensions");
  std::uint64_t kq = 0;
  klo->add_option("--q", kq, "base field size (prime power)")->required();
  klo->add_option("--a", a_str, "parameter a in F_q^*, e.g. [1] or 1")->required();
  klo->add_option("--n-max", n_max)->required();
  klo->add_option("--mobius-N", N, "append a Mobius-weighted angle sum of this length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (g.precision_bits < 64) throw Error(Errc::InvalidParams, "precision must be >= 64 bits");
  mpfr_prec_t prec = static_cast<mpfr_prec_t>(g.precision_bits);

  CountOptions copts;
  copts.enumeration_budget = g.budget;
  copts.workers = g.workers;

  std::optional<CacheStore> cache;
  auto cache_ptr = [&]() -> CacheStore* {
    if (no_cache) return nullptr;
    if (!cache) cache.emplace(resolve_cache_path(g));
    return &*cache;
  };

  if (*ccount) {
    CurveSpec curve = parse_curve_spec(curve_str);
    Table t;
    t.header = "frobmu curve-count curve=\"" + curve.spec_string() +
               "\" budget=" + std::to_string(g.budget) + " (exact integers)";
    t.columns = {"n", "count", "trace"};
    for (const CountRecord& r : trace_sequence(curve, n_max, cache_ptr(), copts))
      t.add_row({std::to_string(r.n), std::to_string(r.count), std::to_string(r.trace)});
    t.print(g.format);
    return 0;
  }

  if (*czeta) {
    CurveSpec curve = parse_curve_spec(curve_str);
    LPolynomial lp = zeta_of(curve, g, cache_ptr());
    json out;
    out["q"] = std::to_string(lp.q);
    out["g"] = lp.g;
    json coeffs = json::array();
    for (const BigInt& c : lp.coeffs) coeffs.push_back(c.str());
    out["P"] = coeffs;
    out["ordinary"] = is_ordinary(lp, curve.base()->p());
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*cang) {
    CurveSpec curve = parse_curve_spec(curve_str);
    FrobeniusSpectrum sp = spectrum_of(curve, g, cache_ptr());
    json out;
    out["q"] = std::to_string(sp.q);
    out["g"] = sp.g;
    out["precision_bits"] = static_cast<long>(sp.precision_bits);
    out["eigenvalue_radius"] = fmt_double(sp.eigenvalue_radius);
    out["angle_radius"] = fmt_double(sp.angle_radius);
    json entries = json::array();
    for (const auto& e : sp.entries) {
      json je;
      je["angle"] = e.angle.str();
      je["multiplicity"] = e.multiplicity;
      je["re"] = e.eigenvalue.re.str();
      je["im"] = e.eigenvalue.im.str();
      entries.push_back(je);
    }
    out["eigenvalues"] = entries;
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*msum) {
    if (sieve_limit == 0) sieve_limit = N;
    MobiusTable table = MobiusTable::sieve(sieve_limit, g.budget);
    Table t;
    t.header = "frobmu mobius-sum precision_bits=" + std::to_string(g.precision_bits) +
               " sieve_limit=" + std::to_string(sieve_limit) + " slack=" + fmt_double(g.slack);
    t.columns = kSumColumns;
    if (!alpha_str.empty()) {
      auto [alpha, radius] = parse_alpha(alpha_str, prec);
      if (alpha_radius >= 0) radius = alpha_radius;
      t.add_row(sum_row(mobius_exponential_sum(table, alpha, radius, N, prec, g.workers)));
    } else {
      CurveSpec curve = parse_curve_spec(curve_str);
      FrobeniusSpectrum sp = spectrum_of(curve, g, cache_ptr());
      if (angle_idx >= 0) {
        if (static_cast<size_t>(angle_idx) >= sp.entries.size())
          throw Error(Errc::InvalidParams, "angle index out of range");
        const auto& e = sp.entries[static_cast<size_t>(angle_idx)];
        t.add_row(
            sum_row(mobius_exponential_sum(table, e.angle, sp.angle_radius, N, prec, g.workers)));
      } else {
        if (method == "direct" || method == "both")
          t.add_row(
              sum_row(mobius_frobenius_sum(table, sp, N, SumMethod::direct, g.slack, g.workers)));
        if (method == "swapped" || method == "both")
          t.add_row(
              sum_row(mobius_frobenius_sum(table, sp, N, SumMethod::swapped, g.slack, g.workers)));
      }
    }
    t.print(g.format);
    return 0;
  }

  if (*bnd) {
    json out;
    out["q"] = bq;
    out["g"] = bg;
    out["kappa_q_g"] = kappa_frobenius(bq, bg, prec).str();
    out["gamma_q_g"] = gamma_qg(bq, bg, prec).str();
    if (bd > 0) out["C_2_d"] = bw_constant(2, bd, prec).str();
    if (N >= 2) {
      json rhs;
      rhs["theorem2"] = bound_theorem2(N, bq, bg, g.slack, prec).str();
      rhs["mu_alpha"] = bound_mu_alpha(N, kappa_frobenius(bq, bg, prec), g.slack, prec).str();
      if (bB > 0) rhs["davenport"] = bound_davenport(N, bB, g.slack, prec).str();
      if (bs > 0) {
        rhs["mobexp2"] = bound_mobexp2(N, bs, g.slack, prec).str();
        rhs["gap_lower"] =
            bound_gap_lower(BigInt(static_cast<unsigned long>(bs)), kappa_frobenius(bq, bg, prec), prec)
                .str();
      }
      out["rhs"] = rhs;
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (*apx) {
    Real alpha(prec);
    double radius = 0;
    std::uint64_t q_for_kappa = 0;
    unsigned g_for_kappa = 0;
    if (!alpha_str.empty()) {
      auto [a, r] = parse_alpha(alpha_str, prec);
      alpha = std::move(a);
      radius = alpha_radius >= 0 ? alpha_radius : r;
    } else {
      CurveSpec curve = parse_curve_spec(curve_str);
      FrobeniusSpectrum sp = spectrum_of(curve, g, cache_ptr());
      if (angle_idx < 0 || static_cast<size_t>(angle_idx) >= sp.entries.size())
        throw Error(Errc::InvalidParams, "--angle selects which Frobenius angle to expand");
      alpha = sp.entries[static_cast<size_t>(angle_idx)].angle;
      radius = sp.angle_radius;
      q_for_kappa = sp.q;
      g_for_kappa = sp.g;
    }
    if (smax == 0) smax = N;
    Table t;
    t.header = "frobmu approx precision_bits=" + std::to_string(g.precision_bits) +
               " N=" + std::to_string(N) + " s_max=" + std::to_string(smax);
    t.columns = {"s", "r", "gap", "gap_s_N", "exponent_estimate"};
    for (const ProbeRow& row : irrationality_probe(alpha, radius, smax)) {
      Real gsn = row.gap * Real::of_bigint(row.s * BigInt(static_cast<unsigned long>(N)), 96);
      t.add_row({row.s.str(), row.r.str(), row.gap.str(), gsn.str(17),
                 fmt_double(row.exponent_estimate)});
    }
    RationalApproximant ap = dirichlet_approximant(alpha, radius, N);
    t.notes.push_back("dirichlet r=" + ap.r.str() + " s=" + ap.s.str() + " gap=" + ap.gap.str() +
                      " contract=gap<=1/(sN)");
    if (use_kappa_frobenius) {
      if (q_for_kappa == 0)
        throw Error(Errc::InvalidParams, "--kappa-frobenius needs a curve-derived angle");
      Real kappa = kappa_frobenius(q_for_kappa, g_for_kappa, prec);
      LargeDenomReport rep = large_denominator_check(alpha, radius, N, kappa);
      t.notes.push_back("large_denominator s=" + rep.s.str() +
                        " lower_bound=" + rep.lower_bound.str(17) +
                        " satisfied=" + (rep.satisfied ? "true" : "false"));
    }
    t.print(g.format);
    return 0;
  }

  if (*klo) {
    auto [kp, km] = parse_prime_power(kq);
    auto fq = Field::make(kp, km);
    FieldElement a = parse_element_arg(fq, a_str);
    CharSumOptions opts;
    opts.enumeration_budget = g.budget;
    opts.precision_bits = prec;
    opts.workers = g.workers;
    Table t;
    t.header = "frobmu kloosterman field=" + fq->spec_string() +
               " precision_bits=" + std::to_string(g.precision_bits);
    t.columns = {"n", "T_n_direct", "T_n_recurrence", "deviation"};
    RecurrenceReport rep = kloosterman_recurrence_check(fq, a, n_max, opts);
    for (const auto& row : rep.rows)
      t.add_row({std::to_string(row.n), row.direct.str(), row.recurrence.str(),
                 fmt_double(row.deviation)});
    t.print(g.format);
    if (N > 0) {
      CharSumResult d1 = char_sum_direct(RationalMap::kloosterman(fq, a), 1, opts);
      KloostermanSpectrum sp = kloosterman_spectrum(fq, a, d1.unnormalised.re, d1.rounding_bound);
      MobiusTable table = MobiusTable::sieve(N, g.budget);
      Table mt;
      mt.header = "frobmu kloosterman mobius-sum phi=" + sp.theta_angle.str() +
                  " precision_bits=" + std::to_string(g.precision_bits);
      mt.columns = kSumColumns;
      mt.add_row(sum_row(mobius_char_sum(table, sp, N, prec, g.workers)));
      mt.print(g.format);
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
