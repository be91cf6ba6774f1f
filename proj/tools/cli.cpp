// SPDX-License-Identifier: MIT
#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "irrsum/dipp.hpp"
#include "irrsum/domains.hpp"
#include "irrsum/io.hpp"
#include "irrsum/summation.hpp"

namespace irrsum::cli {

namespace {

using nlohmann::json;

constexpr long kMinBits = 16;

long checked_bits(long bits, const std::string& where) {
  if (bits < kMinBits || bits > kMaxPrecisionBits) {
    throw std::invalid_argument(where + ": precision must be between " + std::to_string(kMinBits) + " and " +
                                std::to_string(kMaxPrecisionBits) + " bits");
  }
  return bits;
}

long parse_long(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument(where + ": not an integer: '" + s + "'");
  return v;
}

// --prec, else IRRSUM_PREC, else the library default
Precision resolve_precision(long flag) {
  if (flag > 0) return Precision{checked_bits(flag, "--prec")};
  if (const char* env = std::getenv(kPrecisionEnv); env != nullptr && *env != '\0') {
    return Precision{checked_bits(parse_long(env, kPrecisionEnv), kPrecisionEnv)};
  }
  return kDefaultPrecision;
}

Complex parse_w(const std::string& text, Precision p) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return Complex(Real::parse(text, p), Real(p));
  return Complex(Real::parse(text.substr(0, comma), p), Real::parse(text.substr(comma + 1), p));
}

std::vector<long> parse_list(const std::string& text) {
  std::vector<long> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(checked_bits(parse_long(item, "--precisions"), "--precisions"));
  if (v.empty()) throw std::invalid_argument("--precisions: empty list");
  return v;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write '" + path + "'");
  f << text;
  if (!f) throw std::invalid_argument("write to '" + path + "' failed");
}

Real rounded(const Real& x, Precision p) {
  Real y(x, p);
  return y;
}

Complex rounded(const Complex& z, Precision p) {
  Complex y = z;
  y.set_precision(p);
  return y;
}

struct SumArgs {
  std::string file;
  std::string w;
  std::string method = "dipp";
  std::string a = "0";
  std::string k = "1";
  long prec = 0;
  std::string tol = "1e-10";
};

int cmd_sum(const SumArgs& args, std::ostream& out) {
  const SeriesSpec spec = load_series_file(args.file);
  const Precision p = resolve_precision(args.prec);
  const Complex w = parse_w(args.w, p);
  const Real a = Real::parse(args.a, p);
  const Real k = Real::parse(args.k, p);
  const Real tol = Real::parse(args.tol, p);
  if (!(tol.sign() > 0)) throw std::invalid_argument("--tol must be > 0");

  json doc{{"label", spec.label}, {"method", args.method}, {"w", decimal(w)}, {"precision_bits", p.bits}};
  bool converged = false;
  if (args.method == "dipp") {
    const DippResult r = dipp_sum(spec, k, w, tol, -1, p);
    const auto& d = r.diagnostics;
    converged = r.converged;
    doc["value"] = decimal(rounded(r.value, p));
    doc["tail"] = decimal(rounded(d.tail, p));
    doc["diagnostics"] = {{"windows", d.windows},
                          {"diagnostic_sum", decimal(rounded(d.diagnostic_sum, p))},
                          {"rounding", decimal(rounded(d.rounding, p))},
                          {"bound_estimate", decimal(rounded(d.bound_estimate, p))},
                          {"working_bits", d.working.bits},
                          {"truncation", decimal(rounded(d.truncation, p))},
                          {"k", decimal(k)},
                          {"note", d.note}};
  } else if (args.method == "packages") {
    const PackageDecomposition dec = summate_by_packages(spec, a, k, {}, p);
    const DecompositionValue v = eval_decomposition(dec, w);
    long last = -1;
    for (const auto& t : dec.terms) last = std::max(last, t.window);
    const Complex last_window =
        last >= 0 ? Complex(v.value - eval_decomposition(dec, w, last - 1).value) : Complex(p);
    // the windows are those of the integration by parts, so its tail estimate applies
    std::string note = dec.note;
    Real dipp_tail(p);
    converged = dec.note.empty();
    if (!dec.closed) {
      const DippResult dr = dipp_sum(spec, k, w, tol, -1, p);
      dipp_tail = rounded(dr.diagnostics.tail, p);
      converged = converged && dr.converged;
      if (!dr.converged) note += std::string(note.empty() ? "" : "; ") + dr.diagnostics.note;
    }
    doc["value"] = decimal(v.value);
    doc["tail"] = decimal(rounded(v.package_tail, p));
    doc["diagnostics"] = {{"terms", dec.terms.size()},
                          {"windows", dec.windows},
                          {"working_bits", dec.working.bits},
                          {"closed", dec.closed},
                          {"last_window", decimal(rounded(last_window, p))},
                          {"dipp_tail", decimal(dipp_tail)},
                          {"k_prime", decimal(dec.k_prime)},
                          {"c", decimal(dec.c)},
                          {"c_bound", decimal(dec.c_bound)},
                          {"r", decimal(dec.r)},
                          {"eps_degen", decimal(dec.eps)},
                          {"note", note}};
  } else if (args.method == "naive") {
    const Series s = materialize(spec, p);
    converged = true;
    doc["value"] = decimal(naive_sum(spec, w, p));
    doc["tail"] = "0";
    doc["diagnostics"] = {{"terms", s.coefficients.size()}, {"truncation", decimal(s.support.cutoff)}};
  } else {
    throw std::invalid_argument("--method must be dipp, packages or naive");
  }
  doc["converged"] = converged;
  out << doc.dump(2) << "\n";
  return converged ? 0 : 2;
}

struct PackagesArgs {
  std::string file;
  std::string a = "0";
  std::string k = "1";
  std::string eps;
  long nmax = -1;
  std::string out;
  long prec = 0;
  bool close_tail = false;
};

int cmd_packages(const PackagesArgs& args, std::ostream& out) {
  const SeriesSpec spec = load_series_file(args.file);
  const Precision p = resolve_precision(args.prec);
  SummationOptions opts;
  if (!args.eps.empty()) opts.eps = Real::parse(args.eps, p);
  opts.n_max = args.nmax;
  opts.close_tail = args.close_tail;
  PackageDecomposition dec;
  try {
    dec = summate_by_packages(spec, Real::parse(args.a, p), Real::parse(args.k, p), opts, p);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("packages pipeline for '") + args.file + "': " + e.what());
  }
  emit(args.out, decomposition_to_json(dec).dump(2) + "\n", out);
  return 0;
}

struct RegionArgs {
  std::string domain;
  std::string a = "0";
  std::string k = "1";
  std::string C = "1";
  std::string ymin = "-10";
  std::string ymax = "10";
  long count = 101;
  std::string out;
};

int cmd_region(const RegionArgs& args, std::ostream& out) {
  const Precision p{128};
  const Real a = Real::parse(args.a, p);
  const Real ymin = Real::parse(args.ymin, p);
  const Real ymax = Real::parse(args.ymax, p);
  if (args.count < 2) throw std::invalid_argument("--count must be >= 2");
  std::vector<Complex> pts;
  if (args.domain == "log") {
    const Real k = Real::parse(args.k, p);
    if (!(k.sign() > 0)) throw std::invalid_argument("--k must be > 0");
    pts = boundary_samples(LogDomain{a, k}, ymin, ymax, args.count);
  } else if (args.domain == "quad") {
    const Real C = Real::parse(args.C, p);
    if (!(C.sign() > 0)) throw std::invalid_argument("--C must be > 0");
    if (a.sign() > 0) throw std::invalid_argument("--a must be <= 0 for the quadratic domain");
    pts = boundary_samples(QuadDomain{C, a}, ymin, ymax, args.count);
  } else {
    throw std::invalid_argument("--domain must be log or quad");
  }
  std::string csv = "y,x_boundary\n";
  for (const auto& z : pts) csv += decimal(z.im) + "," + decimal(z.re) + "\n";
  emit(args.out, csv, out);
  return 0;
}

struct BenchArgs {
  std::string file;
  std::string w;
  std::string precisions = "53,128,256";
  std::string a = "0";
  std::string k = "1";
  std::string out;
};

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  const SeriesSpec spec = load_series_file(args.file);
  const std::vector<long> bits = parse_list(args.precisions);
  const Precision p{*std::max_element(bits.begin(), bits.end())};
  const Complex w = parse_w(args.w, p);
  const CompareReport rep = compare_methods(spec, w, bits, Real::parse(args.a, p), Real::parse(args.k, p));
  std::string csv = "method,precision_bits,rel_error,digits,value_re,value_im\n";
  const auto row = [&](const std::string& m, long b, const std::string& err, const std::string& digits,
                       const Complex& v) {
    csv += m + "," + std::to_string(b) + "," + err + "," + digits + "," + decimal(v.re) + "," + decimal(v.im) + "\n";
  };
  Complex oracle = rep.oracle;
  oracle.set_precision(p);
  row("oracle", 4096, "0", "inf", oracle);
  for (const auto& r : rep.rows) {
    std::ostringstream d;
    d.precision(4);
    d << r.digits;
    row(r.method, r.bits, r.rel_error.to_string(6), d.str(), r.value);
  }
  emit(args.out, csv, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Summation of irrational exponential series by Vandermonde packages", "irrsum"};
  app.require_subcommand(1);

  SumArgs sa;
  auto* sum = app.add_subcommand("sum", "Sum a series at one point w");
  sum->add_option("file", sa.file, "Series file (JSON)")->required();
  sum->add_option("--w", sa.w, "Evaluation point re,im")->required();
  sum->add_option("--method", sa.method, "dipp, packages or naive")->capture_default_str();
  sum->add_option("--a", sa.a, "Boundedness domain parameter a")->capture_default_str();
  sum->add_option("--k", sa.k, "Window density k of the cut sequence")->capture_default_str();
  sum->add_option("--prec", sa.prec, "Precision in bits (default: $IRRSUM_PREC or 256)");
  sum->add_option("--tol", sa.tol, "Relative tolerance")->capture_default_str();

  PackagesArgs pa;
  auto* pk = app.add_subcommand("packages", "Write the package decomposition of a series as JSON");
  pk->add_option("file", pa.file, "Series file (JSON)")->required();
  pk->add_option("--a", pa.a, "Boundedness domain parameter a")->capture_default_str();
  pk->add_option("--k", pa.k, "Window density k of the cut sequence")->capture_default_str();
  pk->add_option("--eps", pa.eps, "Cluster width for border terms (default: quarter of the smallest cut gap)");
  pk->add_option("--nmax", pa.nmax, "Last window (-1: all below the cutoff)")->capture_default_str();
  pk->add_option("--out", pa.out, "Output path (default: stdout)");
  pk->add_option("--prec", pa.prec, "Precision in bits (default: $IRRSUM_PREC or 256)");
  pk->add_flag("--close-tail", pa.close_tail, "End with a window to infinity holding all remaining atoms");

  RegionArgs ra;
  auto* rg = app.add_subcommand("region", "Sample the boundary of a neighborhood of -infinity as CSV");
  rg->add_option("--domain", ra.domain, "log or quad")->required();
  rg->add_option("--a", ra.a, "Parameter a")->capture_default_str();
  rg->add_option("--k", ra.k, "k of the logarithmic domain")->capture_default_str();
  rg->add_option("--C", ra.C, "C of the quadratic domain")->capture_default_str();
  rg->add_option("--ymin", ra.ymin, "Lowest imaginary part")->capture_default_str();
  rg->add_option("--ymax", ra.ymax, "Highest imaginary part")->capture_default_str();
  rg->add_option("--count", ra.count, "Number of samples")->capture_default_str();
  rg->add_option("--out", ra.out, "Output path (default: stdout)");

  BenchArgs ba;
  auto* bc = app.add_subcommand("bench-cancel", "Relative errors of each method and precision as CSV");
  bc->add_option("file", ba.file, "Series file (JSON)")->required();
  bc->add_option("--w", ba.w, "Evaluation point re,im")->required();
  bc->add_option("--precisions", ba.precisions, "Comma-separated precisions in bits")->capture_default_str();
  bc->add_option("--a", ba.a, "Boundedness domain parameter a")->capture_default_str();
  bc->add_option("--k", ba.k, "Window density k of the cut sequence")->capture_default_str();
  bc->add_option("--out", ba.out, "Output path (default: stdout)");

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*sum) return cmd_sum(sa, out);
    if (*pk) return cmd_packages(pa, out);
    if (*rg) return cmd_region(ra, out);
    if (*bc) return cmd_bench(ba, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace irrsum::cli
