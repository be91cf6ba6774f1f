// SPDX-License-Identifier: MIT
#include "irrsum/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace irrsum {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("series file: " + what); }

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name)) bad(where + " needs \"" + name + "\"");
  return obj.at(name);
}

// A JSON number or decimal string, kept as text so it can be parsed at any precision.
std::string number_text(const json& v, const std::string& where) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_number()) {
    s = v.dump();
  } else {
    bad(where + " must be a number");
  }
  try {
    (void)Real::parse(s, Precision{64});
  } catch (const std::invalid_argument&) {
    bad(where + " is not a number: " + s);
  }
  return s;
}

std::string positive_text(const json& v, const std::string& where) {
  std::string s = number_text(v, where);
  if (!(Real::parse(s, Precision{64}).sign() > 0)) bad(where + " must be > 0");
  return s;
}

Real real_at(const json& v, Precision p, const char* what) {
  if (!v.is_string()) throw std::invalid_argument(std::string("decomposition: ") + what + " must be a decimal string");
  return Real::parse(v.get<std::string>(), p);
}

Complex complex_at(const json& v, Precision p, const char* what) {
  if (!v.is_array() || v.size() != 2) {
    throw std::invalid_argument(std::string("decomposition: ") + what + " must be [re, im]");
  }
  return Complex(real_at(v[0], p, what), real_at(v[1], p, what));
}

}  // namespace

std::size_t round_trip_digits(Precision p) {
  return 1 + static_cast<std::size_t>(std::ceil(static_cast<double>(p.bits) * std::log10(2.0)));
}

std::string decimal(const Real& x) { return x.to_string(round_trip_digits(x.precision())); }

json decimal(const Complex& z) { return json::array({decimal(z.re), decimal(z.im)}); }

SeriesSpec parse_series(const json& doc) {
  if (!doc.is_object()) bad("top level must be an object");
  SeriesSpec s;
  const json& sup = field(doc, "support", "document");
  const std::string skind = field(sup, "kind", "support").is_string() ? sup.at("kind").get<std::string>() : "";
  if (skind == "r_alpha") {
    s.support = SeriesSpec::Support::r_alpha;
    if (sup.contains("alpha")) {
      const json& a = sup.at("alpha");
      s.alpha = a.is_string() && a.get<std::string>() == "sqrt2" ? "sqrt2" : positive_text(a, "support.alpha");
    }
    s.cutoff = positive_text(field(sup, "cutoff", "support"), "support.cutoff");
  } else if (skind == "integers") {
    s.support = SeriesSpec::Support::integers;
    s.cutoff = positive_text(field(sup, "cutoff", "support"), "support.cutoff");
  } else if (skind == "explicit") {
    s.support = SeriesSpec::Support::explicit_points;
    const json& pts = field(sup, "points", "support");
    if (!pts.is_array()) bad("support.points must be an array");
    for (std::size_t i = 0; i < pts.size(); ++i) {
      s.points.push_back(number_text(pts[i], "support.points[" + std::to_string(i) + "]"));
      if (Real::parse(s.points.back(), Precision{64}).sign() < 0) bad("support points must be >= 0");
    }
  } else {
    bad("unknown support kind '" + skind + "'");
  }

  const json& co = field(doc, "coefficients", "document");
  const std::string ckind = field(co, "kind", "coefficients").is_string() ? co.at("kind").get<std::string>() : "";
  if (ckind == "unit") {
    s.coefficients = SeriesSpec::Coefficients::unit;
  } else if (ckind == "geometric") {
    s.coefficients = SeriesSpec::Coefficients::geometric;
    s.ratio = positive_text(field(co, "ratio", "coefficients"), "coefficients.ratio");
  } else if (ckind == "explicit") {
    s.coefficients = SeriesSpec::Coefficients::explicit_values;
    const json& vals = field(co, "values", "coefficients");
    if (!vals.is_array()) bad("coefficients.values must be an array");
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const std::string where = "coefficients.values[" + std::to_string(i) + "]";
      if (vals[i].is_array()) {
        if (vals[i].size() != 2) bad(where + " must be a number or [re, im]");
        s.values.emplace_back(number_text(vals[i][0], where), number_text(vals[i][1], where));
      } else {
        s.values.emplace_back(number_text(vals[i], where), "0");
      }
    }
    if (s.support == SeriesSpec::Support::explicit_points && s.values.size() != s.points.size()) {
      bad(std::to_string(s.values.size()) + " values for " + std::to_string(s.points.size()) + " points");
    }
  } else if (ckind == "paired_difference") {
    s.coefficients = SeriesSpec::Coefficients::paired_difference;
    s.delta = positive_text(field(co, "delta", "coefficients"), "coefficients.delta");
    const json& pairs = field(co, "pairs", "coefficients");
    if (!pairs.is_number_integer() || pairs.get<long>() < 1) bad("coefficients.pairs must be an integer >= 1");
    s.pairs = pairs.get<long>();
  } else {
    bad("unknown coefficients kind '" + ckind + "'");
  }

  if (doc.contains("label")) {
    if (!doc.at("label").is_string()) bad("label must be a string");
    s.label = doc.at("label").get<std::string>();
  }
  return s;
}

SeriesSpec parse_series_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  return parse_series(doc);
}

SeriesSpec load_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open series file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_series_text(buf.str());
}

json decomposition_to_json(const PackageDecomposition& dec) {
  json terms = json::array();
  for (const auto& t : dec.terms) {
    json nodes = json::array();
    for (const auto& x : t.nodes) nodes.push_back(decimal(x));
    terms.push_back({{"b", decimal(t.b)}, {"nodes", std::move(nodes)}, {"window", t.window}, {"index", t.index}});
  }
  json tail = json::array();
  for (const auto& x : dec.tail) tail.push_back(decimal(x));
  return json{{"terms", std::move(terms)},
              {"k_prime", decimal(dec.k_prime)},
              {"c", decimal(dec.c)},
              {"c_bound", decimal(dec.c_bound)},
              {"r", decimal(dec.r)},
              {"r_clipped", dec.r_clipped},
              {"mu", decimal(dec.mu)},
              {"nu", decimal(dec.nu)},
              {"tail", std::move(tail)},
              {"a", decimal(dec.a)},
              {"k", decimal(dec.k)},
              {"eps_degen", decimal(dec.eps)},
              {"windows", dec.windows},
              {"closed", dec.closed},
              {"integer_support", dec.integer_support},
              {"precision_bits", dec.precision.bits},
              {"working_bits", dec.working.bits},
              {"note", dec.note}};
}

PackageDecomposition decomposition_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("decomposition: top level must be an object");
  const auto need = [&](const char* name) -> const json& {
    if (!doc.contains(name)) throw std::invalid_argument(std::string("decomposition: missing \"") + name + "\"");
    return doc.at(name);
  };
  const json& bits = need("precision_bits");
  if (!bits.is_number_integer() || bits.get<long>() < 2 || bits.get<long>() > kMaxPrecisionBits) {
    throw std::invalid_argument("decomposition: precision_bits out of range");
  }
  const Precision p{bits.get<long>()};
  PackageDecomposition dec;
  dec.precision = p;
  dec.working = Precision{doc.value("working_bits", p.bits)};
  for (const auto& t : need("terms")) {
    PackageTerm term;
    term.b = complex_at(t.at("b"), p, "b");
    for (const auto& x : t.at("nodes")) term.nodes.push_back(real_at(x, p, "nodes"));
    if (term.nodes.empty()) throw std::invalid_argument("decomposition: term without nodes");
    term.window = t.at("window").get<long>();
    term.index = t.value("index", static_cast<long>(term.nodes.size()) - 1);
    dec.terms.push_back(std::move(term));
  }
  dec.k_prime = real_at(need("k_prime"), p, "k_prime");
  dec.c = real_at(need("c"), p, "c");
  dec.r = real_at(need("r"), p, "r");
  for (const auto& x : need("tail")) dec.tail.push_back(real_at(x, p, "tail"));
  const auto opt_real = [&](const char* name) { return doc.contains(name) ? real_at(doc.at(name), p, name) : Real(p); };
  dec.c_bound = opt_real("c_bound");
  dec.mu = opt_real("mu");
  dec.nu = opt_real("nu");
  dec.a = opt_real("a");
  dec.k = opt_real("k");
  dec.eps = opt_real("eps_degen");
  dec.r_clipped = doc.value("r_clipped", false);
  dec.windows = doc.value("windows", 0L);
  dec.closed = doc.value("closed", false);
  dec.integer_support = doc.value("integer_support", false);
  dec.note = doc.value("note", std::string());
  return dec;
}

}  // namespace irrsum
