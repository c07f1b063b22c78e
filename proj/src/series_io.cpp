#include "frobkp/series_io.hpp"

#include <fstream>
#include <sstream>

namespace frobkp {

namespace {

[[noreturn]] void bad(const std::string& what) { throw PointParseError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) bad(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

int parse_exponent(const std::string& key) {
  std::size_t used = 0;
  int e = 0;
  try {
    e = std::stoi(key, &used);
  } catch (const std::exception&) {
    bad("bad exponent \"" + key + "\"");
  }
  if (used != key.size()) bad("bad exponent \"" + key + "\"");
  return e;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    bad(e.what());
  }
}

}  // namespace

std::string rational_text(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) bad("expected a rational string, got " + j.dump());
  const std::string s = j.get<std::string>();
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) bad("bad rational \"" + s + "\"");
  if (q.get_den() == 0) bad("zero denominator in \"" + s + "\"");
  q.canonicalize();
  return q;
}

Json scalar_to_json(const ExactScalar& x) {
  if (x.is_rational()) return rational_text(x.rational());
  Json coeffs = Json::array();
  for (const auto& c : x.coordinates()) coeffs.push_back(rational_text(c));
  return {{"rho_pow_coeffs", coeffs},
          {"rho_degree", x.field()->degree},
          {"rho_radicand", rational_text(x.field()->radicand)}};
}

ExactScalar scalar_from_json(const Json& j) {
  return guarded([&]() -> ExactScalar {
    if (!j.is_object()) return ExactScalar(parse_rational(j));
    const int d = int_field(j, "rho_degree");
    if (d < 1) bad("rho_degree must be positive");
    const Rational radicand = parse_rational(field(j, "rho_radicand"));
    const Json& cs = field(j, "rho_pow_coeffs");
    if (!cs.is_array() || static_cast<int>(cs.size()) > d) bad("rho_pow_coeffs must list at most rho_degree values");
    std::vector<Rational> coords;
    for (const auto& c : cs) coords.push_back(parse_rational(c));
    return ExactScalar::from_coordinates(make_radical_field(static_cast<unsigned>(d), radicand), coords);
  });
}

Json series_to_json(const ExactSeries& s) {
  static const char* parity[] = {"even", "odd", "mixed"};
  Json out;
  out["parity"] = parity[static_cast<int>(s.parity())];
  out["side"] = s.side() == Side::Infinity ? "inf" : s.side() == Side::Zero ? "zero" : "finite";
  Json coeffs = Json::object();
  s.for_each([&](int e, const ExactScalar& c) { coeffs[std::to_string(e)] = scalar_to_json(c); });
  out["coeffs"] = coeffs;
  const Window& w = s.window();
  out["trusted"] = {w.bounded_below() ? Json(w.lo) : Json(nullptr), w.bounded_above() ? Json(w.hi) : Json(nullptr)};
  return out;
}

ExactSeries series_from_json(const Json& j) {
  return guarded([&]() -> ExactSeries {
    if (!j.is_object()) bad("a series must be a JSON object");
    std::optional<Parity> parity;
    if (j.contains("parity")) {
      const std::string p = j.at("parity").get<std::string>();
      if (p == "even") parity = Parity::Even;
      else if (p == "odd") parity = Parity::Odd;
      else if (p == "mixed") parity = Parity::Mixed;
      else bad("bad parity \"" + p + "\"");
    }
    Window w;
    if (j.contains("trusted")) {
      const Json& t = j.at("trusted");
      if (!t.is_array() || t.size() != 2) bad("trusted must be [lo, hi]");
      if (!t[0].is_null()) w.lo = t[0].get<int>();
      if (!t[1].is_null()) w.hi = t[1].get<int>();
    }
    if (j.contains("side")) {
      const std::string side = j.at("side").get<std::string>();
      const bool ok = (side == "finite" && !w.bounded_below() && !w.bounded_above()) ||
                      (side == "inf" && w.bounded_below() && !w.bounded_above()) ||
                      (side == "zero" && w.bounded_above() && !w.bounded_below());
      if (!ok) bad("side \"" + side + "\" does not match the trusted window");
    }
    std::vector<std::pair<int, ExactScalar>> terms;
    const Json& cs = field(j, "coeffs");
    if (!cs.is_object()) bad("coeffs must be an object");
    for (const auto& [k, v] : cs.items()) terms.emplace_back(parse_exponent(k), scalar_from_json(v));
    try {
      return ExactSeries::from_terms(terms, parity, w);
    } catch (const BadSupport& e) {
      bad(e.what());
    }
  });
}

ExactPoint point_from_json(const Json& j, int depth) {
  return guarded([&]() -> ExactPoint {
    const int m = int_field(j, "m"), n = int_field(j, "n");
    if (m < 1 || n < 1) bad("m and n must be positive");
    if (j.contains("chart")) {
      const Json& c = j.at("chart");
      FlatChart<ExactScalar> chart;
      chart.m = m;
      chart.n = n;
      if (c.contains("t"))
        for (const auto& [k, v] : c.at("t").items()) chart.t[parse_exponent(k)] = scalar_from_json(v);
      for (const auto& v : field(c, "h")) chart.h.push_back(scalar_from_json(v));
      for (const auto& v : field(c, "hhat")) chart.hhat.push_back(scalar_from_json(v));
      if (j.contains("depth")) depth = int_field(j, "depth");
      return reconstruct(chart, depth);
    }
    const ExactSeries w = series_from_json(field(j, "w")), l = series_from_json(field(j, "l"));
    if (j.contains("mode") && j.at("mode") != "poly") bad("series point files must use mode \"poly\"");
    return make_point_poly(m, n, w, l, depth);
  });
}

Json point_to_json(const ExactPoint& pt) {
  if (!pt.has_w()) throw ConfigError("the point has no cached w");
  return {{"m", pt.m()}, {"n", pt.n()}, {"mode", "poly"}, {"w", series_to_json(pt.w())}, {"l", series_to_json(pt.l())}};
}

LPoint lpoint_from_json(const Json& j) {
  return guarded([&]() -> LPoint {
    const int m = int_field(j, "m"), n = int_field(j, "n");
    if (j.contains("chart") || j.contains("w")) {
      const auto pt = point_from_json(j);
      std::optional<Rational> rho;
      if (pt.rho().is_rational()) rho = pt.rho().rational();
      return lpoint(m, n, pt.l(), rho);
    }
    std::optional<Rational> rho;
    if (j.contains("rho")) rho = parse_rational(j.at("rho"));
    return lpoint(m, n, series_from_json(field(j, "l")), rho);
  });
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    bad(path + ": " + e.what());
  }
}

}  // namespace frobkp
