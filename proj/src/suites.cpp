#include "frobkp/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

namespace frobkp {

namespace {

using Task = std::function<Record()>;

int worker_count(int requested, std::size_t tasks) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("FROBKP_THREADS")) n = std::atoi(env);
  }
  if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return std::max(1, std::min<int>(n, static_cast<int>(tasks)));
}

Record run_one(const Task& task, const std::string& check, const Json& params) {
  const auto start = std::chrono::steady_clock::now();
  Record r;
  try {
    r = task();
  } catch (const UntrustedRegion& e) {
    r = {check, params, "skip", e.what()};
  } catch (const std::exception& e) {
    r = {check, params, "fail", e.what()};
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

struct Batch {
  std::vector<Task> tasks;
  std::vector<std::pair<std::string, Json>> labels;
  void add(std::string check, Json params, Task t) {
    labels.emplace_back(std::move(check), std::move(params));
    tasks.push_back(std::move(t));
  }
};

// Results come back in submission order whatever the completion order.
Report run_batch(const Batch& b, int threads) {
  Report out;
  out.records.resize(b.tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < b.tasks.size();)
      out.records[i] = run_one(b.tasks[i], b.labels[i].first, b.labels[i].second);
  };
  const int n = worker_count(threads, b.tasks.size());
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return out;
}

Record verdict(const std::string& check, const Json& params, const std::string& witness) {
  return {check, params, witness.empty() ? "pass" : "fail", witness};
}

Json base_params(const SuiteConfig& cfg) { return {{"m", cfg.m}, {"n", cfg.n}}; }

// The points a suite runs on: the point file, or cfg.points seeded random points.
std::vector<std::pair<Json, ExactPoint>> suite_points(const SuiteConfig& cfg) {
  std::vector<std::pair<Json, ExactPoint>> out;
  if (cfg.point) {
    const auto pt = point_from_json(read_json_file(*cfg.point), cfg.depth);
    if (pt.m() != cfg.m || pt.n() != cfg.n) throw ConfigError("point file (m, n) differs from --m/--n");
    out.emplace_back(Json{{"point", *cfg.point}}, pt);
    return out;
  }
  for (int k = 0; k < cfg.points; ++k) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(k);
    out.emplace_back(Json{{"seed", seed}}, gen_point(cfg.m, cfg.n, seed, Mode::Polynomial, cfg.depth));
  }
  return out;
}

Json with(Json a, const Json& b) {
  a.update(b);
  return a;
}

void gram_suite(const SuiteConfig& cfg, Batch& b) {
  for (const auto& [where, pt] : suite_points(cfg)) {
    const Json params = with(base_params(cfg), where);
    b.add("gram", params, [&cfg, pt, params] {
      std::string witness;
      const auto labels = all_labels(cfg.m, cfg.n, cfg.t_range);
      std::vector<TangentVec<ExactScalar>> vs;
      for (const auto& u : labels) vs.push_back(coordinate_vector(pt, u));
      for (std::size_t i = 0; i < labels.size() && witness.empty(); ++i)
        for (std::size_t j = i; j < labels.size() && witness.empty(); ++j) {
          const ExactScalar g = metric(pt, vs[i], vs[j]);
          const Rational want = gram(labels[i], labels[j], cfg.m, cfg.n);
          if (!(g == ExactScalar(want)))
            witness = "<" + labels[i].str() + "," + labels[j].str() + "> = " + g.str() + ", expected " +
                      rational_text(want);
        }
      return verdict("gram", params, witness);
    });
  }
}

void frobenius_suite(const SuiteConfig& cfg, Batch& b) {
  for (const auto& [where, pt] : suite_points(cfg)) {
    const Json params = with(base_params(cfg), where);
    b.add("c_tensor", params, [&cfg, pt, params] {
      const auto labels = all_labels(cfg.m, cfg.n, 1);
      for (const auto& u : labels)
        for (const auto& v : labels)
          for (const auto& s : labels) {
            if (!(u <= v && v <= s)) continue;
            const ExactScalar d = c_tensor_direct(pt, u, v, s), c = c_tensor_closed(pt, u, v, s);
            if (!(d == c))
              return verdict("c_tensor", params,
                             "c(" + u.str() + "," + v.str() + "," + s.str() + "): " + d.str() + " vs " + c.str());
          }
      return verdict("c_tensor", params, "");
    });
    b.add("eta_roundtrip", params, [&cfg, pt, params] {
      for (const auto& u : all_labels(cfg.m, cfg.n, std::min(cfg.t_range, 2))) {
        const auto v = coordinate_vector(pt, u);
        if (!agrees(eta_map(pt, eta_inverse(pt, v)), v)) return verdict("eta_roundtrip", params, u.str());
        const auto w = coordinate_covector(pt, u);
        if (!agrees(eta_inverse(pt, eta_map(pt, w)), w)) return verdict("eta_roundtrip", params, "d" + u.str());
      }
      return verdict("eta_roundtrip", params, "");
    });
    b.add("flat_roundtrip", params, [&cfg, pt, params] {
      const auto chart = flat_coords(pt, -cfg.t_range, 1);
      const auto back = flat_coords(reconstruct(chart, pt.depth()), -cfg.t_range, 1);
      for (const auto& u : all_labels(cfg.m, cfg.n, cfg.t_range)) {
        if (u.kind == Label::Kind::T && u.index > 1) continue;
        if (!(back.value(u) == chart.value(u)))
          return verdict("flat_roundtrip", params, u.str() + ": " + back.value(u).str() + " vs " + chart.value(u).str());
      }
      return verdict("flat_roundtrip", params, "");
    });
    b.add("product_unity", params, [&cfg, pt, params] {
      for (const auto& u : all_labels(cfg.m, cfg.n, 1)) {
        const auto w = coordinate_covector(pt, u);
        if (!agrees(cot_product(pt, cot_unity(pt), w), w)) return verdict("product_unity", params, u.str());
      }
      return verdict("product_unity", params, "");
    });
  }
}

Json poly_json(const Poly& p, int vars) {
  Json terms = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    Json e = Json::array();
    for (int a = 0; a < vars; ++a) e.push_back(mono.e[a]);
    terms.push_back({{"coeff", rational_text(c)}, {"exponents", e}});
  }
  return terms;
}

void potential_suite(int m, int n, Batch& b) {
  const Json params{{"m", m}, {"n", n}};
  b.add("potential", params, [m, n, params] {
    const Poly F = build_F(m, n);
    Record r;
    if (auto ref = reference_potential(m, n)) {
      r = verdict("potential", params, F == *ref ? "" : "differs from the listed potential by " + (F - *ref).str());
    } else {
      r = {"potential", params, "skip", "no listed potential for this (m, n)"};
    }
    r.extra["F"] = poly_json(F, m + n);
    r.extra["text"] = F.str();
    return r;
  });
}

void wdvv_suite(int m, int n, Batch& b) {
  const Json params{{"m", m}, {"n", n}};
  b.add("wdvv", params, [m, n, params] {
    const auto r = wdvv_check(build_F(m, n), m, n);
    return verdict("wdvv", params, r.pass ? "" : r.witness);
  });
  b.add("quasi_homogeneity", params, [m, n, params] {
    const auto r = check_quasi_homogeneity(build_F(m, n), m, n);
    return verdict("quasi_homogeneity", params, r.pass ? "" : r.witness);
  });
}

void appendix_suite(int m, int n, Batch& b) {
  std::vector<Label> labels;
  for (int j = 1; j <= m; ++j) labels.push_back(Label::h(j));
  for (int k = 1; k <= n; ++k) labels.push_back(Label::hhat(k));
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t c = a; c < labels.size(); ++c)
      for (std::size_t d = c; d < labels.size(); ++d)
        for (std::size_t e = d; e < labels.size(); ++e) {
          const Label s = labels[a], u = labels[c], v = labels[d], w = labels[e];
          const Json params{{"m", m}, {"n", n}, {"labels", {s.str(), u.str(), v.str(), w.str()}}};
          b.add("appendix", params, [=] {
            const auto r = appendix_symmetry(m, n, s, u, v, w);
            return verdict("appendix", params, r.pass ? "" : r.witness);
          });
        }
}

void recursion_suite(const LaxPoint<XPoly>& pt, int p_max, int t_range, const Json& where, Batch& b) {
  std::vector<Label> labels;
  for (int i = -t_range; i <= t_range; ++i) labels.push_back(Label::t(i));
  for (int j = 1; j <= pt.m; ++j) labels.push_back(Label::h(j));
  for (int k = 1; k <= pt.n; ++k) labels.push_back(Label::hhat(k));
  for (const Label u : labels)
    for (int p = 1; p <= p_max; ++p) {
      const Json params = with({{"m", pt.m}, {"n", pt.n}, {"u", u.str()}, {"p", p}}, where);
      b.add("biham", params, [pt, u, p, params] {
        const auto r = recursion_check(pt, u, p);
        return verdict("biham", params, r.pass ? "" : r.witness);
      });
    }
  for (int k : {1, 3, 5}) {
    const Json params = with({{"m", pt.m}, {"n", pt.n}, {"k", k}}, where);
    b.add("bkp_biham", params, [pt, k, params] {
      const auto r = bkp_biham_check(pt, k);
      return verdict("bkp_biham", params, r.pass ? "" : r.witness);
    });
  }
}

LaxPoint<XPoly> suite_loop_point(const SuiteConfig& cfg, Json& where) {
  if (cfg.point) {
    where = {{"point", *cfg.point}, {"seed", cfg.seed}};
    return lift_to_loop(point_from_json(read_json_file(*cfg.point), cfg.depth), cfg.seed);
  }
  where = {{"seed", cfg.seed}};
  return gen_loop_point(cfg.m, cfg.n, cfg.seed, 2, cfg.depth);
}

void canonical_suite(const LPoint& lp, double tol, const Json& where, Batch& b) {
  const Json params = with({{"m", lp.m}, {"n", lp.n}, {"tol", tol}}, where);
  b.add("canonical", params, [lp, tol, params] {
    const auto r = canonical_fin(lp, tol);
    Record out = verdict("canonical", params, r.pass ? "" : r.witness);
    Json u = Json::array();
    for (const auto& v : r.values) u.push_back({v.u.real(), v.u.imag()});
    out.extra["u"] = u;
    out.extra["errors"] = {{"residue", r.residue_err}, {"metric", r.metric_err}, {"idempotent", r.idempotent_err},
                           {"unity", r.unity_err}, {"euler", r.euler_err}};
    return out;
  });
}

LPoint suite_lpoint(const SuiteConfig& cfg, Json& where) {
  if (cfg.point) {
    where = {{"point", *cfg.point}};
    return lpoint_from_json(read_json_file(*cfg.point));
  }
  where = {{"seed", cfg.seed}};
  std::mt19937_64 rng(cfg.seed * 0x94D049BB133111EBULL + 5);
  std::vector<Rational> w(cfg.m + cfg.n);
  for (auto& x : w) x = random_rational(rng, 6, 4);
  w.back() = Rational(std::uniform_int_distribution<int>(1, 4)(rng));
  return lpoint_from_flat(cfg.m, cfg.n, w);
}

}  // namespace

bool Report::any_fail() const { return count("fail") > 0; }

int Report::count(const std::string& status) const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [&](const Record& r) { return r.status == status; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gram",      "frobenius", "potential", "wdvv",
                                              "recursion", "appendix",  "canonical", "all"};
  return names;
}

void validate(const SuiteConfig& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), cfg.suite) == names.end()) throw ConfigError("unknown suite " + cfg.suite);
  if (cfg.m < 1 || cfg.n < 1) throw ConfigError("m and n must be at least 1");
  if (cfg.depth < 1) throw ConfigError("depth must be positive");
  if (cfg.t_range < 0) throw ConfigError("t-range must be non-negative");
  if (!(cfg.tol > 0)) throw ConfigError("tolerance must be positive");
  if (cfg.points < 1) throw ConfigError("at least one point is needed");
  if (cfg.p_max < 1) throw ConfigError("p-max must be at least 1");
}

Report run_suite(const SuiteConfig& cfg) {
  validate(cfg);
  const bool all = cfg.suite == "all";
  Batch b;
  if (all || cfg.suite == "gram") gram_suite(cfg, b);
  if (all || cfg.suite == "frobenius") frobenius_suite(cfg, b);
  if (all || cfg.suite == "potential") potential_suite(cfg.m, cfg.n, b);
  if (all || cfg.suite == "wdvv") wdvv_suite(cfg.m, cfg.n, b);
  if (all || cfg.suite == "recursion") {
    Json where;
    const auto pt = suite_loop_point(cfg, where);
    recursion_suite(pt, cfg.p_max, std::min(cfg.t_range, 2), where, b);
  }
  if (all || cfg.suite == "appendix") appendix_suite(cfg.m, cfg.n, b);
  if (all || cfg.suite == "canonical") {
    Json where;
    canonical_suite(suite_lpoint(cfg, where), cfg.tol, where, b);
  }
  return run_batch(b, cfg.threads);
}

Report potential_report(int m, int n) {
  Batch b;
  potential_suite(m, n, b);
  return run_batch(b, 1);
}

Report recursion_report(const LaxPoint<XPoly>& pt, int p_max, int t_range, int threads) {
  Batch b;
  recursion_suite(pt, p_max, t_range, Json::object(), b);
  return run_batch(b, threads);
}

Report canonical_report(const LPoint& lp, double tol) {
  Batch b;
  canonical_suite(lp, tol, Json::object(), b);
  return run_batch(b, 1);
}

Json record_json(const Record& r) {
  Json j = r.extra;
  j["check"] = r.check;
  j["params"] = r.params;
  j["status"] = r.status;
  j["witness"] = r.witness;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

std::string to_jsonl(const Report& r) {
  std::ostringstream os;
  for (const auto& rec : r.records) os << record_json(rec).dump() << '\n';
  return os.str();
}

std::string summary(const Report& r) {
  std::ostringstream os;
  os << r.records.size() << " checks: " << r.count("pass") << " pass, " << r.count("fail") << " fail, "
     << r.count("skip") << " skip\n";
  for (const auto& rec : r.records)
    if (rec.status == "fail") os << "FAIL " << rec.check << " " << rec.params.dump() << ": " << rec.witness << '\n';
  return os.str();
}

}  // namespace frobkp
