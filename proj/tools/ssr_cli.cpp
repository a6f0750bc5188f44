#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "selftest.hpp"
#include "ssr/charts.hpp"
#include "ssr/decomposition.hpp"
#include "ssr/faulkner.hpp"
#include "ssr/identities.hpp"
#include "ssr/json.hpp"
#include "ssr/registry.hpp"
#include "ssr/verify.hpp"

namespace {

using ssr::json::Json;

struct Options {
  std::string command;
  std::string field = "Q";
  std::string lambda;
  std::uint64_t seed = 42;
  std::size_t samples = 10;
  std::string out;
  std::string ssr;
  std::string construction;
  std::vector<std::string> params;
  std::string vector;
  std::string v2;
  std::string point;
  std::string unit;
  std::string chart_mode;
  bool full = false;
};

// invariant failure: exit 2, counterexample on stderr
struct InvariantFailure {
  std::string what;
  Json counterexample;
};

Json parse_json_arg(const std::string& text, const std::string& what) {
  std::string body = text;
  if (!text.empty() && text[0] != '{' && text[0] != '[') {
    std::ifstream in(text);
    if (!in) throw ssr::ParseError("cannot read " + what + " file '" + text + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw ssr::ParseError("bad JSON for " + what + ": " + e.what());
  }
}

void emit(const Options& o, const Json& j, bool compact = false) {
  const std::string text = j.dump(compact ? -1 : 2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ssr::ParseError("cannot write '" + o.out + "'");
  f << text;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& kv) {
  std::map<std::string, std::string> out;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ssr::ParseError("parameter '" + s + "' is not key=value");
    out[s.substr(0, eq)] = s.substr(eq + 1);
  }
  return out;
}

template <class K>
ssr::Ssr<K> load_ssr(const Options& o, const K& like) {
  if (o.ssr.empty()) throw ssr::ParseError("--ssr is required");
  ssr::Ssr<K> s(ssr::json::decode_ssr(parse_json_arg(o.ssr, "--ssr"), like));
  const auto r = ssr::verify_ssr(s);
  if (!r.ok()) throw ssr::ParseError("SSRData fails verification: " + (r.failures.empty() ? "" : r.failures.front()));
  return s;
}

template <class K>
ssr::Vec<K> load_vector(const std::string& text, const ssr::Ssr<K>& s, const std::string& flag) {
  if (text.empty()) throw ssr::ParseError(flag + " is required");
  ssr::Vec<K> v = ssr::json::decode_vec(parse_json_arg(text, flag), s.one());
  s.check(v);
  return v;
}

template <class K>
K load_scalar(const std::string& text, const K& like) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception&) {
    j = text;  // bare "n/d"
  }
  return ssr::json::decode(j, like);
}

template <class K>
Json with_header(const Options& o, const ssr::Ssr<K>& s, Json body) {
  Json j{{"command", o.command}, {"field", s.one().descriptor().to_string()}, {"construction", s.construction()},
         {"seed", o.seed}};
  for (auto& [k, v] : body.items()) j[k] = v;
  return j;
}

template <class K>
int run(const Options& o, const K& like) {
  using namespace ssr;
  namespace js = ssr::json;

  if (o.command == "construct") {
    const auto id = ConstructionId::parse(o.construction, parse_params(o.params));
    emit(o, js::encode(make_ssr(id, like).data()), true);
    return 0;
  }

  if (o.command == "selftest") {
    const auto batches = selftest::run_all(like, o.seed, o.samples);
    bool ok = true;
    for (const auto& b : batches) ok = ok && b.ok();
    Json j{{"command", "selftest"}, {"field", like.descriptor().to_string()}, {"seed", o.seed},
           {"samples", o.samples},  {"ok", ok},                              {"batches", selftest::encode(batches)}};
    emit(o, j);
    if (!ok) {
      Json fails = Json::array();
      for (const auto& b : j["batches"])
        for (const auto& p : b["properties"])
          if (!p["ok"].get<bool>()) fails.push_back(Json{{"construction", b["construction"]}, {"property", p}});
      throw InvariantFailure{"selftest failures", fails};
    }
    return 0;
  }

  const Ssr<K> s = load_ssr(o, like);

  if (o.command == "verify") {
    const auto r = verify_ssr(s);
    emit(o, with_header(o, s, Json{{"report", js::encode(r)}}));
    if (!r.m_mu_equals_m) throw InvariantFailure{"m_mu != m", js::encode(r)};
    return 0;
  }

  if (o.command == "covariants") {
    const Vec<K> a = load_vector(o.vector, s, "--vector");
    Json body{{"A", js::encode(a)}, {"report", js::encode(covariant_report(s, a))}};
    Rng rng(o.seed);
    const auto ids = covariant_identities(s, a, random_scalar(rng, like), random_scalar(rng, like));
    body["identities"] = js::encode(ids);
    auto [mp, mrep] = minimal_polynomial_mu(s, a);
    body["minimal_polynomial"] = js::encode(mp);
    body["moment_tilde"] = js::encode(moment_tilde(s, a));
    if (!is_zero(a)) {
      const auto geo = orbit_geometry(s, a);
      body["orbit_geometry"] = js::encode(geo);
      body["q_vanishes_iff_A_in_tangent"] = q_vanishing_test(s, a);
      if (!geo.ok()) throw InvariantFailure{"orbit geometry: " + geo.first_failure(), Json{{"A", js::encode(a)}}};
    }
    emit(o, with_header(o, s, body));
    if (!ids.ok() || !mrep.ok)
      throw InvariantFailure{ids.ok() ? mrep.detail : ids.first_failure(), Json{{"A", js::encode(a)}}};
    return 0;
  }

  if (o.command == "decompose") {
    const Vec<K> a = load_vector(o.vector, s, "--vector");
    Json body{{"A", js::encode(a)}};
    if (o.lambda.empty()) {
      body["decomposition"] = js::encode(lagrangian_decompose(s, a));
    } else {
      body["lambda"] = js::encode(load_scalar(o.lambda, like));
      body["decomposition"] = js::encode(quad_ext_decompose(s, a, load_scalar(o.lambda, like)));
    }
    emit(o, with_header(o, s, body));
    return 0;
  }

  if (o.command == "fiber") {
    const Vec<K> a = load_vector(o.vector, s, "--vector");
    const auto fiber = mu_fiber(s, a);
    Json pts = Json::array();
    for (const auto& [x, y] : fiber.conic_points(o.samples)) {
      const Vec<K> v = fiber.point(x, y);
      if (mu(s, v) != mu(s, a)) throw InvariantFailure{"fiber point with a different mu", Json{{"A'", js::encode(v)}}};
      pts.push_back(Json{{"x", js::encode(x)}, {"y", js::encode(y)}, {"point", js::encode(v)}});
    }
    emit(o, with_header(o, s, Json{{"A", js::encode(a)}, {"Q", js::encode(fiber.quartic())},
                                   {"psi", js::encode(fiber.psi_value())}, {"points", pts}}));
    return 0;
  }

  if (o.command == "syzygy") {
    const Vec<K> a = load_vector(o.vector, s, "--vector");
    const bool ok = eisenstein_syzygy(s, a);
    Json body{{"A", js::encode(a)}, {"holds", ok}};
    bool classical_ok = true;
    if (!o.v2.empty()) {
      const auto v = js::decode_vec(parse_json_arg(o.v2, "--v"), like);
      const auto c = classical_eisenstein(s, a, v);
      classical_ok = c.holds;
      body["classical"] = Json{{"x", js::encode(c.x)},         {"y", js::encode(c.y)}, {"z", js::encode(c.z)},
                               {"delta", js::encode(c.delta)}, {"holds", c.holds}};
    }
    emit(o, with_header(o, s, body));
    if (!ok || !classical_ok) throw InvariantFailure{"syzygy fails", Json{{"A", js::encode(a)}}};
    return 0;
  }

  if (o.command == "lie-build") {
    const auto g = build_lie_algebra(s);
    JacobiOptions jo;
    jo.exhaustive = !std::is_same_v<K, Rational> || g.dim() <= 52;
    jo.seed = o.seed;
    const auto jac = check_jacobi(g, jo);
    const auto gr = grading_report(g);
    const auto simp = simplicity_report(g, s);
    const auto rec = recover_ssr(g, &s);
    Json body{{"dim", g.dim()},
              {"grading", js::encode(gr, g)},
              {"simple", simp.simple()},
              {"m_mu_dim", simp.m_mu_dim},
              {"smallest_basis_ideal", simp.smallest_ideal},
              {"calibration", Json{js::encode(g.calibration.first), js::encode(g.calibration.second)}},
              {"jacobi", Json{{"ok", jac.ok}, {"exhaustive", jo.exhaustive}, {"triples", jac.triples}}},
              {"recovery", Json{{"verified", rec.verified},
                                {"omega_factor", rec.omega_factor ? js::encode(*rec.omega_factor) : Json(nullptr)},
                                {"bmu_factor", rec.bmu_factor ? js::encode(*rec.bmu_factor) : Json(nullptr)}}}};
    if (o.full) body["structure_constants"] = js::structure_constants(g);
    emit(o, with_header(o, s, body));
    if (!jac.ok) throw InvariantFailure{"Jacobi fails", Json(jac.witness)};
    if (!gr.ok()) throw InvariantFailure{"grading is not Heisenberg", js::encode(gr, g)};
    if (simp.by_m_mu != simp.by_ideals) throw InvariantFailure{"simplicity tests disagree", Json{{"smallest", simp.smallest_ideal}}};
    return 0;
  }

  if (o.command == "chart") {
    if (o.lambda.empty()) throw ParseError("--lambda is required");
    const Chart<K> chart(s, load_scalar(o.lambda, like));
    Json body{{"mode", o.chart_mode}, {"lambda", js::encode(chart.lambda())}};
    const Json pt = parse_json_arg(o.point, "--point");
    if (o.chart_mode == "alpha") {
      const auto hp = js::decode_hat(pt, like);
      body["point"] = js::encode(hp);
      body["v"] = js::encode(chart.alpha(hp));
    } else if (o.chart_mode == "beta") {
      const Quad<K> qlike = chart.context().embed(like);
      const auto v = js::decode_vec(pt.is_object() && pt.contains("v") ? pt.at("v") : pt, qlike);
      body["v"] = js::encode(v);
      body["point"] = js::encode(chart.beta(v));
    } else {
      if (o.unit.empty()) throw ParseError("chart act needs --unit");
      const auto hp = js::decode_hat(pt, like);
      const auto u = js::decode_torus(parse_json_arg(o.unit, "--unit"), like);
      const auto out = chart.act(u, hp);
      body["point"] = js::encode(hp);
      body["unit"] = js::encode(u);
      body["result"] = js::encode(out);
      body["mu_hat_preserved"] = chart.mu_hat(out) == chart.mu_hat(hp);
    }
    emit(o, with_header(o, s, body));
    return 0;
  }

  throw ParseError("unknown command " + o.command);
}

bool is_invariant_error(const ssr::Error& e) {
  const std::string k = e.kind();
  return k == "DisagreementError" || k == "CalibrationFailure";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Special symplectic representations: exact covariants, decompositions, Lie algebras"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c, bool needs_ssr) {
    c->add_option("--field", o.field, "Q or Fp:<p>");
    c->add_option("--seed", o.seed, "PRNG seed");
    c->add_option("--out", o.out, "output path (default stdout)");
    if (needs_ssr) c->add_option("--ssr", o.ssr, "SSRData JSON file or inline JSON")->required();
  };

  auto* construct = app.add_subcommand("construct", "emit SSRData for a named construction");
  common(construct, false);
  construct->add_option("construction", o.construction, "construction name")->required();
  construct->add_option("--params", o.params, "key=value construction parameters");

  auto* verify = app.add_subcommand("verify", "check the SSR axioms");
  common(verify, true);

  auto* cov = app.add_subcommand("covariants", "mu, Psi, Q and their identities at a vector");
  common(cov, true);
  cov->add_option("--vector", o.vector, "vector as JSON array")->required();

  auto* dec = app.add_subcommand("decompose", "Lagrangian decomposition");
  common(dec, true);
  dec->add_option("--vector", o.vector, "vector as JSON array")->required();
  dec->add_option("--lambda", o.lambda, "decompose over A_lambda");

  auto* fib = app.add_subcommand("fiber", "points of the mu-fiber");
  common(fib, true);
  fib->add_option("--vector", o.vector, "vector as JSON array")->required();
  fib->add_option("--samples", o.samples, "number of parameter values over Q");

  auto* syz = app.add_subcommand("syzygy", "generalized Eisenstein syzygy");
  common(syz, true);
  syz->add_option("--vector", o.vector, "vector as JSON array")->required();
  syz->add_option("--v", o.v2, "point of k^2 for the classical syzygy (binary cubics)");

  auto* lie = app.add_subcommand("lie-build", "graded Lie algebra g(m, V, omega, B_mu)");
  common(lie, true);
  lie->add_flag("--full", o.full, "include structure constants");

  auto* chart = app.add_subcommand("chart", "alpha, beta and the torus action");
  common(chart, true);
  chart->add_option("mode", o.chart_mode, "alpha | beta | act")->required()->check(CLI::IsMember({"alpha", "beta", "act"}));
  chart->add_option("--lambda", o.lambda, "lambda")->required();
  chart->add_option("--point", o.point, "point JSON")->required();
  chart->add_option("--unit", o.unit, "torus element {a, b} for act");

  auto* self = app.add_subcommand("selftest", "run every property batch");
  common(self, false);
  self->add_option("--samples", o.samples, "random cases per property");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  o.command = app.get_subcommands().front()->get_name();

  try {
    const ssr::FieldDescriptor fd = ssr::parse_field(o.field);
    if (fd.kind == ssr::FieldDescriptor::Kind::Rationals) return run(o, ssr::Rational(0));
    return run(o, ssr::ModP(0, fd.p));
  } catch (const InvariantFailure& f) {
    std::cerr << Json{{"error", "InvariantFailure"}, {"detail", f.what}, {"counterexample", f.counterexample}}.dump(2)
              << "\n";
    return 2;
  } catch (const ssr::Error& e) {
    std::cerr << Json{{"error", e.kind()}, {"detail", e.what()}}.dump(2) << "\n";
    return is_invariant_error(e) ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << Json{{"error", "ParseError"}, {"detail", e.what()}}.dump(2) << "\n";
    return 1;
  }
}
