#pragma once

#include <future>
#include <string>
#include <vector>

#include "ssr/charts.hpp"
#include "ssr/decomposition.hpp"
#include "ssr/faulkner.hpp"
#include "ssr/identities.hpp"
#include "ssr/json.hpp"
#include "ssr/registry.hpp"
#include "ssr/verify.hpp"

namespace ssr::selftest {

using json::Json;

struct Property {
  std::string name;
  bool ok = true;
  std::size_t cases = 0;
  Json counterexample;
};

struct Batch {
  std::string construction;
  std::vector<Property> properties;
  bool ok() const {
    for (const auto& p : properties)
      if (!p.ok) return false;
    return true;
  }
};

inline std::vector<ConstructionId> instances() {
  return {ConstructionId::parse("BinaryCubics"),
          ConstructionId::parse("Tautological", {{"n", "2"}}),
          ConstructionId::parse("JCommutant", {{"n", "2"}, {"lambda_j", "1"}}),
          ConstructionId::parse("HomEF", {{"g", "1,-1,1"}}),
          ConstructionId::parse("ThreeForms6"),
          ConstructionId::parse("PrimitiveThreeForms6"),
          ConstructionId::parse("HalfSpinor12")};
}

template <class K>
class Runner {
 public:
  Runner(const ConstructionId& id, const K& like, std::uint64_t seed, std::size_t samples)
      : id_(id), s_(make_ssr(id, like)), rng_(seed), samples_(samples) {}

  Batch run() {
    Batch b{id_.name(), {}};
    b.properties.push_back(verification());
    b.properties.push_back(per_vector("covariant identities", [&](const Vec<K>& a) {
      return covariant_identities(s_, a, random_scalar(rng_, s_.one()), random_scalar(rng_, s_.one())).ok();
    }));
    b.properties.push_back(per_vector("minimal polynomial", [&](const Vec<K>& a) {
      return minimal_polynomial_mu(s_, a).second.ok;
    }));
    b.properties.push_back(per_vector("eisenstein syzygy", [&](const Vec<K>& a) { return eisenstein_syzygy(s_, a); }));
    b.properties.push_back(per_vector("orbit geometry", [&](const Vec<K>& a) {
      return is_zero(a) || orbit_geometry(s_, a).ok();
    }));
    b.properties.push_back(per_vector("zero-set oracle", [&](const Vec<K>& a) {
      return zero_set_oracle(id_, s_, a) == (!is_zero(a) && is_zero(mu(s_, a)));
    }));
    b.properties.push_back(zero_set_samples());
    b.properties.push_back(decomposition_round_trip());
    b.properties.push_back(per_vector("fiber closure", [&](const Vec<K>& a) {
      if (big_q(s_, a).is_zero()) return true;
      const auto fiber = mu_fiber(s_, a);
      for (const auto& v : fiber.sample(3))
        if (mu(s_, v) != mu(s_, a) || big_q(s_, v) != big_q(s_, a) || !fiber.contains(v)) return false;
      return true;
    }));
    b.properties.push_back(per_vector("chart round trip", [&](const Vec<K>& a) {
      const K q = big_q(s_, a);
      if (q.is_zero()) return true;
      const Chart<K> chart(s_, q);
      const HatPoint<K> p{a, s_.one()};
      return chart.beta(chart.alpha(p)) == p;
    }));
    b.properties.push_back(lie());
    return b;
  }

 private:
  template <class F>
  Property per_vector(std::string name, F&& test) {
    Property p{std::move(name)};
    for (std::size_t i = 0; i < samples_ && p.ok; ++i) {
      const Vec<K> a = random_vector(rng_, s_.dim(), s_.one());
      ++p.cases;
      bool ok = false;
      std::string why;
      try {
        ok = test(a);
      } catch (const Error& e) {
        why = e.what();
      }
      if (!ok) {
        p.ok = false;
        p.counterexample = Json{{"A", json::encode(a)}};
        if (!why.empty()) p.counterexample["error"] = why;
      }
    }
    return p;
  }

  Property verification() {
    Property p{"ssr axioms"};
    p.cases = 1;
    const auto r = verify_ssr(s_);
    p.ok = r.ok() && r.m_mu_equals_m;
    if (!p.ok) p.counterexample = json::encode(r);
    return p;
  }

  Property zero_set_samples() {
    Property p{"zero-set samples"};
    ZeroSetSampler<K> sampler(id_, s_);
    for (std::size_t i = 0; i < samples_ && p.ok; ++i) {
      auto v = sampler.sample(rng_);
      if (!v) break;
      ++p.cases;
      if (!is_zero(mu(s_, *v)) || !zero_set_oracle(id_, s_, *v)) {
        p.ok = false;
        p.counterexample = Json{{"A", json::encode(*v)}};
      }
    }
    return p;
  }

  Property decomposition_round_trip() {
    Property p{"decomposition round trip"};
    ZeroSetSampler<K> sampler(id_, s_);
    for (std::size_t i = 0; i < 4 * samples_ && p.cases < samples_ && p.ok; ++i) {
      auto b = sampler.sample(rng_), c = sampler.sample(rng_);
      if (!b || !c) break;
      if (s_.omega(*b, *c).is_zero()) continue;
      ++p.cases;
      try {
        const auto d = lagrangian_decompose(s_, *b + *c);
        if (!((d.b == *b && d.c == *c) || (d.b == *c && d.c == *b))) throw DisagreementError("pair not recovered");
      } catch (const Error& e) {
        p.ok = false;
        p.counterexample = Json{{"B", json::encode(*b)}, {"C", json::encode(*c)}, {"error", e.what()}};
      }
    }
    return p;
  }

  Property lie() {
    Property p{"lie algebra"};
    p.cases = 1;
    try {
      const auto g = build_lie_algebra(s_);
      JacobiOptions jo;
      jo.exhaustive = !std::is_same_v<K, Rational> || g.dim() <= 52;
      jo.seed = rng_.below(1u << 30);
      const auto j = check_jacobi(g, jo);
      const auto gr = grading_report(g);
      const bool simple = simplicity_check(g, s_);
      const auto rec = recover_ssr(g, &s_);
      const K one = s_.one();
      p.ok = j.ok && gr.ok() && simple && rec.verified && rec.m_action_equal && rec.omega_factor == one &&
             rec.bmu_factor == one;
      if (!p.ok)
        p.counterexample = Json{{"jacobi_witness", j.ok ? Json(nullptr) : Json(j.witness)},
                                {"grading_ok", gr.ok()},
                                {"simple", simple},
                                {"recovered", rec.verified}};
    } catch (const Error& e) {
      p.ok = false;
      p.counterexample = Json{{"error", e.what()}};
    }
    return p;
  }

  ConstructionId id_;
  Ssr<K> s_;
  Rng rng_;
  std::size_t samples_;
};

template <class K>
std::vector<Batch> run_all(const K& like, std::uint64_t seed, std::size_t samples) {
  std::vector<std::future<Batch>> jobs;
  const auto ids = instances();
  for (std::size_t i = 0; i < ids.size(); ++i)
    jobs.push_back(std::async(std::launch::async, [&, i] {
      return Runner<K>(ids[i], like, seed + i, samples).run();
    }));
  std::vector<Batch> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

inline Json encode(const std::vector<Batch>& batches) {
  Json out = Json::array();
  for (const auto& b : batches) {
    Json props = Json::array();
    for (const auto& p : b.properties) {
      Json j{{"name", p.name}, {"ok", p.ok}, {"cases", p.cases}};
      if (!p.ok) j["counterexample"] = p.counterexample;
      props.push_back(j);
    }
    out.push_back(Json{{"construction", b.construction}, {"ok", b.ok()}, {"properties", props}});
  }
  return out;
}

}  // namespace ssr::selftest
