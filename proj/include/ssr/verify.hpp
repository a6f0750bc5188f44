#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ssr/ssr.hpp"

namespace ssr {

// [X_a, X_b] = sum_c C[a][b][c] X_c
template <class K>
struct StructureConstants {
  std::size_t dim = 0;
  std::vector<Vec<K>> table;  // index a * dim + b
  const Vec<K>& at(std::size_t a, std::size_t b) const { return table[a * dim + b]; }
};

template <class K>
SpanSolver<K> m_span_solver(const Ssr<K>& s) {
  std::vector<Vec<K>> flat;
  for (const auto& m : s.m_basis()) flat.push_back(flatten(m));
  return SpanSolver<K>(flat, s.one());
}

// nothing if m is not closed under the bracket
template <class K>
std::optional<StructureConstants<K>> m_structure_constants(const Ssr<K>& s, const SpanSolver<K>& solver) {
  StructureConstants<K> sc;
  sc.dim = s.m_dim();
  sc.table.assign(sc.dim * sc.dim, Vec<K>(sc.dim, s.zero()));
  for (std::size_t a = 0; a < sc.dim; ++a)
    for (std::size_t b = a + 1; b < sc.dim; ++b) {
      auto c = solver.coordinates(flatten(commutator(s.m_basis()[a], s.m_basis()[b])));
      if (!c) return std::nullopt;
      sc.table[b * sc.dim + a] = -*c;
      sc.table[a * sc.dim + b] = std::move(*c);
    }
  return sc;
}

template <class K>
std::optional<StructureConstants<K>> m_structure_constants(const Ssr<K>& s) {
  return m_structure_constants(s, m_span_solver(s));
}

struct VerificationReport {
  bool antisymmetry = true;    // X^T G + G X = 0
  bool bmu_symmetric = true;
  bool faithful = true;
  bool closed = true;          // m closed under the bracket
  bool defining_identity = true;
  bool equivariant = true;
  bool m_mu_equals_m = false;
  std::size_t m_mu_dim = 0;
  std::optional<std::size_t> normalizer_dim;
  std::optional<bool> m_mu_in_normalizer;
  std::vector<std::string> failures;

  bool ok() const {
    return antisymmetry && bmu_symmetric && faithful && closed && defining_identity && equivariant;
  }
};

struct VerifyOptions {
  // the normaliser m^mu is solved over all of sp(V); only attempted up to this dim V
  std::size_t normalizer_max_dim = 8;
};

// m^mu = {a in sp(V): [a, B(e_i,e_j)] = B(a e_i, e_j) + B(e_i, a e_j)}, as matrices
template <class K>
std::vector<Matrix<K>> normalizer_basis(const Ssr<K>& s) {
  const std::size_t n = s.dim();
  const std::size_t unknowns = n * n;
  std::vector<Matrix<K>> bops;  // B(e_i,e_j) as matrices, i <= j
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec<K> c(s.m_dim(), s.zero());
      for (std::size_t a = 0; a < s.m_dim(); ++a) c[a] = s.bmu_entry(i, j, a);
      bops.push_back(s.element(c));
      pairs.emplace_back(i, j);
    }
  SparseSystem<K> sys(unknowns, s.one());
  auto var = [n](std::size_t r, std::size_t c) { return r * n + c; };
  // a^T G + G a = 0
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      typename SparseSystem<K>::Row row;
      for (std::size_t k = 0; k < n; ++k) {
        if (!s.gram()(k, c).is_zero()) {
          auto [it, f] = row.try_emplace(var(k, r), s.zero());
          it->second += s.gram()(k, c);
        }
        if (!s.gram()(r, k).is_zero()) {
          auto [it, f] = row.try_emplace(var(k, c), s.zero());
          it->second += s.gram()(r, k);
        }
      }
      sys.add_equation(std::move(row));
    }
  // (a B - B a) e_k - B(a e_i, e_j) e_k - B(e_i, a e_j) e_k = 0, linear in a
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [i, j] = pairs[p];
    const Matrix<K>& b = bops[p];
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r) {
        typename SparseSystem<K>::Row row;
        auto add = [&](std::size_t v, const K& x) {
          if (x.is_zero()) return;
          auto [it, f] = row.try_emplace(v, s.zero());
          it->second += x;
        };
        for (std::size_t m = 0; m < n; ++m) {
          add(var(r, m), b(m, k));   // (a B)_{rk}
          add(var(m, k), -b(r, m));  // (B a)_{mk} -> -B_{rm} a_{mk}
        }
        // a e_i = sum_m a_{mi} e_m
        for (std::size_t m = 0; m < n; ++m) {
          add(var(m, i), -s.bmu_basis_apply(m, j, k)[r]);
          add(var(m, j), -s.bmu_basis_apply(i, m, k)[r]);
        }
        sys.add_equation(std::move(row));
      }
  }
  std::vector<Matrix<K>> out;
  for (auto& v : sys.kernel_basis()) out.emplace_back(n, n, std::move(v));
  return out;
}

template <class K>
VerificationReport verify_ssr(const Ssr<K>& s, const VerifyOptions& opt = {}) {
  VerificationReport rep;
  const std::size_t n = s.dim(), d = s.m_dim();
  const Matrix<K>& g = s.gram();
  auto note = [&rep](bool& flag, const std::string& msg) {
    if (flag) rep.failures.push_back(msg);
    flag = false;
  };

  if (g.transpose() != -g || rank(g) != n) note(rep.antisymmetry, "omega is not a symplectic gram matrix");
  for (std::size_t a = 0; a < d; ++a) {
    const Matrix<K>& x = s.m_basis()[a];
    if (!(x.transpose() * g + g * x).is_zero())
      note(rep.antisymmetry, "m_basis[" + std::to_string(a) + "] is not in sp(V)");
  }

  for (std::size_t i = 0; i < n && rep.bmu_symmetric; ++i)
    for (std::size_t j = i + 1; j < n && rep.bmu_symmetric; ++j)
      for (std::size_t a = 0; a < d; ++a)
        if (s.bmu_entry(i, j, a) != s.bmu_entry(j, i, a)) {
          note(rep.bmu_symmetric, "bmu not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
          break;
        }

  std::optional<SpanSolver<K>> solver;
  try {
    solver.emplace(m_span_solver(s));
  } catch (const DimensionMismatch&) {
    note(rep.faithful, "m_basis is linearly dependent");
  }

  // 2B(A,B)C - 2B(A,C)B = 2w(B,C)A - w(A,B)C + w(A,C)B on basis triples
  for (std::size_t i = 0; i < n && rep.defining_identity; ++i)
    for (std::size_t j = 0; j < n && rep.defining_identity; ++j)
      for (std::size_t k = j + 1; k < n && rep.defining_identity; ++k) {
        Vec<K> lhs = s.lift(2) * (s.bmu_basis_apply(i, j, k) - s.bmu_basis_apply(i, k, j));
        Vec<K> rhs = s.zero_vector();
        rhs[i] += s.lift(2) * g(j, k);
        rhs[k] -= g(i, j);
        rhs[j] += g(i, k);
        if (lhs != rhs) {
          std::ostringstream os;
          os << "defining identity fails on basis triple (" << i << "," << j << "," << k << ")";
          note(rep.defining_identity, os.str());
        }
      }

  std::optional<StructureConstants<K>> sc;
  if (solver) {
    sc = m_structure_constants(s, *solver);
    if (!sc) note(rep.closed, "m is not closed under the bracket");
  }

  if (sc) {
    // [X_a, B(e_i,e_j)] = B(X_a e_i, e_j) + B(e_i, X_a e_j) in m-coordinates
    for (std::size_t a = 0; a < d && rep.equivariant; ++a) {
      const auto& xa = s.sparse_basis(a);
      for (std::size_t i = 0; i < n && rep.equivariant; ++i)
        for (std::size_t j = i; j < n && rep.equivariant; ++j) {
          Vec<K> lhs(d, s.zero());
          for (std::size_t b = 0; b < d; ++b) {
            const K& c = s.bmu_entry(i, j, b);
            if (!c.is_zero()) axpy(lhs, c, sc->at(a, b));
          }
          Vec<K> rhs(d, s.zero());
          for (const auto& [k, x] : xa.cols[i])
            for (std::size_t e = 0; e < d; ++e)
              if (!s.bmu_entry(k, j, e).is_zero()) rhs[e] += x * s.bmu_entry(k, j, e);
          for (const auto& [k, x] : xa.cols[j])
            for (std::size_t e = 0; e < d; ++e)
              if (!s.bmu_entry(i, k, e).is_zero()) rhs[e] += x * s.bmu_entry(i, k, e);
          if (lhs != rhs)
            note(rep.equivariant, "equivariance fails for basis element " + std::to_string(a) + " on (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
  }

  std::vector<Vec<K>> images;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Vec<K> c(d, s.zero());
      for (std::size_t a = 0; a < d; ++a) c[a] = s.bmu_entry(i, j, a);
      images.push_back(std::move(c));
    }
  rep.m_mu_dim = d == 0 ? 0 : rank(Matrix<K>::from_rows(images, d, s.one()));
  rep.m_mu_equals_m = rep.m_mu_dim == d;

  if (n <= opt.normalizer_max_dim) {
    auto nb = normalizer_basis(s);
    rep.normalizer_dim = nb.size();
    std::vector<Vec<K>> flat;
    for (const auto& m : nb) flat.push_back(flatten(m));
    auto span = Subspace<K>::span(n * n, flat, s.one());
    bool inside = true;
    for (const auto& c : images)
      if (!span.contains(flatten(s.element(c)))) inside = false;
    rep.m_mu_in_normalizer = inside;
  }
  return rep;
}

}  // namespace ssr
