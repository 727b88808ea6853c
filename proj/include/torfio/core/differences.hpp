#pragma once

// Difference calculus on Z^n.
//
// Every difference shrinks the table's region instead of wrapping or padding,
// so identities are never falsified at the boundary.

#include <cmath>
#include <cstdlib>
#include <string>

#include "torfio/core/lattice.hpp"

namespace torfio {

enum class DiffKind {
  forward,            // a(xi + e_j) - a(xi)
  backward,           // a(xi) - a(xi + e_j), the convention used by the FIO kernel identity
  backward_standard,  // a(xi) - a(xi - e_j), the convention under which summation by parts holds
};

namespace detail {

inline void check_axis(const LatticeTable& g, int axis) {
  if (axis < 0 || axis >= g.dim()) throw DomainError("difference: axis " + std::to_string(axis) + " out of range");
}

// out(xi) = c0 * g(xi + s0 e_j) + c1 * g(xi + s1 e_j) over the region where both
// shifts stay inside g's region.
inline LatticeTable two_point(const LatticeTable& g, int axis, int s0, double c0, int s1, double c1) {
  check_axis(g, axis);
  LatticeRegion r = g.region;
  const int lo_shift = std::min(s0, s1), hi_shift = std::max(s0, s1);
  r.lo[axis] -= lo_shift;
  r.hi[axis] -= hi_shift;
  if (r.empty()) throw DomainError("difference: table region too small on axis " + std::to_string(axis));

  LatticeTable out(r);
  const std::size_t stride = g.region.stride(axis);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    auto xi = r.point(i);
    // base + s * stride is xi + s e_j in g's flat indexing
    const auto base = static_cast<std::ptrdiff_t>(g.region.index(xi));
    const auto st = static_cast<std::ptrdiff_t>(stride);
    const cplx a = g.values[static_cast<std::size_t>(base + s0 * st)];
    const cplx b = g.values[static_cast<std::size_t>(base + s1 * st)];
    out.values[i] = c0 * a + c1 * b;
  }
  return out;
}

}  // namespace detail

inline LatticeTable forward_diff(const LatticeTable& g, int axis) {
  return detail::two_point(g, axis, 1, 1.0, 0, -1.0);
}

/// a(xi) - a(xi + e_j). Equals -forward_diff.
inline LatticeTable backward_diff(const LatticeTable& g, int axis) {
  return detail::two_point(g, axis, 0, 1.0, 1, -1.0);
}

/// a(xi) - a(xi - e_j).
inline LatticeTable backward_diff_standard(const LatticeTable& g, int axis) {
  return detail::two_point(g, axis, 0, 1.0, -1, -1.0);
}

inline LatticeTable single_diff(const LatticeTable& g, int axis, DiffKind kind) {
  switch (kind) {
    case DiffKind::forward: return forward_diff(g, axis);
    case DiffKind::backward: return backward_diff(g, axis);
    case DiffKind::backward_standard: return backward_diff_standard(g, axis);
  }
  throw DomainError("single_diff: unknown kind");
}

/// Composition of single-axis differences, alpha_1 times on axis 0, then axis 1, ...
inline LatticeTable multi_diff(const LatticeTable& g, const MultiIndex& alpha, DiffKind kind = DiffKind::forward) {
  require_same_dim(g.dim(), alpha.dim(), "multi_diff");
  for (int j = 0; j < g.dim(); ++j)
    if (alpha[j] >= g.region.extent(j))
      throw DomainError("multi_diff: table too small for requested multi-index");
  LatticeTable cur = g;
  for (int j = 0; j < alpha.dim(); ++j)
    for (int k = 0; k < alpha[j]; ++k) cur = single_diff(cur, j, kind);
  return cur;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

/// Forward difference written as a signed binomial sum of shifts:
///   sum_{gamma <= alpha} (-1)^{|alpha - gamma|} C(alpha, gamma) g(xi + gamma).
inline LatticeTable diff_via_binomial_shifts(const LatticeTable& g, const MultiIndex& alpha) {
  require_same_dim(g.dim(), alpha.dim(), "diff_via_binomial_shifts");
  const int n = g.dim();
  LatticeRegion r = g.region;
  for (int j = 0; j < n; ++j) r.hi[j] -= alpha[j];
  if (r.empty()) throw DomainError("diff_via_binomial_shifts: table too small for requested multi-index");

  // enumerate gamma <= alpha once
  std::vector<std::vector<int>> gammas;
  std::vector<double> coeffs;
  std::vector<int> gamma(n, 0);
  auto rec = [&](auto&& self, int axis) -> void {
    if (axis == n) {
      int diff_order = 0;
      double c = 1.0;
      for (int j = 0; j < n; ++j) {
        diff_order += alpha[j] - gamma[j];
        c *= binomial(alpha[j], gamma[j]);
      }
      gammas.push_back(gamma);
      coeffs.push_back((diff_order % 2 == 0) ? c : -c);
      return;
    }
    for (int k = 0; k <= alpha[axis]; ++k) {
      gamma[axis] = k;
      self(self, axis + 1);
    }
  };
  rec(rec, 0);

  LatticeTable out(r);
  LatticePoint shifted(n);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    auto xi = r.point(i);
    cplx acc{0.0, 0.0};
    for (std::size_t t = 0; t < gammas.size(); ++t) {
      for (int j = 0; j < n; ++j) shifted[j] = xi[j] + gammas[t][j];
      acc += coeffs[t] * g.at(shifted);
    }
    out.values[i] = acc;
  }
  return out;
}

/// |sum phi Delta^alpha psi - (-1)^{|alpha|} sum (Dbar^alpha phi) psi|.
///
/// Both tables must share a region and vanish within |alpha| of its boundary
/// on every axis, so that all sums are exact finite sums. `backward_kind`
/// selects the backward difference; the identity holds for
/// DiffKind::backward_standard.
inline double summation_by_parts_residual(const LatticeTable& phi, const LatticeTable& psi, const MultiIndex& alpha,
                                          DiffKind backward_kind = DiffKind::backward_standard) {
  require_same_dim(phi.dim(), psi.dim(), "summation_by_parts_residual");
  require_same_dim(phi.dim(), alpha.dim(), "summation_by_parts_residual");
  if (!(phi.region == psi.region)) throw DimensionError("summation_by_parts_residual: region mismatch");
  const int margin = alpha.order();
  const auto& reg = phi.region;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    if (phi.values[i] == cplx{} && psi.values[i] == cplx{}) continue;
    auto xi = reg.point(i);
    for (int j = 0; j < reg.dim(); ++j) {
      if (xi[j] < reg.lo[j] + margin || xi[j] > reg.hi[j] - margin)
        throw DomainError("summation_by_parts_residual: support touches the region boundary");
    }
  }

  auto pair_sum = [](const LatticeTable& a, const LatticeTable& b) {
    // a lives on the full region, b on a sub-region
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < b.values.size(); ++i) s += a.at(b.region.point(i)) * b.values[i];
    return s;
  };
  const cplx lhs = pair_sum(phi, multi_diff(psi, alpha, DiffKind::forward));
  const cplx rhs_sum = pair_sum(psi, multi_diff(phi, alpha, backward_kind));
  const cplx rhs = (margin % 2 == 0) ? rhs_sum : -rhs_sum;
  return std::abs(lhs - rhs);
}

}  // namespace torfio
