#pragma once

// Test families standing in for "all smooth f". Every member is band-limited
// to the requested box, so operators truncated to that box see all of it.
//
// random-bandlimited draws the coefficient at xi from a generator seeded by
// (seed, member, xi) alone, so the family on box N is the truncation of the
// family on any larger box.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "torfio/core/fourier.hpp"
#include "torfio/lab/spec.hpp"

namespace torfio::lab {

namespace detail {

inline std::mt19937_64 keyed_rng(std::uint64_t seed, std::uint64_t member, std::span<const int> xi) {
  std::vector<std::uint32_t> key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                 static_cast<std::uint32_t>(member)};
  for (int v : xi) key.push_back(static_cast<std::uint32_t>(v));
  std::seed_seq seq(key.begin(), key.end());
  return std::mt19937_64(seq);
}

inline GridFunction project(const GridFunction& f, const LatticeBox& box) {
  return fourier_inverse(fourier_forward(f, box), f.grid);
}

}  // namespace detail

inline std::vector<GridFunction> gen_test_family(const std::string& kind, int count, std::uint64_t seed,
                                                 const TorusGrid& g, const LatticeBox& box) {
  if (count < 1) throw SpecError("gen_test_family: count must be >= 1");
  if (2 * box.radius >= g.samples) throw DomainError("gen_test_family: need 2N < M");
  std::vector<GridFunction> out;

  if (kind == "harmonics") {
    const std::size_t n = std::min<std::size_t>(box.size(), static_cast<std::size_t>(count));
    for (std::size_t k = 0; k < n; ++k) {
      SpectralFunction c(box);
      c.coeffs[k] = 1.0;
      out.push_back(fourier_inverse(c, g));
    }
    return out;
  }

  if (kind == "random-bandlimited") {
    const double taper = -(g.dim + 1) / 2.0;
    for (int member = 0; member < count; ++member) {
      SpectralFunction c(box);
      for (std::size_t k = 0; k < box.size(); ++k) {
        const auto xi = box.point(k);
        auto rng = detail::keyed_rng(seed, static_cast<std::uint64_t>(member), xi);
        std::normal_distribution<double> normal(0.0, 1.0);
        const double re = normal(rng);
        const double im = normal(rng);
        c.coeffs[k] = cplx(re, im) * std::pow(japanese_bracket(xi), taper);
      }
      out.push_back(fourier_inverse(c, g));
    }
    return out;
  }

  if (kind == "bumps") {
    // exp(-1 / (1 - (d/sigma)^2)) about a random center, then projected onto the box
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int member = 0; member < count; ++member) {
      std::vector<double> center(g.dim);
      for (auto& c : center) c = unit(rng);
      const double sigma = 0.1 + 0.3 * unit(rng);
      auto f = GridFunction::sample(g, [&](std::span<const double> x) {
        const double r = periodic_distance(x, center) / sigma;
        return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
      });
      out.push_back(detail::project(f, box));
    }
    return out;
  }
  throw SpecError("gen_test_family: unknown kind '" + kind + "'");
}

inline std::vector<GridFunction> gen_test_family(const FamilySpec& f, const TorusGrid& g, const LatticeBox& box) {
  return gen_test_family(f.kind, f.count, f.seed, g, box);
}

}  // namespace torfio::lab
