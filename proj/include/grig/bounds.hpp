#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <vector>

#include "grig/growth.hpp"
#include "grig/omega.hpp"

namespace grig {

/// ρ = 131/132.
mpq_class rho();

struct AlphaParams {
  double C = 0;
  double kappa = 0;  // log(1/ρ) / log(11·2^C)
  double alpha = 0;  // 1 - κ
};

/// Requires C >= 3.
AlphaParams alpha_for_C(double C);

struct DohuzBound {
  unsigned m = 0;
  std::vector<std::uint64_t> t;  // t_1..t_m
  std::vector<std::uint64_t> q;  // q_i = t_i - t_{i-1}, with t_0 = 0
  std::uint64_t t_m = 0;
  mpz_class x_m;  // 11^m · 2^{t_m}
  mpq_class R_m;  // Π α_i, α_i = ρ·11·2^{q_i}; equals ρ^m x_m
  mpq_class S_m;  // Σ_i (α_1⋯α_{i-1}) β_i, β_i = 2^{q_i+1}
  double log10_bound = 0;  // ρ^m x_m, the exponent in γ(x_m) <= 10^{ρ^m x_m}
  bool s_le_r = false;
};

/// Throws Diverges when t_m(ω) is not computable.
DohuzBound dohuz_bound(const OmegaSeq& omega, unsigned m);

struct Theta0 {
  double x0 = 0;
  double theta0 = 0;
  double residual = 0;  // x0^3 + x0^2 + x0 - 2
};

/// x0 by bisection to 1e-12, θ0 = log 2 / log(2/x0).
Theta0 theta0();

struct RecursionCheck {
  unsigned q = 0;
  std::uint64_t checked = 0;
  std::vector<std::uint64_t> violations;  // integer x where the bound fails
  std::uint64_t x_max = 0;
};

/// Evaluates γ~_ω(x) <= 2^{2^{q+1}} γ~_{τ^q ω}(x / (11·2^q))^{ρ·11·2^q} in
/// log space at every integer x <= base.radius(), with γ~(y) = γ(⌈y⌉).
RecursionCheck recursion_check(const GroupBall& base, const GroupBall& shifted, unsigned q);

}  // namespace grig
