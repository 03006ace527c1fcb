#include "grig/bounds.hpp"

#include <cmath>

#include "grig/errors.hpp"

namespace grig {

mpq_class rho() { return mpq_class(131, 132); }

AlphaParams alpha_for_C(double C) {
  if (!(C >= 3.0) || !std::isfinite(C)) throw InvalidArgument("alpha_for_C needs C >= 3");
  AlphaParams p;
  p.C = C;
  p.kappa = std::log(132.0 / 131.0) / (std::log(11.0) + C * std::log(2.0));
  p.alpha = 1.0 - p.kappa;
  return p;
}

DohuzBound dohuz_bound(const OmegaSeq& omega, unsigned m) {
  if (m == 0) throw InvalidArgument("dohuz_bound needs m >= 1");
  const auto stats = t_sequence(omega, m);
  DohuzBound out;
  out.m = m;
  out.t = stats.t_values;
  out.q = stats.q_values;
  out.t_m = out.t.back();

  mpz_class pow11;
  mpz_ui_pow_ui(pow11.get_mpz_t(), 11, m);
  out.x_m = pow11 << static_cast<mp_bitcnt_t>(out.t_m);

  const mpq_class r = rho();
  mpq_class prod = 1;
  mpq_class sum = 0;
  for (unsigned i = 0; i < m; ++i) {
    mpz_class two_q = mpz_class(1) << static_cast<mp_bitcnt_t>(out.q[i]);
    const mpq_class alpha = r * 11 * two_q;
    const mpq_class beta = mpq_class(two_q * 2);
    sum += prod * beta;
    prod *= alpha;
  }
  out.R_m = prod;
  out.S_m = sum;
  out.s_le_r = out.S_m <= out.R_m;
  out.log10_bound = out.R_m.get_d();
  return out;
}

Theta0 theta0() {
  auto f = [](double x) { return x * x * x + x * x + x - 2.0; };
  double lo = 0.0, hi = 1.0;  // f(0) < 0 < f(1)
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  Theta0 t;
  t.x0 = 0.5 * (lo + hi);
  t.residual = f(t.x0);
  t.theta0 = std::log(2.0) / std::log(2.0 / t.x0);
  return t;
}

RecursionCheck recursion_check(const GroupBall& base, const GroupBall& shifted, unsigned q) {
  RecursionCheck out;
  out.q = q;
  const double scale = 11.0 * std::ldexp(1.0, static_cast<int>(q));
  const double exponent = rho().get_d() * scale;
  const double additive = std::ldexp(1.0, static_cast<int>(q) + 1);
  for (std::uint64_t x = 1; x <= base.radius(); ++x) {
    const auto y = static_cast<std::uint64_t>(std::ceil(static_cast<double>(x) / scale));
    if (y > shifted.radius()) break;
    const double lhs = std::log2(static_cast<double>(base.gamma(x)));
    const double rhs = additive + exponent * std::log2(static_cast<double>(shifted.gamma(y)));
    ++out.checked;
    out.x_max = x;
    if (lhs > rhs * (1 + 1e-12)) out.violations.push_back(x);
  }
  return out;
}

}  // namespace grig
