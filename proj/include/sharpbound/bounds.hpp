// Scalar constants: the Polya-Szego ratio alpha, the squared-inequality
// constant beta (piecewise), the Diaz-Metcalf constants, the Gruss bound, the
// Kantorovich factor, and the general-mean maximizations.
#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sharpbound/errors.hpp"
#include "sharpbound/means.hpp"

namespace sharpbound {

/// Spectral enclosures m1^2 <= A <= M1^2, m2^2 <= B <= M2^2.
struct SpectralBounds {
  double m1 = 1.0, M1 = 1.0, m2 = 1.0, M2 = 1.0;

  SpectralBounds() = default;
  SpectralBounds(double m1_, double M1_, double m2_, double M2_) : m1(m1_), M1(M1_), m2(m2_), M2(M2_) {
    if (!(0.0 < m1 && m1 <= M1 && 0.0 < m2 && m2 <= M2))
      throw DomainViolation("spectral bounds need 0 < m1 <= M1 and 0 < m2 <= M2");
  }

  double m() const { return m1 * m2; }
  double M() const { return M1 * M2; }
};

/// alpha = (M + m) / (2 sqrt(Mm)) with m = m1 m2, M = M1 M2. Always >= 1.
inline double alpha_polya_szego(const SpectralBounds& b) {
  return 0.5 * (std::sqrt(b.M() / b.m()) + std::sqrt(b.m() / b.M()));
}

/// Piecewise constant of the squared Polya-Szego inequality:
/// alpha^4 while alpha^2 <= sqrt(M/m), else sqrt(M/m) (2 alpha^2 - sqrt(M/m)).
/// Both branches meet at alpha^4 on the switch surface.
inline double beta_squared(const SpectralBounds& b) {
  const double alpha = alpha_polya_szego(b);
  const double ratio = std::sqrt(b.M() / b.m());
  const double alpha_sq = alpha * alpha;
  if (alpha_sq <= ratio) return alpha_sq * alpha_sq;
  return ratio * (2.0 * alpha_sq - ratio);
}

inline double dm_constant(const SpectralBounds& b) { return b.M2 / b.m1 + b.m2 / b.M1; }

/// K of the squared Diaz-Metcalf inequality.
inline double dm_squared_constant(const SpectralBounds& b) {
  const double num = b.M1 * b.m1 * (b.M2 * b.M2 + b.m2 * b.m2) + b.M2 * b.m2 * (b.M1 * b.M1 + b.m1 * b.m1);
  const double den = 8.0 * std::sqrt(b.M2 * b.M1 * b.m1 * b.m2) * b.M1 * b.M1 * b.m1 * b.m1 * b.M2 * b.m2;
  return num * num / den;
}

inline double gruss_bound(const SpectralBounds& b) {
  return (beta_squared(b) - 1.0) * b.M1 * b.M1 * b.M2 * b.M2;
}

/// (M + m)^2 / (4 M m) for 0 < m <= M.
inline double kantorovich_factor(double m, double M) {
  if (!(0.0 < m && m <= M)) throw DomainViolation("kantorovich_factor needs 0 < m <= M");
  return (M + m) * (M + m) / (4.0 * M * m);
}

namespace detail {

// Maximize g on [lo, hi] by golden-section, assuming g unimodal there.
template <class G>
double golden_max(G&& g, double lo, double hi, double rel_tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c), gd = g(d);
  while (b - a > rel_tol * std::max(std::abs(a), std::abs(b))) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  return std::max(gc, gd);
}

}  // namespace detail

/// alpha for a general mean: max of f(t) / (mu_f t + nu_f) over the interval
/// [m2^2/M1^2, M2^2/m1^2], where (mu_f, nu_f) is the chord of f over that
/// interval. Dense geometric grid (2048 points) then golden-section.
inline double alpha_general(const MeanSpec& mean, const SpectralBounds& b) {
  const double lo = (b.m2 * b.m2) / (b.M1 * b.M1);
  const double hi = (b.M2 * b.M2) / (b.m1 * b.m1);
  if (!(lo < hi)) return 1.0;  // degenerate interval: m = M, equality-compatible

  const double f_lo = mean.eval(lo);
  const double f_hi = mean.eval(hi);
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi))
    throw RepresentingFunctionDomain("representing function not finite on the bound interval");
  const double mu_f = (f_hi - f_lo) / (hi - lo);
  const double nu_f = (hi * f_lo - lo * f_hi) / (hi - lo);
  const auto objective = [&](double t) {
    const double v = mean.eval(t) / (mu_f * t + nu_f);
    if (!std::isfinite(v))
      throw RepresentingFunctionDomain("objective not finite inside the bound interval");
    return v;
  };

  constexpr int kGrid = 2048;
  const double step = std::pow(hi / lo, 1.0 / kGrid);
  double best = 0.0;
  int best_idx = 0;
  double t = lo;
  for (int i = 0; i <= kGrid; ++i) {
    const double v = objective(i == kGrid ? hi : t);
    if (v > best) {
      best = v;
      best_idx = i;
    }
    t *= step;
  }
  const double bracket_lo = lo * std::pow(step, std::max(0, best_idx - 1));
  const double bracket_hi = std::min(hi, lo * std::pow(step, double(best_idx + 1)));
  return std::max(best, detail::golden_max(objective, bracket_lo, bracket_hi, 1e-12));
}

/// Closed form of alpha for the weighted geometric mean (stationary point of
/// t^mu over the chord), with h = M2^2/m1^2 and l = m2^2/M1^2:
///   alpha = mu^mu (1-mu)^{1-mu} (h-l) (h l^mu - l h^mu)^{mu-1} (h^mu - l^mu)^{-mu}.
inline double alpha_weighted_geometric_closed(double mu, const SpectralBounds& b) {
  if (!(mu > 0.0 && mu < 1.0)) throw WeightOutOfRange("closed form needs mu in (0,1)");
  const double l = (b.m2 * b.m2) / (b.M1 * b.M1);
  const double h = (b.M2 * b.M2) / (b.m1 * b.m1);
  if (!(l < h)) return 1.0;  // continuity limit instead of 0/0
  return std::pow(mu, mu) * std::pow(1.0 - mu, 1.0 - mu) * (h - l) *
         std::pow(h * std::pow(l, mu) - l * std::pow(h, mu), mu - 1.0) /
         std::pow(std::pow(h, mu) - std::pow(l, mu), mu);
}

/// beta for a general mean: with mt = m1^2 f(m2^2/m1^2) and Mt = M1^2 f(M2^2/M1^2),
/// maximize (alpha (Mt + mt) t - mt Mt) / t^2 over [mt, Mt]. The quotient has a
/// single stationary maximum at t0 = 2 Mt mt / (alpha (Mt + mt)); evaluate there
/// (clamped) and at both endpoints.
inline double beta_general(const MeanSpec& mean, const SpectralBounds& b, double alpha) {
  const double mt = b.m1 * b.m1 * mean.eval((b.m2 * b.m2) / (b.m1 * b.m1));
  const double Mt = b.M1 * b.M1 * mean.eval((b.M2 * b.M2) / (b.M1 * b.M1));
  if (!std::isfinite(mt) || !std::isfinite(Mt))
    throw RepresentingFunctionDomain("representing function not finite at interval ends");
  const auto quotient = [&](double t) { return (alpha * (Mt + mt) * t - mt * Mt) / (t * t); };
  if (mt == Mt) return quotient(mt);  // degenerate: single point
  const double t0 = std::clamp(2.0 * Mt * mt / (alpha * (Mt + mt)), std::min(mt, Mt), std::max(mt, Mt));
  return std::max({quotient(mt), quotient(Mt), quotient(t0)});
}

/// Every closed-form constant for one set of bounds.
struct BoundSet {
  double alpha;
  double beta;
  double dm;
  double dm_squared;  // K
  double gruss;
  double kantorovich;
};

inline BoundSet bound_set(const SpectralBounds& b) {
  return {alpha_polya_szego(b), beta_squared(b),   dm_constant(b),
          dm_squared_constant(b), gruss_bound(b), kantorovich_factor(b.m(), b.M())};
}

}  // namespace sharpbound
