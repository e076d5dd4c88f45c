#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace levi {

using cplx = std::complex<double>;
using CFunction = std::function<cplx(double)>;
using RFunction = std::function<double(double)>;

struct QuadOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  int max_subdivisions = 4000;
  // Segments of an improper tail before the sequence is abandoned.
  int max_tail_segments = 1100;
  // No divergence verdict before this many tail segments.
  int min_segments_for_divergence = 6;

  QuadOptions tightened(double factor) const {
    QuadOptions o = *this;
    o.abs_tol *= factor;
    o.rel_tol *= factor;
    return o;
  }
};

enum class QuadStatus { ok, divergent, nonconverged };

struct QuadResult {
  cplx value{0.0, 0.0};
  double abs_error = 0.0;
  QuadStatus status = QuadStatus::ok;
  long evaluations = 0;

  bool ok() const { return status == QuadStatus::ok; }
  bool divergent() const { return status == QuadStatus::divergent; }
  double real() const { return value.real(); }

  QuadResult& operator+=(const QuadResult& other);
};

/// Globally adaptive Gauss-Kronrod (7/15) on a finite interval.
QuadResult integrate_finite(const CFunction& f, double a, double b, const QuadOptions& opts = {});

/// Integral over [a, inf): segments [a + 2^k - 1, a + 2^(k+1) - 1] are added
/// until they become negligible. Segments that stop shrinking are reported as
/// divergence; a stable geometric ratio is extrapolated.
QuadResult integrate_to_infinity(const CFunction& f, double a, const QuadOptions& opts = {});

/// Integral over (a, b] for an integrand that may blow up at a. Segments
/// [a + (b-a)2^-(k+1), a + (b-a)2^-k] approach a geometrically.
QuadResult integrate_to_endpoint(const CFunction& f, double a, double b, const QuadOptions& opts = {});

/// Integral over (-inf, b] by the mirror image of integrate_to_infinity.
QuadResult integrate_from_minus_infinity(const CFunction& f, double b, const QuadOptions& opts = {});

/// Integral over (a, b] with a possibly -inf and b possibly +inf. The
/// interval is split at every breakpoint strictly inside it; the first
/// segment is treated as improper at a finite `a` when `improper_lower` is
/// set, and infinite ends always use the doubling policy.
QuadResult integrate_interval(const CFunction& f, double a, double b,
                              std::span<const double> breakpoints, const QuadOptions& opts = {},
                              bool improper_lower = false);

/// int_{x0}^inf e^{iyx} g(x) dx for a slowly decaying, eventually monotone g.
/// Half-period pieces are summed and the partial sums accelerated with the
/// epsilon algorithm.
QuadResult integrate_fourier_tail(const RFunction& g, double y, double x0, const QuadOptions& opts = {});

/// Throws NonConvergenceError when `r` did not converge and DomainError for
/// a divergent result.
const QuadResult& require_converged(const QuadResult& r, const std::string& context);

}  // namespace levi
