#include "levi/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <queue>

#include "levi/errors.hpp"

namespace levi {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Kronrod abscissae (descending) and weights; Gauss weights at odd nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

double component_error(double k15, double g7, double resabs, double resasc) {
  double err = std::abs(k15 - g7);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(err, 50.0 * kEps * resabs);
  return err;
}

Segment gk15(const CFunction& f, double a, double b, bool& finite) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const cplx fc = f(center);
  cplx k15 = fc * kWgk[7];
  cplx g7 = fc * kWg[3];
  double abs_re = std::abs(fc.real()) * kWgk[7], abs_im = std::abs(fc.imag()) * kWgk[7];
  cplx fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const cplx s = fv1[j] + fv2[j];
    k15 += kWgk[j] * s;
    abs_re += kWgk[j] * (std::abs(fv1[j].real()) + std::abs(fv2[j].real()));
    abs_im += kWgk[j] * (std::abs(fv1[j].imag()) + std::abs(fv2[j].imag()));
    if (j % 2 == 1) g7 += kWg[j / 2] * s;
  }
  const cplx mean = k15 * 0.5;
  double asc_re = kWgk[7] * std::abs(fc.real() - mean.real());
  double asc_im = kWgk[7] * std::abs(fc.imag() - mean.imag());
  for (int j = 0; j < 7; ++j) {
    asc_re += kWgk[j] * (std::abs(fv1[j].real() - mean.real()) + std::abs(fv2[j].real() - mean.real()));
    asc_im += kWgk[j] * (std::abs(fv1[j].imag() - mean.imag()) + std::abs(fv2[j].imag() - mean.imag()));
  }
  const double h = std::abs(half);
  const cplx value = k15 * half;
  const double err_re = component_error(k15.real() * half, g7.real() * half, abs_re * h, asc_re * h);
  const double err_im = component_error(k15.imag() * half, g7.imag() * half, abs_im * h, asc_im * h);
  finite = std::isfinite(value.real()) && std::isfinite(value.imag());
  return {a, b, value, std::hypot(err_re, err_im)};
}

double target(const QuadOptions& o, const cplx& v) { return std::max(o.abs_tol, o.rel_tol * std::abs(v)); }

// Sums a sequence of tail segments produced by `bounds(k)`, applying the
// convergence / divergence / extrapolation policy shared by all improper ends.
template <class Bounds>
QuadResult sum_tail(const CFunction& f, Bounds bounds, const QuadOptions& opts) {
  QuadOptions piece_opts = opts;
  piece_opts.abs_tol = opts.abs_tol * 0.1;
  QuadResult total;
  double prev_mag = -1.0, prev_ratio = -1.0;
  int small_run = 0, growth_run = 0, stable_run = 0;
  for (int k = 0; k < opts.max_tail_segments; ++k) {
    const auto [lo, hi] = bounds(k);
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo == hi) break;
    QuadResult piece = integrate_finite(f, lo, hi, piece_opts);
    if (piece.status != QuadStatus::ok) {
      piece.value += total.value;
      piece.abs_error += total.abs_error;
      piece.evaluations += total.evaluations;
      return piece;
    }
    total += piece;
    const double mag = std::abs(piece.value);
    const double tol = target(opts, total.value) * 0.1;
    small_run = mag <= tol ? small_run + 1 : 0;
    if (small_run >= 2 && k >= 2) return total;
    if (prev_mag >= 0.0) {
      const double ratio = prev_mag > 0.0 ? mag / prev_mag : (mag > 0.0 ? 2.0 : 0.0);
      growth_run = (ratio >= 0.999 && mag > tol) ? growth_run + 1 : 0;
      if (growth_run >= 3 && k >= opts.min_segments_for_divergence) {
        total.status = QuadStatus::divergent;
        return total;
      }
      stable_run = (prev_ratio >= 0.0 && std::abs(ratio - prev_ratio) <= 0.02 * std::max(ratio, 1e-3))
                       ? stable_run + 1
                       : 0;
      if (stable_run >= 2 && ratio < 0.9) {
        // Geometric tail; its error follows from the drift in the ratio.
        const cplx tail = piece.value * (ratio / (1.0 - ratio));
        const double drift = std::max(std::abs(ratio - prev_ratio), 1e-3 * ratio);
        const double tail_err = mag * drift / ((1.0 - ratio) * (1.0 - ratio));
        if (std::abs(tail) <= tol * 10.0 || tail_err <= tol * 10.0) {
          total.value += tail;
          total.abs_error += std::max(tail_err, std::abs(tail) * 1e-3);
          return total;
        }
      }
      prev_ratio = ratio;
    }
    prev_mag = mag;
  }
  // Ran out of room: decide from the last observed ratio.
  if (prev_ratio >= 0.999 && prev_mag > target(opts, total.value) * 0.1) {
    total.status = QuadStatus::divergent;
  } else if (prev_ratio > 0.0 && prev_ratio < 0.999) {
    const double tail = prev_mag * prev_ratio / (1.0 - prev_ratio);
    total.abs_error += tail;
    if (tail > 10.0 * target(opts, total.value)) total.status = QuadStatus::nonconverged;
  }
  return total;
}

}  // namespace

QuadResult& QuadResult::operator+=(const QuadResult& other) {
  value += other.value;
  abs_error += other.abs_error;
  evaluations += other.evaluations;
  if (other.status == QuadStatus::divergent || status == QuadStatus::divergent)
    status = QuadStatus::divergent;
  else if (other.status == QuadStatus::nonconverged)
    status = QuadStatus::nonconverged;
  return *this;
}

QuadResult integrate_finite(const CFunction& f, double a, double b, const QuadOptions& opts) {
  QuadResult out;
  if (a == b) return out;
  bool finite = true;
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b, finite);
  out.evaluations = 15;
  if (!finite) {
    out.status = QuadStatus::nonconverged;
    out.value = first.value;
    out.abs_error = std::numeric_limits<double>::infinity();
    return out;
  }
  cplx total = first.value;
  double total_err = first.error;
  // Segments too narrow to split further are retired here.
  cplx retired_value{0.0, 0.0};
  double retired_err = 0.0;
  heap.push(first);
  int subdivisions = 0;
  while (total_err > target(opts, total) && !heap.empty()) {
    if (subdivisions >= opts.max_subdivisions) {
      out.status = QuadStatus::nonconverged;
      break;
    }
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (std::abs(worst.b - worst.a) <= 1e3 * kEps * std::max(std::abs(mid), 1e-300) ||
        mid == worst.a || mid == worst.b) {
      retired_value += worst.value;
      retired_err += worst.error;
      if (heap.empty()) break;
      continue;
    }
    bool f1 = true, f2 = true;
    Segment left = gk15(f, worst.a, mid, f1);
    Segment right = gk15(f, mid, worst.b, f2);
    out.evaluations += 30;
    ++subdivisions;
    if (!f1 || !f2) {
      out.status = QuadStatus::nonconverged;
      total = total - worst.value + left.value + right.value;
      total_err = std::numeric_limits<double>::infinity();
      break;
    }
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    // Recompute occasionally to stop drift from incremental updates.
    if (subdivisions % 64 == 0) {
      cplx v = retired_value;
      double e = retired_err;
      auto copy = heap;
      while (!copy.empty()) {
        v += copy.top().value;
        e += copy.top().error;
        copy.pop();
      }
      total = v;
      total_err = e;
    }
  }
  out.value = total;
  out.abs_error = total_err;
  if (out.status == QuadStatus::ok && total_err > target(opts, total)) {
    // Only retired (roundoff-limited) segments remain; accept if they are
    // within two orders of the target.
    if (total_err > 100.0 * target(opts, total)) out.status = QuadStatus::nonconverged;
  }
  return out;
}

QuadResult integrate_to_infinity(const CFunction& f, double a, const QuadOptions& opts) {
  auto bounds = [a](int k) {
    const double lo = a + std::ldexp(1.0, k) - 1.0;
    const double hi = a + std::ldexp(1.0, k + 1) - 1.0;
    return std::pair<double, double>{lo, hi};
  };
  return sum_tail(f, bounds, opts);
}

QuadResult integrate_from_minus_infinity(const CFunction& f, double b, const QuadOptions& opts) {
  auto bounds = [b](int k) {
    const double hi = b - std::ldexp(1.0, k) + 1.0;
    const double lo = b - std::ldexp(1.0, k + 1) + 1.0;
    return std::pair<double, double>{lo, hi};
  };
  return sum_tail(f, bounds, opts);
}

QuadResult integrate_to_endpoint(const CFunction& f, double a, double b, const QuadOptions& opts) {
  const double width = b - a;
  auto bounds = [a, width](int k) {
    const double hi = a + std::ldexp(width, -k);
    const double lo = a + std::ldexp(width, -k - 1);
    return std::pair<double, double>{lo, hi};
  };
  return sum_tail(f, bounds, opts);
}

QuadResult integrate_interval(const CFunction& f, double a, double b, std::span<const double> breakpoints,
                              const QuadOptions& opts, bool improper_lower) {
  if (!(a < b)) return {};
  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if (p > a && p < b && std::isfinite(p)) cuts.push_back(p);
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(b);
  // Two infinite ends need a finite anchor between them.
  if (cuts.size() == 2 && !std::isfinite(a) && !std::isfinite(b)) cuts.insert(cuts.begin() + 1, 0.0);
  // The halving scheme only sees the unit neighbourhood of a; mass further
  // out goes to the adaptive rule.
  if (improper_lower && std::isfinite(a) && cuts[1] > a + 1.0) cuts.insert(cuts.begin() + 1, a + 1.0);

  const std::size_t n = cuts.size() - 1;
  QuadOptions seg_opts = opts;
  seg_opts.abs_tol = opts.abs_tol / static_cast<double>(n);
  QuadResult total;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = cuts[i], hi = cuts[i + 1];
    QuadResult part;
    if (!std::isfinite(lo))
      part = integrate_from_minus_infinity(f, hi, seg_opts);
    else if (!std::isfinite(hi))
      part = integrate_to_infinity(f, lo, seg_opts);
    else if (i == 0 && improper_lower)
      part = integrate_to_endpoint(f, lo, hi, seg_opts);
    else
      part = integrate_finite(f, lo, hi, seg_opts);
    total += part;
    if (total.divergent()) return total;
  }
  return total;
}

namespace {

// Wynn epsilon table, returning the latest even-column estimate.
cplx wynn_extrapolate(const std::vector<cplx>& sums, double* change) {
  const std::size_t n = sums.size();
  std::vector<cplx> prev(n, cplx{0.0, 0.0}), cur(sums);
  cplx best = sums.back();
  *change = std::numeric_limits<double>::infinity();
  for (std::size_t col = 1; col < n; ++col) {
    std::vector<cplx> next(n - col);
    bool broke = false;
    for (std::size_t i = 0; i + col < n; ++i) {
      const cplx d = cur[i + 1] - cur[i];
      if (std::abs(d) < 1e-300) {
        broke = true;
        break;
      }
      next[i] = (col == 1 ? cplx{0.0, 0.0} : prev[i + 1]) + 1.0 / d;
    }
    if (broke) break;
    prev = cur;
    cur = next;
    if (col % 2 == 0 && cur.size() >= 2) {
      best = cur.back();
      *change = std::abs(cur.back() - cur[cur.size() - 2]);
    }
  }
  return best;
}

}  // namespace

QuadResult integrate_fourier_tail(const RFunction& g, double y, double x0, const QuadOptions& opts) {
  QuadResult out;
  if (y == 0.0) {
    out = integrate_to_infinity([&](double x) -> cplx { return g(x); }, x0, opts);
    return out;
  }
  const double half = std::numbers::pi / std::abs(y);
  QuadOptions piece_opts = opts;
  piece_opts.abs_tol = opts.abs_tol * 1e-2;
  CFunction f = [&](double x) -> cplx { return std::exp(cplx(0.0, y * x)) * g(x); };
  std::vector<cplx> sums;
  cplx partial{0.0, 0.0};
  cplx last_estimate{0.0, 0.0};
  int agree = 0;
  for (int k = 0; k < 400; ++k) {
    const QuadResult piece = integrate_finite(f, x0 + k * half, x0 + (k + 1) * half, piece_opts);
    out.evaluations += piece.evaluations;
    out.abs_error += piece.abs_error;
    if (!piece.ok()) {
      out.status = QuadStatus::nonconverged;
      out.value = partial;
      return out;
    }
    partial += piece.value;
    sums.push_back(partial);
    if (sums.size() > 40) sums.erase(sums.begin());
    if (sums.size() < 8) continue;
    double change = 0.0;
    const cplx est = wynn_extrapolate(sums, &change);
    const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(est));
    if (std::abs(est - last_estimate) <= tol && change <= 10.0 * tol) {
      if (++agree >= 2) {
        out.value = est;
        out.abs_error += std::max(change, std::abs(est - last_estimate));
        return out;
      }
    } else {
      agree = 0;
    }
    last_estimate = est;
  }
  out.value = last_estimate;
  out.status = QuadStatus::nonconverged;
  return out;
}

const QuadResult& require_converged(const QuadResult& r, const std::string& context) {
  if (r.status == QuadStatus::divergent) throw DomainError(context + ": integral diverges");
  if (r.status == QuadStatus::nonconverged) throw NonConvergenceError(context, r.abs_error);
  return r;
}

}  // namespace levi
