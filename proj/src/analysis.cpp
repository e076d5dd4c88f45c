#include "levi/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "levi/errors.hpp"
#include "levi/transform.hpp"

namespace levi {

void StableLaw::validate() const {
  if (!(p > 0.0 && p <= 2.0)) throw InputError("stable index must lie in (0, 2]");
  if (!(sigma > 0.0)) throw InputError("stable scale must be > 0");
  if (!symmetric) throw UnsupportedError("only symmetric strictly stable laws are supported");
}

ExponentFn StableLaw::exponent() const {
  validate();
  return stable_exponent(sigma, p);
}

LevyTriple StableLaw::triple() const {
  validate();
  if (p == 2.0) return LevyTriple(0.0, 2.0 * sigma);
  return LevyTriple(0.0, 0.0, LevyMeasure::stable(sigma / StablePart{1.0, p}.sigma(), p));
}

double fixed_point_constant(const IntegralMap& m, double p) {
  if (!(p > 0.0 && p <= 2.0)) throw InputError("stable index must lie in (0, 2]");
  return p_functional(m, p);
}

FixedPointReport verify_fixed_point(const IntegralMap& m, const StableLaw& s, const std::vector<double>& y_grid) {
  FixedPointReport rep;
  rep.c = fixed_point_constant(m, s.p);
  if (!std::isfinite(rep.c)) return rep;
  const ExponentFn phi = s.exponent();
  const ExponentFn img = transform_exponent(m, phi, QuadOptions{.abs_tol = 1e-12, .rel_tol = 1e-11});
  rep.max_error = 0.0;
  for (double y : y_grid) {
    const cplx want = rep.c * phi(y);
    rep.max_error = std::max(rep.max_error, std::abs(img(y) - want) / std::max(1.0, std::abs(want)));
  }
  const LevyTriple t = transform_triple(m, s.triple());
  if (s.p == 2.0) {
    rep.index_preserved = t.levy.empty() && t.gaussian_var > 0.0;
  } else {
    auto idx = t.levy.stable_index();
    rep.index_preserved = t.gaussian_var == 0.0 && idx && std::abs(*idx - s.p) < 1e-14;
  }
  rep.passed = rep.max_error <= 1e-8 && rep.index_preserved;
  return rep;
}

std::vector<double> default_p_grid() { return {0.1, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0}; }

PreservationReport class_preservation_scan(const IntegralMap& m, const std::vector<double>& p_grid) {
  PreservationReport rep;
  rep.preserved = true;
  for (double p : p_grid) {
    const double c = fixed_point_constant(m, p);
    rep.rows.push_back({p, c, std::isfinite(c)});
    rep.preserved = rep.preserved && std::isfinite(c);
  }
  return rep;
}

namespace {

bool close(double x, double y) {
  if (std::isinf(x) || std::isinf(y)) return x == y;
  return std::abs(x - y) <= 1e-12 * std::max(1.0, std::abs(y));
}

double sup_gap(const std::function<cplx(double)>& a, const std::function<cplx(double)>& b, const std::vector<double>& ys) {
  double d = 0.0;
  for (double y : ys) d = std::max(d, std::abs(a(y) - b(y)));
  return d;
}

}  // namespace

FactorizationReport check_factorization(const IntegralMap& mu_map, const IntegralMap& prime_map, const LevyTriple& nu,
                                        const std::vector<double>& y_grid, double tol) {
  FactorizationReport rep;
  rep.domains_ok = domain_check(mu_map, nu).admitted && domain_check(prime_map, nu).admitted;

  const ExponentFn phi = exponent_fn(nu);
  const ExponentFn lambda = transform_exponent(prime_map, phi);
  const ExponentFn i_nu = transform_exponent(mu_map, phi);
  const ExponentFn i_lambda = transform_exponent(mu_map, lambda);
  auto product = [&](double y) { return i_lambda(y) + lambda(y); };
  const ExponentFn first = transform_exponent(prime_map, ExponentFn{[&](double y) { return i_nu(y) + phi(y); }});
  if (rep.domains_ok) {
    rep.factorization_error = sup_gap(product, i_nu, y_grid);
    rep.first_identity_error = sup_gap(first, product, y_grid);
    try {
      const LevyTriple lam = transform_triple(prime_map, nu);
      const ExponentFn route = exponent_fn(convolve(transform_triple(mu_map, lam), lam));
      rep.triple_route_error = sup_gap(route, i_nu, y_grid);
    } catch (const Error& e) {
      rep.note += std::string("triple route: ") + e.what() + "; ";
    }
  } else {
    rep.note += "law is outside a domain; ";
  }

  try {
    const auto [lo1, hi1] = mu_map.g_range();
    const auto [lo2, hi2] = prime_map.g_range();
    rep.image_condition = lo1 >= 0.0 && lo2 >= 0.0 && close(lo1, lo2) && close(lo1, lo1 * lo2) && close(hi1, hi2) &&
                          close(hi1, hi1 * hi2) && hi1 > lo1;
    if (!rep.image_condition) rep.note += "images differ or are not stable under products; ";
    const ImageMeasure a({mu_map}), b({prime_map}), ab({mu_map, prime_map});
    const double d = a.support().b;
    const double c = std::max(a.support().a, 1e-4 * std::min(1.0, d));
    const double top = std::isfinite(d) ? d : 1e4;
    rep.measure_discrepancy = 0.0;
    bool monotone = true;
    double prev = kInf;
    const int n = 40;
    for (int i = 0; i < n; ++i) {
      const double w = c * std::pow(top / c, (i + 0.5) / n);
      const double diff = a.tail(w) - b.tail(w);
      if (diff < -1e-9 || diff > prev + 1e-9) monotone = false;
      prev = diff;
      rep.measure_discrepancy = std::max(rep.measure_discrepancy, std::abs(ab.tail(w) - diff) / std::max(1.0, std::abs(diff)));
    }
    rep.measure_condition = monotone && rep.measure_discrepancy <= 1e-7;
    if (!monotone) rep.note += "h rho - h' rho' is not a positive measure; ";
  } catch (const Error& e) {
    rep.note += std::string("measure condition: ") + e.what() + "; ";
  }
  rep.condition_holds = rep.image_condition && rep.measure_condition && rep.domains_ok;
  rep.identity_holds = rep.factorization_error <= tol && rep.first_identity_error <= tol;
  if (rep.note.empty()) rep.note = "ok";
  return rep;
}

namespace {

// log(x / sinh x) and x coth x - 1, with series near 0.
double log_phi(double x) {
  x = std::abs(x);
  if (x < 1e-3) return -x * x / 6.0 + x * x * x * x / 180.0;
  return std::log(x) - (x + std::log1p(-std::exp(-2.0 * x)) - std::log(2.0));
}

double coth_term(double x) {
  x = std::abs(x);
  if (x < 1e-3) return x * x / 3.0 - x * x * x * x / 45.0 + 2.0 * std::pow(x, 6) / 945.0;
  return x / std::tanh(x) - 1.0;
}

}  // namespace

AreaReport stochastic_area_identity(double u, const std::vector<double>& t_grid) {
  if (!(u > 0.0)) throw InputError("stochastic area identity needs u > 0");
  const IntegralMap class_l(SpaceTransform::exp_decay(), TimeChange::linear(), Interval(0.0, kInf));
  const ExponentFn log_psi{[u](double t) { return cplx(-coth_term(t * u)); }, true, std::nullopt};
  const ExponentFn img = transform_exponent(class_l, log_psi, QuadOptions{.abs_tol = 1e-12, .rel_tol = 1e-11});
  AreaReport rep;
  for (double t : t_grid) {
    const double x = t * u;
    const double chi = std::exp(log_phi(x) - coth_term(x));
    const double phi = x == 0.0 ? 1.0 : x / std::sinh(x);
    const double psi = std::exp(-coth_term(x));
    rep.product_error = std::max(rep.product_error, std::abs(chi - phi * psi));
    AreaRow row{t, log_phi(x), img(t).real(), 0.0};
    row.error = std::abs(row.log_phi - row.integral);
    rep.max_error = std::max(rep.max_error, row.error);
    rep.rows.push_back(row);
  }
  rep.passed = rep.max_error <= 1e-6 && rep.product_error <= 1e-14;
  return rep;
}

}  // namespace levi
