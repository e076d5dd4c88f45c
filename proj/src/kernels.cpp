#include "levi/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "levi/errors.hpp"
#include "levi/special.hpp"

namespace levi {

namespace {

double safe_mul(double k, double v) { return k == 0.0 ? 0.0 : k * v; }

std::string num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Representative interior point of (lo, hi].
double inner_point(double lo, double hi) {
  if (!std::isfinite(hi)) return lo > 0.0 ? 2.0 * lo + 1.0 : lo + 1.0;
  if (lo == 0.0) return 0.5 * hi;
  return 0.5 * (lo + hi);
}

}  // namespace

// ---------------------------------------------------------------- Interval

Interval::Interval(double lo, double hi) : a(lo), b(hi) {
  if (!(lo >= 0.0) || !(lo < hi) || std::isnan(hi))
    throw InputError("interval must satisfy 0 <= a < b, got (" + num(lo) + ", " + num(hi) + "]");
}

// ---------------------------------------------------------- SpaceTransform

SpaceTransform SpaceTransform::constant(double c) {
  SpaceTransform s;
  s.kind_ = Kind::constant;
  s.scale_ = c;
  return s;
}

SpaceTransform SpaceTransform::linear(double k) {
  SpaceTransform s;
  s.kind_ = Kind::linear;
  s.scale_ = k;
  return s;
}

SpaceTransform SpaceTransform::power(double alpha, double k) {
  if (alpha == 0.0) return constant(k);
  if (alpha == 1.0) return linear(k);
  SpaceTransform s;
  s.kind_ = Kind::power;
  s.scale_ = k;
  s.param_ = alpha;
  return s;
}

SpaceTransform SpaceTransform::exp_decay(double lambda, double k) {
  if (!(lambda > 0.0)) throw InputError("exp space transform needs lambda > 0");
  SpaceTransform s;
  s.kind_ = Kind::exp;
  s.scale_ = k;
  s.param_ = lambda;
  return s;
}

SpaceTransform SpaceTransform::neg_log(double k) {
  SpaceTransform s;
  s.kind_ = Kind::neg_log;
  s.scale_ = k;
  return s;
}

SpaceTransform SpaceTransform::opaque(std::function<double(double)> fn, std::string label) {
  if (!fn) throw InputError("opaque space transform needs a callable");
  SpaceTransform s;
  s.kind_ = Kind::opaque;
  s.scale_ = 1.0;
  s.fn_ = std::move(fn);
  s.label_ = std::move(label);
  return s;
}

double SpaceTransform::operator()(double t) const {
  switch (kind_) {
    case Kind::constant: return scale_;
    case Kind::linear: return safe_mul(scale_, t);
    case Kind::power: return safe_mul(scale_, std::pow(t, param_));
    case Kind::exp: return safe_mul(scale_, std::exp(-param_ * t));
    case Kind::neg_log: return safe_mul(scale_, -std::log(t));
    case Kind::opaque: return scale_ * fn_(t);
  }
  return 0.0;
}

SpaceTransform SpaceTransform::scaled(double u) const {
  SpaceTransform s = *this;
  s.scale_ *= u;
  return s;
}

bool SpaceTransform::is_zero() const { return kind_ != Kind::opaque && scale_ == 0.0; }

bool SpaceTransform::is_constant() const { return kind_ == Kind::constant || scale_ == 0.0; }

std::vector<double> SpaceTransform::preimages(double value, const Interval& iv) const {
  std::vector<double> out;
  if (is_constant() || kind_ == Kind::opaque) return out;
  const double q = value / scale_;
  double t = std::numeric_limits<double>::quiet_NaN();
  switch (kind_) {
    case Kind::linear: t = q; break;
    case Kind::power:
      if (q > 0.0) t = std::pow(q, 1.0 / param_);
      break;
    case Kind::exp:
      if (q > 0.0) t = -std::log(q) / param_;
      break;
    case Kind::neg_log: t = std::exp(-q); break;
    default: break;
  }
  if (std::isfinite(t) && iv.interior(t)) out.push_back(t);
  return out;
}

std::pair<double, double> SpaceTransform::end_values(const Interval& iv) const {
  if (kind_ == Kind::opaque) {
    const double lo = iv.a + 1e-12 * std::max(1.0, iv.a);
    const double hi = iv.bounded() ? iv.b : 1e12;
    return {(*this)(lo), (*this)(hi)};
  }
  return {(*this)(iv.a), (*this)(iv.b)};
}

std::pair<double, double> SpaceTransform::range(const Interval& iv) const {
  if (kind_ == Kind::opaque) {
    double lo = kInf, hi = -kInf;
    const double top = iv.bounded() ? iv.b : iv.a + 1e3;
    for (int i = 1; i <= 1000; ++i) {
      const double v = (*this)(iv.a + (top - iv.a) * i / 1000.0);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return {lo, hi};
  }
  const auto [ha, hb] = end_values(iv);
  return {std::min(ha, hb), std::max(ha, hb)};
}

bool SpaceTransform::same_form(const SpaceTransform& o) const {
  return kind_ != Kind::opaque && kind_ == o.kind_ && scale_ == o.scale_ && param_ == o.param_;
}

std::string SpaceTransform::describe() const {
  const std::string k = scale_ == 1.0 ? "" : num(scale_) + "*";
  switch (kind_) {
    case Kind::constant: return num(scale_);
    case Kind::linear: return k + "t";
    case Kind::power: return k + "t^" + num(param_);
    case Kind::exp: return k + "exp(-" + num(param_) + "t)";
    case Kind::neg_log: return k + "(-log t)";
    case Kind::opaque: return "opaque(" + label_ + ")";
  }
  return "?";
}

// ----------------------------------------------------------- catalog clocks

double catalog_tail(CatalogClock id, double param, double w) {
  if (w <= 0.0) {
    switch (id) {
      case CatalogClock::power_pair: return 1.0;
      default: return kInf;
    }
  }
  switch (id) {
    case CatalogClock::log_power: {
      if (w >= 1.0) return 0.0;
      const double m = param;
      return std::pow(-std::log(w), m) / std::tgamma(m + 1.0);
    }
    case CatalogClock::thorin:
      return std::isfinite(w) ? special::expint_e1(w) : 0.0;
    case CatalogClock::power_pair: {
      if (w >= 1.0) return 0.0;
      const double wb = std::pow(w, param);
      return (1.0 - wb) * (1.0 - wb);
    }
    case CatalogClock::power_exp: {
      if (w >= 1.0) return 0.0;
      const double beta = param;
      // w^beta/beta - log w - 1/beta, written to avoid cancellation near 1.
      return std::expm1(beta * std::log(w)) / beta - std::log(w);
    }
    case CatalogClock::gamma_exp: {
      if (!std::isfinite(w)) return 0.0;
      const double alpha = param;
      CFunction f = [alpha](double s) -> cplx { return special::upper_gamma(alpha, s) / s; };
      QuadOptions o;
      o.abs_tol = 1e-13;
      o.rel_tol = 1e-12;
      const QuadResult r = integrate_interval(f, w, kInf, {}, o);
      return r.divergent() ? kInf : r.real();
    }
  }
  return 0.0;
}

double catalog_density(CatalogClock id, double param, double w) {
  if (w <= 0.0) return 0.0;
  switch (id) {
    case CatalogClock::log_power: {
      if (w >= 1.0) return 0.0;
      const double m = param;
      return std::pow(-std::log(w), m - 1.0) / (std::tgamma(m) * w);
    }
    case CatalogClock::thorin: return std::exp(-w) / w;
    case CatalogClock::power_pair: {
      if (w > 1.0) return 0.0;
      const double beta = param;
      return 2.0 * beta * std::pow(w, beta - 1.0) * (1.0 - std::pow(w, beta));
    }
    case CatalogClock::power_exp: {
      if (w > 1.0) return 0.0;
      const double beta = param;
      return 1.0 / w - std::pow(w, beta - 1.0);
    }
    case CatalogClock::gamma_exp: return special::upper_gamma(param, w) / w;
  }
  return 0.0;
}

std::string catalog_name(CatalogClock id) {
  switch (id) {
    case CatalogClock::log_power: return "log_power";
    case CatalogClock::thorin: return "thorin";
    case CatalogClock::power_pair: return "power_pair";
    case CatalogClock::power_exp: return "power_exp";
    case CatalogClock::gamma_exp: return "gamma_exp";
  }
  return "?";
}

std::optional<CatalogClock> catalog_from_name(const std::string& name) {
  for (CatalogClock c : {CatalogClock::log_power, CatalogClock::thorin, CatalogClock::power_pair,
                         CatalogClock::power_exp, CatalogClock::gamma_exp})
    if (catalog_name(c) == name) return c;
  return std::nullopt;
}

// --------------------------------------------------------------- TimeChange

TimeChange TimeChange::linear(double k) {
  TimeChange r;
  r.kind_ = Kind::linear;
  r.scale_ = k;
  return r;
}

TimeChange TimeChange::power(double beta, double k) {
  if (beta == 0.0) throw InputError("power clock needs beta != 0");
  if (beta == 1.0) return linear(k);
  TimeChange r;
  r.kind_ = Kind::power;
  r.scale_ = k;
  r.param_ = beta;
  return r;
}

TimeChange TimeChange::neg_log(double k) {
  TimeChange r;
  r.kind_ = Kind::neg_log;
  r.scale_ = k;
  return r;
}

TimeChange TimeChange::one_minus_exp(double lambda, double k) {
  if (!(lambda > 0.0)) throw InputError("one_minus_exp clock needs lambda > 0");
  TimeChange r;
  r.kind_ = Kind::one_minus_exp;
  r.scale_ = k;
  r.param_ = lambda;
  return r;
}

TimeChange TimeChange::exp_decay(double lambda, double k) {
  if (!(lambda > 0.0)) throw InputError("exp_decay clock needs lambda > 0");
  TimeChange r;
  r.kind_ = Kind::exp_decay;
  r.scale_ = k;
  r.param_ = lambda;
  return r;
}

TimeChange TimeChange::upper_gamma(double alpha, double k) {
  TimeChange r;
  r.kind_ = Kind::upper_gamma;
  r.scale_ = k;
  r.param_ = alpha;
  return r;
}

TimeChange TimeChange::dirac(double u) {
  TimeChange r;
  r.kind_ = Kind::dirac;
  r.scale_ = 1.0;
  r.param_ = u;
  return r;
}

TimeChange TimeChange::catalog(CatalogClock id, double param, double k) {
  TimeChange r;
  r.kind_ = Kind::catalog;
  r.catalog_ = id;
  r.scale_ = k;
  r.param_ = param;
  return r;
}

TimeChange TimeChange::image(std::shared_ptr<const ImageMeasure> measure) {
  if (!measure) throw InputError("image clock needs a measure");
  TimeChange r;
  r.kind_ = Kind::image;
  r.scale_ = 1.0;
  r.image_ = std::move(measure);
  return r;
}

double TimeChange::base(double t) const {
  switch (kind_) {
    case Kind::linear: return t;
    case Kind::power: return std::pow(t, param_);
    case Kind::neg_log: return -std::log(t);
    case Kind::one_minus_exp: return -std::expm1(-param_ * t);
    case Kind::exp_decay: return std::exp(-param_ * t);
    case Kind::upper_gamma:
      if (t <= 0.0) return param_ > 0.0 ? std::tgamma(param_) : kInf;
      if (!std::isfinite(t)) return 0.0;
      return special::upper_gamma(param_, t);
    case Kind::dirac: return t >= param_ ? 1.0 : 0.0;
    case Kind::catalog: return -catalog_tail(catalog_, param_, t);
    case Kind::image: return -image_->tail(t);
  }
  return 0.0;
}

double TimeChange::base_derivative(double t) const {
  switch (kind_) {
    case Kind::linear: return 1.0;
    case Kind::power: return param_ * std::pow(t, param_ - 1.0);
    case Kind::neg_log: return -1.0 / t;
    case Kind::one_minus_exp: return param_ * std::exp(-param_ * t);
    case Kind::exp_decay: return -param_ * std::exp(-param_ * t);
    case Kind::upper_gamma: return -std::pow(t, param_ - 1.0) * std::exp(-t);
    case Kind::dirac: return 0.0;
    case Kind::catalog: return catalog_density(catalog_, param_, t);
    case Kind::image: return std::numeric_limits<double>::quiet_NaN();
  }
  return 0.0;
}

double TimeChange::operator()(double t) const { return offset_ + safe_mul(scale_, base(t)); }

double TimeChange::limit(double t) const { return (*this)(t); }

TimeChange::Direction TimeChange::direction() const {
  bool increasing = true;
  switch (kind_) {
    case Kind::power: increasing = param_ > 0.0; break;
    case Kind::neg_log:
    case Kind::exp_decay:
    case Kind::upper_gamma: increasing = false; break;
    default: break;
  }
  if (scale_ < 0.0) increasing = !increasing;
  return increasing ? Direction::nondecreasing : Direction::nonincreasing;
}

std::optional<double> TimeChange::dirac_point() const {
  if (kind_ == Kind::dirac) return param_;
  return std::nullopt;
}

double TimeChange::density(double t) const { return std::abs(safe_mul(scale_, base_derivative(t))); }

double TimeChange::measure(double lo, double hi) const {
  if (scale_ == 0.0 || !(hi > lo)) return 0.0;
  if (kind_ == Kind::dirac) return (param_ > lo && param_ <= hi) ? 1.0 : 0.0;
  const double d = std::abs(base(hi) - base(lo)) * std::abs(scale_);
  return std::isnan(d) ? kInf : d;
}

TimeChange TimeChange::scaled(double s) const {
  TimeChange r = *this;
  r.scale_ *= s;
  r.offset_ *= s;
  return r;
}

TimeChange TimeChange::shifted(double c) const {
  TimeChange r = *this;
  r.offset_ += c;
  return r;
}

TimeChange TimeChange::reversed(double r_a) const {
  TimeChange r = *this;
  r.scale_ = -scale_;
  r.offset_ = r_a - offset_;
  return r;
}

QuadResult TimeChange::integrate(const CFunction& f, const Interval& iv, std::span<const double> kinks,
                                 const QuadOptions& opts) const {
  if (scale_ == 0.0) return {};
  if (kind_ == Kind::dirac) {
    QuadResult r;
    if (iv.contains(param_)) r.value = f(param_);
    r.evaluations = 1;
    return r;
  }
  if (kind_ == Kind::image) {
    const Interval sup = image_->support();
    std::vector<double> k(kinks.begin(), kinks.end());
    if (iv.a > sup.a) k.push_back(iv.a);
    if (iv.b < sup.b) k.push_back(iv.b);
    CFunction restricted = [&](double w) -> cplx { return iv.contains(w) ? f(w) : cplx{0.0, 0.0}; };
    QuadResult r = image_->integrate(restricted, k, opts);
    r.value *= std::abs(scale_);
    return r;
  }
  const double s = std::abs(scale_);
  CFunction g = [&](double t) -> cplx {
    const double d = s * std::abs(base_derivative(t));
    if (d == 0.0) return {0.0, 0.0};
    return f(t) * d;
  };
  return integrate_interval(g, iv.a, iv.b, kinks, opts, iv.a == 0.0);
}

std::string TimeChange::describe() const {
  std::string k = scale_ == 1.0 ? "" : num(scale_) + "*";
  std::string off = offset_ == 0.0 ? "" : num(offset_) + " + ";
  switch (kind_) {
    case Kind::linear: return off + k + "t";
    case Kind::power: return off + k + "t^" + num(param_);
    case Kind::neg_log: return off + k + "(-log t)";
    case Kind::one_minus_exp: return off + k + "(1-exp(-" + num(param_) + "t))";
    case Kind::exp_decay: return off + k + "exp(-" + num(param_) + "t)";
    case Kind::upper_gamma: return off + k + "Gamma(" + num(param_) + ";t)";
    case Kind::dirac: return "dirac(" + num(param_) + ")";
    case Kind::catalog: return off + k + "catalog:" + catalog_name(catalog_) + "(" + num(param_) + ")";
    case Kind::image: return "image-measure";
  }
  return "?";
}

// -------------------------------------------------------------- IntegralMap

IntegralMap::IntegralMap(SpaceTransform h, TimeChange r, Interval iv, bool reflect_input)
    : IntegralMap(std::move(h), std::move(r), iv, reflect_input, true) {}

IntegralMap IntegralMap::trivial(SpaceTransform h, TimeChange r, Interval iv) {
  return IntegralMap(std::move(h), std::move(r), iv, false, false);
}

IntegralMap::IntegralMap(SpaceTransform h, TimeChange r, Interval iv, bool reflect_input, bool check)
    : h_(std::move(h)), r_(std::move(r)), iv_(iv), reflect_input_(reflect_input) {
  if (auto u = r_.dirac_point(); u && !iv_.interior(*u))
    throw InputError("dirac clock point must lie inside (a, b)");
  if (check && (h_.is_zero() || r_.is_constant() || clock_mass() == 0.0))
    throw InputError("integral map is trivial (zero map); build it with IntegralMap::trivial");
}

double IntegralMap::effective_sign() const {
  double s = r_.nondecreasing() ? 1.0 : -1.0;
  return reflect_input_ ? -s : s;
}

std::vector<double> IntegralMap::g_preimages(double value) const {
  return h_.preimages(value * effective_sign(), iv_);
}

std::vector<double> IntegralMap::h_zeros() const { return h_.preimages(0.0, iv_); }

std::pair<double, double> IntegralMap::g_range() const {
  auto [lo, hi] = h_.range(iv_);
  if (effective_sign() < 0.0) return {-hi, -lo};
  return {lo, hi};
}

QuadResult IntegralMap::integrate_clock(const CFunction& f, std::span<const double> kinks,
                                        const QuadOptions& opts) const {
  std::vector<double> k(kinks.begin(), kinks.end());
  for (double z : h_zeros()) k.push_back(z);
  return r_.integrate(f, iv_, k, opts);
}

double IntegralMap::clock_mass() const { return r_.measure(iv_.a, iv_.b); }

IntegralMap IntegralMap::with_h(SpaceTransform h) const {
  return IntegralMap(std::move(h), r_, iv_, reflect_input_, false);
}

IntegralMap IntegralMap::with_r(TimeChange r) const {
  return IntegralMap(h_, std::move(r), iv_, reflect_input_, false);
}

std::string IntegralMap::describe() const {
  std::ostringstream os;
  os << "I^{" << h_.describe() << ", " << r_.describe() << "}_(" << iv_.a << ", " << iv_.b << "]";
  if (reflect_input_) os << " [reflected input]";
  return os.str();
}

// ------------------------------------------------------------ ImageMeasure

ImageMeasure::ImageMeasure(std::vector<IntegralMap> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InputError("image measure needs at least one factor");
  double lo = 1.0, hi = 1.0;
  bool lo_zero = false, hi_inf = false;
  for (const IntegralMap& m : factors_) {
    if (m.h().is_opaque()) throw UnsupportedError("opaque space transforms cannot be composed");
    auto [glo, ghi] = m.g_range();
    double alo, ahi;
    if (glo >= 0.0) {
      sign_ *= 1.0;
      alo = glo;
      ahi = ghi;
    } else if (ghi <= 0.0) {
      sign_ *= -1.0;
      alo = -ghi;
      ahi = -glo;
    } else {
      throw UnsupportedError("space transform changes sign on its interval; image is not a half-line interval");
    }
    if (alo == 0.0) lo_zero = true; else lo *= alo;
    if (!std::isfinite(ahi)) hi_inf = true; else hi *= ahi;
  }
  support_ = Interval(lo_zero ? 0.0 : lo, hi_inf ? kInf : hi);
}

double level_set_measure(const IntegralMap& m, double v) {
  const Interval& iv = m.interval();
  if (auto u = m.r().dirac_point()) {
    const double gu = m.g(*u);
    return (v > 0.0 ? gu > v : gu < v) ? 1.0 : 0.0;
  }
  std::vector<double> cuts{iv.a};
  for (double p : m.g_preimages(v)) cuts.push_back(p);
  cuts.push_back(iv.b);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double t = inner_point(cuts[i], cuts[i + 1]);
    const double gt = m.g(t);
    if (v > 0.0 ? gt > v : gt < v) total += m.r().measure(cuts[i], cuts[i + 1]);
  }
  return total;
}

double ImageMeasure::tail_from(std::size_t idx, double v) const {
  const IntegralMap& m = factors_[idx];
  const bool positive = m.g_range().first >= 0.0;
  if (idx + 1 == factors_.size()) return level_set_measure(m, positive ? v : -v);
  QuadOptions o;
  o.abs_tol = 1e-12;
  o.rel_tol = 1e-11;
  bool infinite = false;
  CFunction f = [&](double t) -> cplx {
    const double gt = std::abs(m.g(t));
    if (gt == 0.0) return {0.0, 0.0};
    const double inner = tail_from(idx + 1, v / gt);
    if (!std::isfinite(inner)) {
      infinite = true;
      return {0.0, 0.0};
    }
    return inner;
  };
  // The inner tail jumps where the remaining factors' support edges are hit.
  std::vector<double> kinks;
  const Interval rest = ImageMeasure(std::vector<IntegralMap>(factors_.begin() + idx + 1, factors_.end())).support();
  for (double edge : {rest.a, rest.b})
    if (edge > 0.0 && std::isfinite(edge))
      for (double p : m.g_preimages((positive ? 1.0 : -1.0) * v / edge)) kinks.push_back(p);
  const QuadResult r = m.integrate_clock(f, kinks, o);
  if (infinite || r.divergent()) return kInf;
  return r.real();
}

double ImageMeasure::tail(double v) const {
  if (v <= support_.a) {
    // Mass of the whole support (possibly infinite).
    if (support_.a > 0.0) return tail_from(0, support_.a * (1.0 - 1e-15));
    return kInf;
  }
  if (v >= support_.b) return 0.0;
  return tail_from(0, v);
}

QuadResult ImageMeasure::integrate_from(std::size_t idx, double prefix, const CFunction& f,
                                        std::span<const double> kinks, const QuadOptions& opts) const {
  const IntegralMap& m = factors_[idx];
  const double fsign = m.g_range().first >= 0.0 ? 1.0 : -1.0;
  if (idx + 1 == factors_.size()) {
    std::vector<double> tk;
    for (double w : kinks)
      for (double p : m.g_preimages(fsign * w / prefix)) tk.push_back(p);
    CFunction inner = [&](double t) -> cplx { return f(prefix * std::abs(m.g(t))); };
    return m.integrate_clock(inner, tk, opts);
  }
  QuadOptions inner_opts = opts.tightened(0.01);
  bool bad = false, divergent = false;
  CFunction outer = [&](double t) -> cplx {
    const double gt = std::abs(m.g(t));
    if (gt == 0.0) return {0.0, 0.0};
    const QuadResult r = integrate_from(idx + 1, prefix * gt, f, kinks, inner_opts);
    if (r.divergent()) divergent = true;
    if (!r.ok()) bad = true;
    return r.value;
  };
  QuadResult r = m.integrate_clock(outer, {}, opts);
  if (divergent) r.status = QuadStatus::divergent;
  else if (bad && r.ok()) r.status = QuadStatus::nonconverged;
  return r;
}

QuadResult ImageMeasure::integrate(const CFunction& f, std::span<const double> kinks,
                                   const QuadOptions& opts) const {
  return integrate_from(0, 1.0, f, kinks, opts);
}

// ---------------------------------------------------------- functionals

double clock_functional(const IntegralMap& m, const std::function<double(double)>& f_of_abs_h,
                        const QuadOptions& opts) {
  CFunction f = [&](double t) -> cplx { return f_of_abs_h(std::abs(m.h()(t))); };
  const QuadResult r = m.integrate_clock(f, {}, opts);
  if (r.divergent()) return kInf;
  if (!r.ok()) throw NonConvergenceError("clock functional for " + m.describe(), r.abs_error);
  return r.real();
}

double p_functional(const IntegralMap& m, double p, const QuadOptions& opts) {
  if (!(p > 0.0 && p <= 2.0)) throw InputError("p_functional needs p in (0, 2]");
  return clock_functional(m, [p](double x) { return x == 0.0 ? 0.0 : std::pow(x, p); }, opts);
}

MapClass classify(const IntegralMap& m) {
  if (m.h().is_zero() || m.r().is_constant() || m.clock_mass() == 0.0) return MapClass::zero;
  if (auto u = m.r().dirac_point()) {
    if (std::abs(m.g(*u) - 1.0) <= 1e-12) return MapClass::identity;
    return MapClass::generic;
  }
  if (m.h().is_constant() && !m.h().is_opaque()) {
    const double g = m.effective_sign() * m.h()(1.0);
    if (std::abs(g - 1.0) <= 1e-12 && std::abs(m.clock_mass() - 1.0) <= 1e-12) return MapClass::identity;
  }
  return MapClass::generic;
}

std::string to_string(MapClass c) {
  switch (c) {
    case MapClass::zero: return "zero";
    case MapClass::identity: return "identity";
    case MapClass::generic: return "generic";
  }
  return "?";
}

IntegralMap reverse_clock(const IntegralMap& m) {
  if (m.r().nondecreasing()) throw InputError("reverse_clock needs a nonincreasing clock");
  const double ra = m.r().limit(m.interval().a);
  if (!std::isfinite(ra))
    throw UnsupportedError("reverse_clock: r(a+) is infinite, the clock cannot be reversed");
  return IntegralMap(m.h(), m.r().reversed(ra), m.interval(), !m.reflect_input());
}

}  // namespace levi
