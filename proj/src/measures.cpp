#include "levi/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "levi/errors.hpp"

namespace levi {

namespace {

constexpr double kPi = std::numbers::pi;

bool in_ball(double x) { return std::abs(x) <= 1.0; }

void check_finite(const QuadResult& r, const std::string& what) {
  if (r.status == QuadStatus::nonconverged) throw NonConvergenceError(what, r.abs_error);
}

Functional from_quad(const QuadResult& r, const std::string& what) {
  if (r.divergent()) return {false, kInf};
  check_finite(r, what);
  return {true, r.real()};
}

// int (x in piece) f(x) g(x) dx, integrated in u = log|x|.
QuadResult integrate_piece(const DensityPiece& d, const CFunction& f, std::span<const double> abs_kinks,
                           const QuadOptions& opts) {
  const double s = d.positive_side() ? 1.0 : -1.0;
  const double ulo = d.abs_lo() > 0.0 ? std::log(d.abs_lo()) : -kInf;
  const double uhi = std::isfinite(d.abs_hi()) ? std::log(d.abs_hi()) : kInf;
  std::vector<double> cuts{0.0, d.log_shift};
  for (double k : abs_kinks)
    if (k > 0.0 && std::isfinite(k)) cuts.push_back(std::log(k));
  CFunction w = [&](double u) -> cplx {
    double e = (1.0 - d.q) * u;
    if (d.lambda > 0.0) e -= d.lambda * std::exp(u);
    if (e < -745.0) return {0.0, 0.0};
    double weight = d.coef * std::exp(e);
    if (d.kappa != 0.0) weight *= std::pow(std::abs(u - d.log_shift), -d.kappa);
    if (weight == 0.0) return {0.0, 0.0};
    const cplx v = f(s * std::exp(u)) * weight;
    // |x| overflowed: convergent integrands are negligible out there.
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return {0.0, 0.0};
    return v;
  };
  return integrate_interval(w, ulo, uhi, cuts, opts);
}

QuadResult integrate_stable(const StablePart& sp, const CFunction& f, std::span<const double> abs_kinks,
                            const QuadOptions& opts) {
  std::vector<double> cuts{0.0};
  for (double k : abs_kinks)
    if (k > 0.0 && std::isfinite(k)) cuts.push_back(std::log(k));
  QuadResult total;
  for (double s : {1.0, -1.0}) {
    CFunction w = [&](double u) -> cplx {
      const double e = -sp.p * u;
      if (e < -745.0) return {0.0, 0.0};
      return f(s * std::exp(u)) * (sp.c * std::exp(e));
    };
    QuadOptions o = opts;
    o.abs_tol *= 0.5;
    total += integrate_interval(w, -kInf, kInf, cuts, o);
  }
  return total;
}

// t-values where |g(t) x| crosses one of the levels, for every atom x.
std::vector<double> atom_kinks(const IntegralMap& m, const LevyMeasure& src, std::span<const double> levels) {
  std::vector<double> out;
  for (const Atom& a : src.atoms())
    for (double L : levels)
      for (double sgn : {1.0, -1.0})
        for (double t : m.g_preimages(sgn * L / std::abs(a.x))) out.push_back(t);
  return out;
}

QuadResult integrate_pushforward(const PushforwardPart& pf, const CFunction& f, std::span<const double> abs_kinks,
                                 const QuadOptions& opts) {
  const IntegralMap& m = *pf.map;
  const LevyMeasure& src = *pf.source;
  const QuadOptions inner = opts.tightened(0.1);
  bool divergent = false, bad = false;
  CFunction outer = [&](double t) -> cplx {
    const double g = m.g(t);
    if (g == 0.0) return {0.0, 0.0};
    std::vector<double> k;
    for (double L : abs_kinks) k.push_back(L / std::abs(g));
    const QuadResult r = src.integrate([&](double x) -> cplx { return f(g * x); }, k, inner);
    if (r.divergent()) divergent = true;
    else if (!r.ok()) bad = true;
    return r.value;
  };
  QuadResult r = m.integrate_clock(outer, atom_kinks(m, src, abs_kinks), opts);
  if (divergent) r.status = QuadStatus::divergent;
  else if (bad && r.ok()) r.status = QuadStatus::nonconverged;
  return r;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

// -------------------------------------------------------------- pieces

double DensityPiece::operator()(double x) const {
  const double ax = std::abs(x);
  if (!(x > lo && x < hi)) return 0.0;
  double v = coef * std::pow(ax, -q);
  if (lambda > 0.0) v *= std::exp(-lambda * ax);
  if (kappa != 0.0) v *= std::pow(std::abs(std::log(ax) - log_shift), -kappa);
  return v;
}

double DensityPiece::abs_lo() const { return positive_side() ? lo : -hi; }
double DensityPiece::abs_hi() const { return positive_side() ? hi : -lo; }

double StablePart::sigma() const {
  if (p == 1.0) return kPi * c;
  return 2.0 * c * std::tgamma(1.0 - p) * std::cos(kPi * p / 2.0) / p;
}

cplx lk_kernel(double y, double x) {
  const double th = y * x;
  const double s = std::sin(0.5 * th);
  const double re = -2.0 * s * s;
  double im;
  if (in_ball(x)) {
    if (std::abs(th) < 1e-3) {
      const double t2 = th * th;
      im = th * t2 * (-1.0 / 6.0 + t2 / 120.0);
    } else {
      im = std::sin(th) - th;
    }
  } else {
    im = std::sin(th);
  }
  return {re, im};
}

bool density_moment_finite(const DensityPiece& d, double s, double m, int region) {
  if (region >= 0 && !std::isfinite(d.abs_hi())) {
    const bool ok = d.lambda > 0.0 || d.q - s > 1.0 || (d.q - s == 1.0 && d.kappa - m > 1.0);
    if (!ok) return false;
  }
  if (region <= 0 && d.abs_lo() == 0.0) {
    const bool ok = s - d.q > -1.0 || (s - d.q == -1.0 && d.kappa - m > 1.0);
    if (!ok) return false;
  }
  return true;
}

// ------------------------------------------------------------ LevyMeasure

LevyMeasure LevyMeasure::atomic(std::vector<Atom> atoms) {
  LevyMeasure m;
  for (const Atom& a : atoms) {
    if (!(a.x != 0.0) || !std::isfinite(a.x)) throw InputError("atom location must be finite and nonzero");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) throw InputError("atom mass must be positive");
  }
  m.atoms_ = std::move(atoms);
  return m;
}

LevyMeasure LevyMeasure::density(std::vector<DensityPiece> pieces) {
  LevyMeasure m;
  for (const DensityPiece& d : pieces) {
    if (!(d.lo < d.hi)) throw InputError("density piece needs lo < hi");
    if (d.lo < 0.0 && d.hi > 0.0) throw InputError("density piece must not straddle 0");
    if (!(d.coef > 0.0) || !std::isfinite(d.coef)) throw InputError("density coefficient must be positive");
    if (d.lambda < 0.0) throw InputError("density decay rate must be nonnegative");
    if (d.kappa != 0.0) {
      const double pole = std::exp(d.log_shift);
      if (pole >= d.abs_lo() && pole <= d.abs_hi())
        throw InputError("log factor of a density piece vanishes inside its interval");
    }
  }
  m.densities_ = std::move(pieces);
  return m;
}

LevyMeasure LevyMeasure::stable(double c, double p) {
  if (!(p > 0.0 && p < 2.0)) throw InputError("stable Levy measure needs 0 < p < 2");
  if (!(c > 0.0)) throw InputError("stable Levy measure needs c > 0");
  LevyMeasure m;
  m.stables_.push_back({c, p});
  return m;
}

LevyMeasure LevyMeasure::pushforward(std::shared_ptr<const LevyMeasure> source, std::shared_ptr<const IntegralMap> map) {
  if (!source || !map) throw InputError("pushforward needs a source measure and a map");
  LevyMeasure m;
  if (source->empty()) return m;
  m.pushforwards_.push_back({std::move(source), std::move(map)});
  return m;
}

bool LevyMeasure::empty() const {
  return atoms_.empty() && densities_.empty() && stables_.empty() && pushforwards_.empty();
}

bool LevyMeasure::is_symmetric() const {
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-14 * std::max(std::abs(a), std::abs(b)); };
  {
    std::vector<Atom> pos, neg;
    for (const Atom& a : atoms_) (a.x > 0 ? pos : neg).push_back(a);
    if (pos.size() != neg.size()) return false;
    auto by_abs = [](const Atom& a, const Atom& b) { return std::abs(a.x) < std::abs(b.x); };
    std::sort(pos.begin(), pos.end(), by_abs);
    std::sort(neg.begin(), neg.end(), by_abs);
    for (std::size_t i = 0; i < pos.size(); ++i)
      if (!close(pos[i].x, -neg[i].x) || !close(pos[i].mass, neg[i].mass)) return false;
  }
  for (const DensityPiece& d : densities_) {
    const bool mirrored = std::any_of(densities_.begin(), densities_.end(), [&](const DensityPiece& e) {
      return e.lo == -d.hi && e.hi == -d.lo && e.coef == d.coef && e.q == d.q && e.lambda == d.lambda &&
             e.kappa == d.kappa && e.log_shift == d.log_shift;
    });
    if (!mirrored) return false;
  }
  for (const PushforwardPart& p : pushforwards_)
    if (!p.source->is_symmetric()) return false;
  return true;
}

std::optional<double> LevyMeasure::stable_index() const {
  if (stables_.empty() || !atoms_.empty() || !densities_.empty() || !pushforwards_.empty()) return std::nullopt;
  const double p = stables_.front().p;
  for (const StablePart& s : stables_)
    if (s.p != p) return std::nullopt;
  return p;
}

LevyMeasure LevyMeasure::operator+(const LevyMeasure& o) const {
  LevyMeasure m = *this;
  m.atoms_.insert(m.atoms_.end(), o.atoms_.begin(), o.atoms_.end());
  m.densities_.insert(m.densities_.end(), o.densities_.begin(), o.densities_.end());
  for (const StablePart& s : o.stables_) {
    auto it = std::find_if(m.stables_.begin(), m.stables_.end(), [&](const StablePart& e) { return e.p == s.p; });
    if (it != m.stables_.end()) it->c += s.c;
    else m.stables_.push_back(s);
  }
  m.pushforwards_.insert(m.pushforwards_.end(), o.pushforwards_.begin(), o.pushforwards_.end());
  return m;
}

LevyMeasure LevyMeasure::scaled(double c) const {
  if (!(c >= 0.0)) throw InputError("measure scale must be nonnegative");
  if (c == 0.0) return {};
  LevyMeasure m = *this;
  for (Atom& a : m.atoms_) a.mass *= c;
  for (DensityPiece& d : m.densities_) d.coef *= c;
  for (StablePart& s : m.stables_) s.c *= c;
  for (PushforwardPart& p : m.pushforwards_)
    p.map = std::make_shared<const IntegralMap>(p.map->with_r(p.map->r().scaled(c)));
  return m;
}

LevyMeasure LevyMeasure::dilated(double u) const {
  if (u == 0.0) return {};
  LevyMeasure m = *this;
  const double au = std::abs(u);
  for (Atom& a : m.atoms_) a.x *= u;
  for (DensityPiece& d : m.densities_) {
    d.coef *= std::pow(au, d.q - 1.0);
    d.lambda /= au;
    d.log_shift += std::log(au);
    const double lo = d.lo * u, hi = d.hi * u;
    d.lo = std::min(lo, hi);
    d.hi = std::max(lo, hi);
    if (d.lo == 0.0) d.lo = 0.0;  // normalize -0
    if (d.hi == 0.0) d.hi = 0.0;
  }
  for (StablePart& s : m.stables_) s.c *= std::pow(au, s.p);
  for (PushforwardPart& p : m.pushforwards_)
    p.map = std::make_shared<const IntegralMap>(p.map->with_h(p.map->h().scaled(u)));
  return m;
}

QuadResult LevyMeasure::integrate(const CFunction& f, std::span<const double> abs_kinks, const QuadOptions& opts) const {
  QuadResult total;
  for (const Atom& a : atoms_) total.value += a.mass * f(a.x);
  total.evaluations = static_cast<long>(atoms_.size());
  const std::size_t parts = densities_.size() + stables_.size() + pushforwards_.size();
  if (parts == 0) return total;
  QuadOptions o = opts;
  o.abs_tol /= static_cast<double>(parts);
  for (const DensityPiece& d : densities_) {
    total += integrate_piece(d, f, abs_kinks, o);
    if (total.divergent()) return total;
  }
  for (const StablePart& s : stables_) {
    total += integrate_stable(s, f, abs_kinks, o);
    if (total.divergent()) return total;
  }
  for (const PushforwardPart& p : pushforwards_) {
    total += integrate_pushforward(p, f, abs_kinks, o);
    if (total.divergent()) return total;
  }
  return total;
}

namespace {

cplx piece_lk(const DensityPiece& d, double y, const QuadOptions& opts) {
  const bool oscillatory = !std::isfinite(d.abs_hi()) && d.lambda < 0.1 * std::abs(y);
  if (!oscillatory) {
    QuadResult r = integrate_piece(d, [y](double x) { return lk_kernel(y, x); }, {}, opts);
    if (!r.ok()) throw NonConvergenceError("Levy exponent of a density piece", r.abs_error);
    return r.value;
  }
  // Beyond x0 the compensator is absent: split e^{iyx} g from -g and sum the
  // oscillatory part over half periods.
  const double x0 = std::max({d.abs_lo(), 1.0, 10.0 * kPi / std::abs(y)});
  DensityPiece near = d, far = d;
  QuadOptions o = opts;
  o.abs_tol *= 0.25;
  cplx total{0.0, 0.0};
  if (x0 > d.abs_lo()) {
    if (d.positive_side()) near.hi = x0;
    else near.lo = -x0;
    QuadResult r = integrate_piece(near, [y](double x) { return lk_kernel(y, x); }, {}, o);
    if (!r.ok()) throw NonConvergenceError("Levy exponent of a density piece", r.abs_error);
    total += r.value;
  }
  if (d.positive_side()) far.lo = x0;
  else far.hi = -x0;
  QuadResult m = integrate_piece(far, [](double) -> cplx { return 1.0; }, {}, o);
  if (!m.ok()) throw NonConvergenceError("mass of a density tail", m.abs_error);
  const double ys = d.positive_side() ? y : -y;
  QuadResult osc = integrate_fourier_tail([&](double x) { return d(d.positive_side() ? x : -x); }, ys, x0, o);
  if (!osc.ok()) throw NonConvergenceError("oscillatory tail of a Levy exponent", osc.abs_error);
  return total + osc.value - m.value;
}

}  // namespace

cplx LevyMeasure::lk_integral(double y, const QuadOptions& opts) const {
  if (y == 0.0) return {0.0, 0.0};
  cplx total{0.0, 0.0};
  for (const Atom& a : atoms_) total += a.mass * lk_kernel(y, a.x);
  for (const StablePart& s : stables_) total -= s.sigma() * std::pow(std::abs(y), s.p);
  for (const DensityPiece& d : densities_) total += piece_lk(d, y, opts);
  for (const PushforwardPart& p : pushforwards_) {
    const IntegralMap& m = *p.map;
    const LevyMeasure& src = *p.source;
    const QuadOptions inner = opts.tightened(0.1);
    CFunction f = [&](double t) -> cplx {
      const double g = m.g(t);
      if (g == 0.0) return {0.0, 0.0};
      return src.lk_integral(y * g, inner) - cplx(0.0, y * src.dilation_shift(g, inner));
    };
    const double one = 1.0;
    QuadResult r = m.integrate_clock(f, atom_kinks(m, src, std::span<const double>(&one, 1)), opts);
    if (!r.ok()) {
      if (r.divergent()) throw DomainError("pushforward Levy exponent diverges", y);
      throw NonConvergenceError("pushforward Levy exponent", r.abs_error);
    }
    total += r.value;
  }
  return total;
}

double LevyMeasure::dilation_shift(double u, const QuadOptions& opts) const {
  if (u == 1.0 || u == -1.0 || u == 0.0) return 0.0;
  double total = 0.0;
  for (const Atom& a : atoms_) total += u * a.mass * a.x * ((in_ball(u * a.x) ? 1.0 : 0.0) - (in_ball(a.x) ? 1.0 : 0.0));
  if (densities_.empty() && pushforwards_.empty()) return total;
  LevyMeasure rest;
  rest.densities_ = densities_;
  rest.pushforwards_ = pushforwards_;
  const double levels[2] = {1.0, 1.0 / std::abs(u)};
  CFunction f = [u](double x) -> cplx {
    return x * ((in_ball(u * x) ? 1.0 : 0.0) - (in_ball(x) ? 1.0 : 0.0));
  };
  QuadResult r = rest.integrate(f, levels, opts);
  if (!r.ok()) throw NonConvergenceError("dilation shift", r.abs_error);
  return total + u * r.real();
}

Functional LevyMeasure::mass() const {
  double total = 0.0;
  for (const Atom& a : atoms_) total += a.mass * std::min(1.0, a.x * a.x);
  for (const StablePart& s : stables_) total += 2.0 * s.c * (1.0 / (2.0 - s.p) + 1.0 / s.p);
  for (const DensityPiece& d : densities_)
    if (!density_moment_finite(d, 2.0, 0.0, -1) || !density_moment_finite(d, 0.0, 0.0, 1)) return {false, kInf};
  LevyMeasure rest;
  rest.densities_ = densities_;
  rest.pushforwards_ = pushforwards_;
  if (rest.empty()) return {true, total};
  const double one = 1.0;
  Functional f = from_quad(rest.integrate([](double x) -> cplx { return std::min(1.0, x * x); },
                                          std::span<const double>(&one, 1)),
                           "Levy measure mass");
  if (!f.finite) return f;
  return {true, total + f.value};
}

Functional LevyMeasure::log_moment(double m) const {
  double total = 0.0;
  for (const Atom& a : atoms_)
    if (std::abs(a.x) > 1.0) total += a.mass * std::pow(std::log(std::abs(a.x)), m);
  for (const StablePart& s : stables_) total += 2.0 * s.c * std::tgamma(m + 1.0) / std::pow(s.p, m + 1.0);
  for (const DensityPiece& d : densities_)
    if (!density_moment_finite(d, 0.0, m, 1)) return {false, kInf};
  LevyMeasure rest;
  rest.densities_ = densities_;
  rest.pushforwards_ = pushforwards_;
  if (rest.empty()) return {true, total};
  const double one = 1.0;
  Functional f = from_quad(rest.integrate(
                               [m](double x) -> cplx {
                                 const double ax = std::abs(x);
                                 return ax > 1.0 ? std::pow(std::log(ax), m) : 0.0;
                               },
                               std::span<const double>(&one, 1)),
                           "log moment");
  if (!f.finite) return f;
  return {true, total + f.value};
}

Functional LevyMeasure::second_moment() const {
  if (!stables_.empty()) return {false, kInf};
  double total = 0.0;
  for (const Atom& a : atoms_) total += a.mass * a.x * a.x;
  for (const DensityPiece& d : densities_)
    if (!density_moment_finite(d, 2.0, 0.0, 0)) return {false, kInf};
  LevyMeasure rest;
  rest.densities_ = densities_;
  rest.pushforwards_ = pushforwards_;
  if (rest.empty()) return {true, total};
  Functional f = from_quad(rest.integrate([](double x) -> cplx { return x * x; }), "second moment");
  if (!f.finite) return f;
  return {true, total + f.value};
}

Functional LevyMeasure::first_abs_moment_outside() const { return power_moment_outside(1.0); }

Functional LevyMeasure::power_moment_outside(double p) const {
  double total = 0.0;
  for (const StablePart& s : stables_) {
    if (s.p <= p) return {false, kInf};
    total += 2.0 * s.c / (s.p - p);
  }
  for (const Atom& a : atoms_)
    if (std::abs(a.x) > 1.0) total += a.mass * std::pow(std::abs(a.x), p);
  for (const DensityPiece& d : densities_)
    if (!density_moment_finite(d, p, 0.0, 1)) return {false, kInf};
  LevyMeasure rest;
  rest.densities_ = densities_;
  rest.pushforwards_ = pushforwards_;
  if (rest.empty()) return {true, total};
  const double one = 1.0;
  Functional f = from_quad(rest.integrate(
                               [p](double x) -> cplx { return std::abs(x) > 1.0 ? std::pow(std::abs(x), p) : 0.0; },
                               std::span<const double>(&one, 1)),
                           "power moment");
  if (!f.finite) return f;
  return {true, total + f.value};
}

double LevyMeasure::tail(double v) const {
  if (v == 0.0) throw InputError("tail needs v != 0");
  auto beyond = [v](double x) { return v > 0.0 ? x > v : x < v; };
  double total = 0.0;
  for (const Atom& a : atoms_)
    if (beyond(a.x)) total += a.mass;
  for (const StablePart& s : stables_) total += s.c * std::pow(std::abs(v), -s.p) / s.p;
  for (const DensityPiece& d : densities_) {
    if (d.positive_side() != (v > 0.0)) continue;
    const double av = std::abs(v);
    if (av >= d.abs_hi()) continue;
    DensityPiece part = d;
    if (av > d.abs_lo()) {
      if (d.positive_side()) part.lo = av;
      else part.hi = -av;
    }
    const QuadResult r = integrate_piece(part, [](double) -> cplx { return 1.0; }, {}, {});
    if (r.divergent()) return kInf;
    check_finite(r, "density tail");
    total += r.real();
  }
  for (const PushforwardPart& p : pushforwards_) {
    const IntegralMap& m = *p.map;
    const LevyMeasure& src = *p.source;
    for (const Atom& a : src.atoms()) total += a.mass * level_set_measure(m, v / a.x);
    if (src.is_atomic()) continue;
    LevyMeasure rest = src;
    rest.atoms_.clear();
    bool infinite = false;
    CFunction f = [&](double t) -> cplx {
      const double g = m.g(t);
      if (g == 0.0) return {0.0, 0.0};
      const double inner = rest.tail(v / g);
      if (!std::isfinite(inner)) infinite = true;
      return std::isfinite(inner) ? inner : 0.0;
    };
    const QuadResult r = m.integrate_clock(f);
    if (infinite || r.divergent()) return kInf;
    check_finite(r, "pushforward tail");
    total += r.real();
  }
  return total;
}

std::string LevyMeasure::describe() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  auto sep = [&] {
    if (!first) os << " + ";
    first = false;
  };
  for (const Atom& a : atoms_) {
    sep();
    os << num(a.mass) << " delta(" << num(a.x) << ")";
  }
  for (const DensityPiece& d : densities_) {
    sep();
    os << num(d.coef) << "|x|^-" << num(d.q);
    if (d.lambda > 0) os << " e^-" << num(d.lambda) << "|x|";
    if (d.kappa != 0) os << " |log|x|-" << num(d.log_shift) << "|^-" << num(d.kappa);
    os << " on (" << num(d.lo) << "," << num(d.hi) << ")";
  }
  for (const StablePart& s : stables_) {
    sep();
    os << num(s.c) << "|x|^-(1+" << num(s.p) << ")";
  }
  for (const PushforwardPart& p : pushforwards_) {
    sep();
    os << "push(" << p.source->describe() << " by " << p.map->describe() << ")";
  }
  os << "}";
  return os.str();
}

// ------------------------------------------------------------- triples

LevyTriple::LevyTriple(double z, double r, LevyMeasure m) : shift(z), gaussian_var(r), levy(std::move(m)) {}

void LevyTriple::validate() const {
  if (!std::isfinite(shift)) throw InputError("shift must be finite");
  if (!(gaussian_var >= 0.0) || !std::isfinite(gaussian_var)) throw InputError("gaussian variance must be >= 0");
  if (!levy.mass().finite) throw InputError("not a Levy measure: int min(1, x^2) M(dx) diverges");
}

std::string LevyTriple::describe() const {
  return "[" + num(shift) + ", " + num(gaussian_var) + ", " + levy.describe() + "]";
}

cplx levy_exponent(const LevyTriple& t, double y, const QuadOptions& opts) {
  return cplx(0.0, y * t.shift) - 0.5 * t.gaussian_var * y * y + t.levy.lk_integral(y, opts);
}

ExponentFn exponent_fn(const LevyTriple& t, const QuadOptions& opts) {
  auto shared = std::make_shared<const LevyTriple>(t);
  ExponentFn f;
  f.eval = [shared, opts](double y) { return levy_exponent(*shared, y, opts); };
  f.is_symmetric = t.is_symmetric();
  if (t.shift == 0.0) {
    if (t.levy.empty() && t.gaussian_var > 0.0) f.stable_index = 2.0;
    else if (t.gaussian_var == 0.0) f.stable_index = t.levy.stable_index();
  }
  return f;
}

ExponentFn stable_exponent(double sigma, double p) {
  if (!(p > 0.0 && p <= 2.0) || !(sigma >= 0.0)) throw InputError("stable exponent needs p in (0,2], sigma >= 0");
  ExponentFn f;
  f.eval = [sigma, p](double y) -> cplx { return -sigma * std::pow(std::abs(y), p); };
  f.is_symmetric = true;
  f.stable_index = p;
  return f;
}

LevyTriple convolve(const LevyTriple& a, const LevyTriple& b) {
  return LevyTriple(a.shift + b.shift, a.gaussian_var + b.gaussian_var, a.levy + b.levy);
}

LevyTriple convolution_power(const LevyTriple& t, double c) {
  if (!(c > 0.0)) throw InputError("convolution power needs c > 0");
  return LevyTriple(c * t.shift, c * t.gaussian_var, t.levy.scaled(c));
}

LevyTriple dilate(const LevyTriple& t, double u, const QuadOptions& opts) {
  if (u == 0.0) throw InputError("dilation needs u != 0");
  return LevyTriple(u * t.shift + t.levy.dilation_shift(u, opts), u * u * t.gaussian_var, t.levy.dilated(u));
}

LevyTriple reflect(const LevyTriple& t) { return dilate(t, -1.0); }

Functional log_moment_finite(const LevyTriple& t) { return t.levy.log_moment(1.0); }

}  // namespace levi
