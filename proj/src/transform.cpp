#include "levi/transform.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "levi/errors.hpp"

namespace levi {

namespace {

bool in_ball(double x) { return std::abs(x) <= 1.0; }

// Left-open pieces of (a, b] cut at the zeros of |g| - level.
std::vector<double> level_cuts(const IntegralMap& m, double level) {
  std::vector<double> cuts{m.interval().a};
  for (double s : {1.0, -1.0})
    for (double t : m.g_preimages(s * level)) cuts.push_back(t);
  for (double t : m.h_zeros()) cuts.push_back(t);
  cuts.push_back(m.interval().b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

double sample_point(double lo, double hi) {
  if (!std::isfinite(hi)) return lo > 0.0 ? 2.0 * lo + 1.0 : lo + 1.0;
  return 0.5 * (lo + hi);
}

// int_{(lo, hi]} g drho.
QuadResult clock_integral_of_g(const IntegralMap& m, double lo, double hi, const QuadOptions& opts) {
  CFunction f = [&](double t) -> cplx { return m.g(t); };
  return m.r().integrate(f, Interval(lo, hi), m.h_zeros(), opts);
}

DomainCheck make_check(std::string id, double value, bool passed, DomainCheck::Role role, std::string note) {
  DomainCheck c;
  c.id = std::move(id);
  c.value = value;
  c.passed = passed;
  c.role = role;
  c.note = std::move(note);
  return c;
}

LevyMeasure non_stable_part(const LevyMeasure& m) {
  LevyMeasure out = LevyMeasure::atomic(m.atoms()) + LevyMeasure::density(m.densities());
  for (const PushforwardPart& p : m.pushforwards()) out = out + LevyMeasure::pushforward(p.source, p.map);
  return out;
}

}  // namespace

std::vector<double> default_y_grid() { return {-5, -2, -1, -0.5, -0.1, 0.1, 0.5, 1, 2, 5}; }

ExponentFn transform_exponent(const IntegralMap& m, const ExponentFn& phi, const QuadOptions& opts) {
  auto map = std::make_shared<const IntegralMap>(m);
  ExponentFn out;
  out.is_symmetric = phi.is_symmetric;
  out.stable_index = phi.stable_index;
  if (classify(m) == MapClass::zero) {
    out.eval = [](double) { return cplx{0.0, 0.0}; };
    return out;
  }
  auto inner = phi.eval;
  out.eval = [map, inner, opts](double y) -> cplx {
    if (y == 0.0) return {0.0, 0.0};
    CFunction f = [&](double t) -> cplx {
      const double g = map->g(t);
      return g == 0.0 ? cplx{0.0, 0.0} : inner(g * y);
    };
    const QuadResult r = map->integrate_clock(f, {}, opts);
    if (r.divergent()) throw DomainError("transformed exponent diverges for " + map->describe(), y);
    if (!r.ok()) throw NonConvergenceError("transformed exponent at y = " + std::to_string(y), r.abs_error);
    return r.value;
  };
  return out;
}

Functional compensator_shift(const IntegralMap& m, const LevyMeasure& levy, const QuadOptions& opts) {
  double total = 0.0;
  for (const Atom& a : levy.atoms()) {
    const std::vector<double> cuts = level_cuts(m, 1.0 / std::abs(a.x));
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double t = sample_point(cuts[i], cuts[i + 1]);
      const double ind = (in_ball(m.g(t) * a.x) ? 1.0 : 0.0) - (in_ball(a.x) ? 1.0 : 0.0);
      if (ind == 0.0) continue;
      const QuadResult r = clock_integral_of_g(m, cuts[i], cuts[i + 1], opts);
      if (r.divergent()) return {false, kInf};
      if (!r.ok()) throw NonConvergenceError("compensator shift", r.abs_error);
      total += a.mass * a.x * ind * r.real();
    }
  }
  LevyMeasure rest = LevyMeasure::density(levy.densities());
  for (const PushforwardPart& p : levy.pushforwards()) rest = rest + LevyMeasure::pushforward(p.source, p.map);
  if (rest.empty()) return {true, total};
  const QuadOptions inner = opts.tightened(0.1);
  bool bad = false;
  CFunction f = [&](double t) -> cplx {
    const double g = m.g(t);
    if (g == 0.0) return {0.0, 0.0};
    try {
      return rest.dilation_shift(g, inner);
    } catch (const NonConvergenceError&) {
      bad = true;
      return {0.0, 0.0};
    }
  };
  const QuadResult r = m.integrate_clock(f, {}, opts);
  if (r.divergent()) return {false, kInf};
  if (!r.ok() || bad) throw NonConvergenceError("compensator shift", r.abs_error);
  return {true, total + r.real()};
}

LevyTriple transform_triple(const IntegralMap& m, const LevyTriple& t, const QuadOptions& opts) {
  const MapClass cls = classify(m);
  if (cls == MapClass::zero) return LevyTriple(0.0, 0.0);
  if (cls == MapClass::identity) return t;
  if (auto u = m.r().dirac_point()) {
    const double g = m.g(*u);
    if (g == 0.0) return LevyTriple(0.0, 0.0);
    return dilate(t, g);
  }
  const DomainReport rep = domain_check(m, t);
  if (!rep.admitted) {
    std::string failed;
    for (const DomainCheck& c : rep.checks)
      if (!c.passed && c.role != DomainCheck::Role::sufficient) failed += (failed.empty() ? "" : ", ") + c.id;
    throw DomainError("law is outside the domain of " + m.describe() + " (failed: " + failed + ")");
  }

  LevyTriple out;
  if (t.gaussian_var != 0.0) out.gaussian_var = t.gaussian_var * clock_functional(m, [](double x) { return x * x; }, opts);
  if (t.shift != 0.0) {
    const QuadResult r = m.integrate_clock([&](double s) -> cplx { return m.g(s); }, {}, opts);
    if (!r.ok()) throw DomainError("int g drho diverges for a law with nonzero shift");
    out.shift = t.shift * r.real();
  }
  if (!t.levy.empty()) {
    const Functional comp = compensator_shift(m, t.levy, opts);
    if (!comp.finite) throw DomainError("compensator shift diverges for " + m.describe());
    out.shift += comp.value;

    LevyMeasure image;
    for (const StablePart& s : t.levy.stables()) {
      const double c = p_functional(m, s.p, opts);
      if (!std::isfinite(c)) throw DomainError("stable part is not preserved: int |h|^p drho = inf");
      image = image + LevyMeasure::stable(s.c * c, s.p);
    }
    LevyMeasure rest = non_stable_part(t.levy);
    if (!rest.empty()) {
      LevyMeasure push = LevyMeasure::pushforward(std::make_shared<const LevyMeasure>(rest),
                                                  std::make_shared<const IntegralMap>(m));
      if (!push.mass().finite) throw DomainError("pushforward fails the Levy measure mass test");
      image = image + push;
    }
    out.levy = image;
  }
  return out;
}

const DomainCheck* DomainReport::find(const std::string& id) const {
  for (const DomainCheck& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

std::string to_string(DomainCheck::Role r) {
  switch (r) {
    case DomainCheck::Role::sufficient: return "sufficient";
    case DomainCheck::Role::necessary: return "necessary";
    case DomainCheck::Role::criterion: return "criterion";
  }
  return "?";
}

bool is_class_l_type(const IntegralMap& m) {
  using SK = SpaceTransform::Kind;
  using TK = TimeChange::Kind;
  const SK hk = m.h().kind();
  const TK rk = m.r().kind();
  if (hk == SK::exp && rk == TK::linear && !m.interval().bounded()) return true;
  if ((hk == SK::linear || (hk == SK::power && m.h().param() > 0.0)) && rk == TK::neg_log && m.interval().a == 0.0)
    return true;
  return false;
}

DomainReport domain_check(const IntegralMap& m, const LevyTriple& t) {
  using Role = DomainCheck::Role;
  DomainReport rep;
  const MapClass cls = classify(m);
  if (cls != MapClass::generic || m.r().dirac_point()) {
    rep.admitted = true;
    rep.shortcut_used = "trivial-map";
    rep.checks.push_back(make_check("prop3_finite_clock", m.clock_mass(), true, Role::sufficient, to_string(cls)));
    return rep;
  }

  // Finite clock and bounded h admit every law.
  const double mass = m.clock_mass();
  const auto [hlo, hhi] = m.h().range(m.interval());
  const bool bounded_h = std::isfinite(hlo) && std::isfinite(hhi);
  const bool finite_clock = std::isfinite(mass) && bounded_h;
  rep.checks.push_back(make_check("prop3_finite_clock", mass, finite_clock, Role::sufficient,
                                  bounded_h ? "clock mass" : "h unbounded on the interval"));
  if (finite_clock) {
    rep.admitted = true;
    rep.shortcut_used = "finite-clock";
    return rep;
  }

  const double l1 = p_functional(m, 1.0);
  const double l2 = p_functional(m, 2.0);
  const LevyMeasure& M = t.levy;

  // Symmetric stable laws: int |h|^p drho decides.
  std::optional<double> p;
  if (t.shift == 0.0) {
    if (M.empty() && t.gaussian_var > 0.0) p = 2.0;
    else if (t.gaussian_var == 0.0) p = M.stable_index();
  }
  if (p) {
    const double c = p_functional(m, *p);
    rep.checks.push_back(make_check("prop6_stable", c, std::isfinite(c), Role::criterion, "int |h|^p |dr|"));
    rep.admitted = std::isfinite(c);
    if (rep.admitted) rep.shortcut_used = "p-stable";
    return rep;
  }

  // Finite second moment: int |h| and int h^2 finite suffice.
  const Functional m2 = M.second_moment();
  if (m2.finite) {
    const bool ok = std::isfinite(l1) && std::isfinite(l2);
    rep.checks.push_back(make_check("prop5_id2", std::max(l1, l2), ok, Role::sufficient,
                                    "second moment " + std::to_string(m2.value)));
    if (ok) {
      rep.admitted = true;
      rep.shortcut_used = "second-moment";
      return rep;
    }
  }

  bool all = true;
  if (t.shift != 0.0) {
    rep.checks.push_back(make_check("prop4_shift", l1, std::isfinite(l1), Role::criterion, "int |h| |dr|"));
    all = all && std::isfinite(l1);
  }
  if (t.gaussian_var != 0.0) {
    rep.checks.push_back(make_check("prop4_gauss", l2, std::isfinite(l2), Role::criterion, "int h^2 |dr|"));
    all = all && std::isfinite(l2);
  }
  if (!M.empty()) {
    const double nec = clock_functional(m, [](double x) { return std::min(1.0, x * x); });
    rep.checks.push_back(make_check("cor2_necessary", nec, std::isfinite(nec), Role::necessary, "int (1 ^ h^2) |dr|"));
    all = all && std::isfinite(nec);

    if (is_class_l_type(m)) {
      const Functional lm = M.log_moment();
      rep.checks.push_back(make_check("example1_logmoment", lm.value, lm.finite, Role::criterion,
                                      "int_{|x|>1} log|x| M(dx)"));
      all = all && lm.finite;
    }

    if (all) {
      // Double integral int int (1 ^ h^2 x^2) M(dx) |dr|, then the shift.
      double value = 0.0;
      bool finite = true;
      for (const StablePart& s : M.stables()) {
        const double c = p_functional(m, s.p);
        finite = finite && std::isfinite(c);
        value += std::isfinite(c) ? c : kInf;
      }
      LevyMeasure rest = non_stable_part(M);
      if (finite && !rest.empty()) {
        const LevyMeasure push = LevyMeasure::pushforward(std::make_shared<const LevyMeasure>(rest),
                                                          std::make_shared<const IntegralMap>(m));
        const Functional f = push.mass();
        finite = f.finite;
        value += f.value;
      }
      rep.checks.push_back(make_check("cor4_iii", value, finite, Role::criterion,
                                      "int int (1 ^ h^2 x^2) M(dx) |dr|"));
      all = all && finite;
      if (finite) {
        const Functional comp = compensator_shift(m, M);
        rep.checks.push_back(make_check("cor4_compensator", comp.value, comp.finite, Role::criterion,
                                        "int g int x (1_B(gx) - 1_B(x)) M(dx) drho"));
        all = all && comp.finite;
      }
    }
  }
  rep.admitted = all;
  return rep;
}

RetrievalReport retrieval_limit_check(const IntegralMap& m, const LevyTriple& t, double c,
                                      const std::vector<double>& xs, const std::vector<double>& y_grid) {
  const double hc = m.h()(c);
  if (hc == 0.0 || !std::isfinite(hc)) throw InputError("retrieval limit needs h(c) != 0");
  if (m.r().dirac_point()) throw InputError("retrieval limit needs a differentiable clock");
  const double rc = m.r().density(c);
  if (!(rc > 0.0) || !std::isfinite(rc)) throw InputError("retrieval limit needs r'(c) != 0");
  const ExponentFn phi = exponent_fn(t);
  RetrievalReport rep;
  for (double x : xs) {
    if (!(x > c)) throw InputError("retrieval limit needs x > c");
    double err = 0.0;
    for (double y : y_grid) {
      CFunction f = [&](double s) -> cplx { return phi(m.h()(s) / hc * y) * (m.r().density(s) / rc); };
      QuadOptions o;
      o.abs_tol = 1e-13;
      o.rel_tol = 1e-12;
      const QuadResult q = integrate_finite(f, c, x, o);
      if (!q.ok()) throw NonConvergenceError("retrieval average", q.abs_error);
      err = std::max(err, std::abs(q.value / (x - c) - phi(y)));
    }
    rep.rows.push_back({x - c, err});
  }
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].error < rep.rows[i - 1].error) || !(rep.rows[i].dx < rep.rows[i - 1].dx)) rep.monotone = false;
  const bool all_zero = std::all_of(rep.rows.begin(), rep.rows.end(), [](const RetrievalRow& r) { return r.error < 1e-14; });
  rep.exact = all_zero;
  if (all_zero) {
    rep.order = kInf;
    return rep;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const RetrievalRow& r : rep.rows) {
    if (r.error <= 0.0) continue;
    const double lx = std::log(r.dx), ly = std::log(r.error);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  rep.order = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  return rep;
}

}  // namespace levi
