#include <cmath>
#include <sstream>

#include "levi/analysis.hpp"
#include "levi/compose.hpp"
#include "levi/errors.hpp"
#include "levi/transform.hpp"

namespace levi {
namespace {

IntegralMap l_map(int m) {
  return IntegralMap(SpaceTransform::exp_decay(), TimeChange::power(m, 1.0 / std::tgamma(m + 1.0)), Interval(0, kInf));
}
IntegralMap e_map() { return IntegralMap(SpaceTransform::linear(), TimeChange::one_minus_exp(), Interval(0, kInf)); }
IntegralMap thorin_map() { return compose({l_map(1), e_map()}); }

std::string fmt(double x) {
  std::ostringstream o;
  o << x;
  return o.str();
}

int positive_int(double m) {
  const long k = std::lround(m);
  if (k < 1 || std::abs(m - k) > 1e-12) throw InputError("class order must be an integer >= 1");
  return static_cast<int>(k);
}

// Same |g| image of rho and same sign.
bool same_image(const IntegralMap& x, const IntegralMap& y) {
  try {
    const ImageMeasure a({x}), b({y});
    if (a.sign() != b.sign() || !(a.support() == b.support())) return false;
    for (double w : {1e-3, 0.02, 0.1, 0.3, 0.6, 0.9, 2.0, 7.0}) {
      if (!a.support().interior(w)) continue;
      const double ta = a.tail(w), tb = b.tail(w);
      if (std::abs(ta - tb) > 1e-8 * std::max(1.0, std::abs(tb))) return false;
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

// Sub-maps whose ranges lie inside the class, with their domains.
std::vector<std::pair<IntegralMap, std::optional<ClassTag>>> known_generators(const ClassTag& tag) {
  std::vector<std::pair<IntegralMap, std::optional<ClassTag>>> out;
  const ClassTag id_log{ClassId::ID_log, 1.0};
  switch (tag.id) {
    case ClassId::L:
      for (int k = 1; k <= 3; ++k) out.emplace_back(l_map(k), ClassTag{ClassId::ID_log_m, double(k)});
      out.emplace_back(thorin_map(), id_log);
      break;
    case ClassId::L_m:
      for (int k = positive_int(tag.param); k <= std::max(3, positive_int(tag.param)); ++k)
        out.emplace_back(l_map(k), ClassTag{ClassId::ID_log_m, double(k)});
      break;
    case ClassId::E:
      out.emplace_back(e_map(), std::nullopt);
      out.emplace_back(thorin_map(), id_log);
      break;
    case ClassId::Thorin: out.emplace_back(thorin_map(), id_log); break;
    case ClassId::U_beta: out.emplace_back(*tag.defining_map(), tag.domain()); break;
    default: break;
  }
  return out;
}

MembershipReport moment_membership(const ClassTag& tag, const LevyTriple& t) {
  MembershipReport r;
  r.tag = tag.name();
  r.criterion = "moment";
  Functional f;
  switch (tag.id) {
    case ClassId::ID_log:
      f = t.levy.log_moment(1.0);
      r.note = "int_{|x|>1} log|x| M(dx)";
      break;
    case ClassId::ID_log_m:
      f = t.levy.log_moment(tag.param);
      r.note = "int_{|x|>1} (log|x|)^m M(dx)";
      break;
    case ClassId::ID_2:
      f = t.levy.power_moment_outside(2.0);
      r.note = "int_{|x|>1} x^2 M(dx)";
      break;
    case ClassId::ID_beta:
      if (tag.param <= -1.0 && !t.is_symmetric())
        throw UnsupportedError("ID_beta for beta <= -1 is decided only for symmetric laws");
      f = t.levy.power_moment_outside(-tag.param);
      r.note = "int_{|x|>1} |x|^(-beta) M(dx)";
      break;
    default: throw InputError("not a moment class");
  }
  r.member = f.finite;
  r.value = f.value;
  return r;
}

}  // namespace

std::string ClassTag::name() const {
  switch (id) {
    case ClassId::L: return "L";
    case ClassId::L_m: return "L_" + fmt(param);
    case ClassId::U_beta: return "U_" + fmt(param);
    case ClassId::Thorin: return "Thorin";
    case ClassId::E: return "E";
    case ClassId::ID_log: return "ID_log";
    case ClassId::ID_log_m: return "ID_log^" + fmt(param);
    case ClassId::ID_beta: return "ID_beta(" + fmt(param) + ")";
    case ClassId::ID_2: return "ID_2";
  }
  return "?";
}

ClassTag ClassTag::parse(const std::string& s) {
  auto num = [&](std::size_t from, std::size_t drop_tail = 0) {
    const std::string body = s.substr(from, s.size() - from - drop_tail);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(body, &used);
    } catch (const std::exception&) {
      throw InputError("bad class tag: " + s);
    }
    if (used != body.size()) throw InputError("bad class tag: " + s);
    return v;
  };
  if (s == "L") return {ClassId::L, 1.0};
  if (s == "T" || s == "Thorin") return {ClassId::Thorin, 0.0};
  if (s == "E") return {ClassId::E, 0.0};
  if (s == "ID_log") return {ClassId::ID_log, 1.0};
  if (s == "ID_2") return {ClassId::ID_2, 2.0};
  if (s.rfind("ID_log^", 0) == 0) return {ClassId::ID_log_m, static_cast<double>(positive_int(num(7)))};
  if (s.rfind("ID_beta(", 0) == 0 && s.back() == ')') {
    const double b = num(8, 1);
    if (!(b > -2.0 && b < 0.0)) throw InputError("ID_beta needs -2 < beta < 0");
    return {ClassId::ID_beta, b};
  }
  if (s.rfind("L_", 0) == 0) return {ClassId::L_m, static_cast<double>(positive_int(num(2)))};
  if (s.rfind("U_", 0) == 0) {
    const double b = num(2);
    if (!(b > -2.0)) throw InputError("U_beta needs beta > -2");
    return {ClassId::U_beta, b};
  }
  throw InputError("unknown class tag: " + s);
}

std::optional<IntegralMap> ClassTag::defining_map() const {
  switch (id) {
    case ClassId::L: return l_map(1);
    case ClassId::L_m: return l_map(positive_int(param));
    case ClassId::U_beta:
      if (param == 0.0) return l_map(1);
      return IntegralMap(SpaceTransform::linear(), TimeChange::power(param), Interval(0, 1));
    case ClassId::Thorin: return thorin_map();
    case ClassId::E: return e_map();
    default: return std::nullopt;
  }
}

std::optional<ClassTag> ClassTag::domain() const {
  switch (id) {
    case ClassId::L:
    case ClassId::Thorin: return ClassTag{ClassId::ID_log, 1.0};
    case ClassId::L_m: return ClassTag{ClassId::ID_log_m, param};
    case ClassId::U_beta:
      if (param == 0.0) return ClassTag{ClassId::ID_log, 1.0};
      if (param < 0.0) return ClassTag{ClassId::ID_beta, param};
      return std::nullopt;
    default: return std::nullopt;
  }
}

MembershipReport class_membership(const ClassTag& tag, const LevyTriple& t) {
  t.validate();
  const std::optional<IntegralMap> map = tag.defining_map();
  if (!map) return moment_membership(tag, t);

  MembershipReport r;
  r.tag = tag.name();
  const LevyMeasure& M = t.levy;
  if (M.empty()) {
    r.member = true;
    r.criterion = "gaussian";
    r.note = "Gaussian laws are images of Gaussian laws";
    return r;
  }
  if (M.is_atomic()) {
    r.member = false;
    r.criterion = "atomic";
    r.note = "images under this map have absolutely continuous Levy measures";
    return r;
  }
  if (auto p = M.stable_index(); p && t.shift == 0.0 && t.gaussian_var == 0.0) {
    r.value = fixed_point_constant(*map, *p);
    r.member = std::isfinite(r.value);
    r.criterion = "stable";
    r.note = "stable law is the image of its own convolution root when int |h|^p |dr| < inf";
    return r;
  }
  // Unwind a chain of pushforwards M = (...(M0 pushed by m_k)... pushed by m_1).
  if (M.atoms().empty() && M.densities().empty() && M.stables().empty() && M.pushforwards().size() == 1) {
    std::vector<IntegralMap> chain;
    const LevyMeasure* src = &M;
    while (src->atoms().empty() && src->densities().empty() && src->stables().empty() &&
           src->pushforwards().size() == 1) {
      chain.push_back(*src->pushforwards().front().map);
      src = src->pushforwards().front().source.get();
    }
    for (std::size_t k = 1; k <= chain.size(); ++k) {
      std::vector<IntegralMap> outer(chain.begin(), chain.begin() + k);
      IntegralMap eff = outer.size() == 1 ? outer.front() : compose(outer);
      // Source of the k outermost pushforwards.
      const LevyMeasure* s = &M;
      for (std::size_t j = 0; j < k; ++j) s = s->pushforwards().front().source.get();
      for (auto& [gen, dom] : known_generators(tag)) {
        if (!same_image(eff, gen)) continue;
        bool in_domain = true;
        if (dom) in_domain = moment_membership(*dom, LevyTriple(0.0, 0.0, *s)).member;
        if (!in_domain) continue;
        r.member = true;
        r.criterion = "constructive";
        r.note = "Levy measure is the image of a domain law under " + gen.describe();
        return r;
      }
    }
  }
  throw UnsupportedError("membership in " + tag.name() +
                         " is decided only for Gaussian, atomic, stable or constructively built laws");
}

InclusionReport thorin_inclusion_check(const LevyTriple& nu, const std::vector<double>& y_grid, double tol) {
  InclusionReport rep;
  const ExponentFn phi = exponent_fn(nu);
  const ExponentFn thorin = transform_exponent(thorin_map(), phi);
  // Intermediates: lambda_E = I_E(nu) and lambda_L = I_L(nu) as triples.
  const LevyTriple lam_e = transform_triple(e_map(), nu);
  const LevyTriple lam_l = transform_triple(l_map(1), nu);
  const ExponentFn via_l = transform_exponent(l_map(1), exponent_fn(lam_e));
  const ExponentFn via_e = transform_exponent(e_map(), exponent_fn(lam_l));
  rep.l_range_error = 0.0;
  rep.e_range_error = 0.0;
  for (double y : y_grid) {
    const cplx want = thorin(y);
    rep.l_range_error = std::max(rep.l_range_error, std::abs(via_l(y) - want));
    rep.e_range_error = std::max(rep.e_range_error, std::abs(via_e(y) - want));
  }
  rep.passed = rep.l_range_error <= tol && rep.e_range_error <= tol;
  return rep;
}

}  // namespace levi
