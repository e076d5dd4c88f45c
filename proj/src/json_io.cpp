#include "levi/json_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "levi/analysis.hpp"
#include "levi/errors.hpp"

namespace levi {
namespace {

void expect_object(const json& j, const std::string& what) {
  if (!j.is_object()) throw InputError(what + ": expected a JSON object");
}

void allow_keys(const json& j, const std::set<std::string>& keys, const std::string& what) {
  for (const auto& [k, v] : j.items())
    if (!keys.count(k)) throw InputError(what + ": unknown key \"" + k + "\"");
}

double get(const json& j, const std::string& key, const std::string& what) {
  if (!j.contains(key)) throw InputError(what + ": missing \"" + key + "\"");
  return number_from_json(j.at(key));
}

double get_or(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? number_from_json(j.at(key)) : fallback;
}

std::string kind_of(const json& j, const std::string& what) {
  expect_object(j, what);
  if (!j.contains("kind") || !j.at("kind").is_string()) throw InputError(what + ": missing string \"kind\"");
  return j.at("kind").get<std::string>();
}

const json& params_of(const json& j) {
  static const json empty = json::object();
  return j.contains("params") ? j.at("params") : empty;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

json piece_to_json(const DensityPiece& d) {
  return {{"coef", d.coef},      {"q", d.q},   {"lambda", d.lambda}, {"kappa", d.kappa},
          {"log_shift", d.log_shift}, {"lo", number_to_json(d.lo)}, {"hi", number_to_json(d.hi)}};
}

DensityPiece piece_from_json(const json& j) {
  expect_object(j, "density piece");
  allow_keys(j, {"coef", "q", "lambda", "kappa", "log_shift", "lo", "hi"}, "density piece");
  DensityPiece d;
  d.coef = get_or(j, "coef", 1.0);
  d.q = get_or(j, "q", 0.0);
  d.lambda = get_or(j, "lambda", 0.0);
  d.kappa = get_or(j, "kappa", 0.0);
  d.log_shift = get_or(j, "log_shift", 0.0);
  d.lo = get(j, "lo", "density piece");
  d.hi = get(j, "hi", "density piece");
  return d;
}

}  // namespace

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw InputError("expected a number or \"inf\", got " + j.dump());
}

json number_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

json to_json(const LevyMeasure& m) {
  std::vector<json> parts;
  if (!m.atoms().empty()) {
    json atoms = json::array();
    for (const Atom& a : m.atoms()) atoms.push_back({{"x", a.x}, {"mass", a.mass}});
    parts.push_back({{"kind", "atomic"}, {"atoms", atoms}});
  }
  if (!m.densities().empty()) {
    json pieces = json::array();
    for (const DensityPiece& d : m.densities()) pieces.push_back(piece_to_json(d));
    parts.push_back({{"kind", "density"}, {"pieces", pieces}});
  }
  for (const StablePart& s : m.stables())
    parts.push_back({{"kind", "parametric"}, {"family", "stable"}, {"c", s.c}, {"p", s.p}});
  for (const PushforwardPart& p : m.pushforwards())
    parts.push_back({{"kind", "pushforward"}, {"source", to_json(*p.source)}, {"map", to_json(*p.map)}});
  if (parts.empty()) return {{"kind", "none"}};
  if (parts.size() == 1) return parts.front();
  return {{"kind", "sum"}, {"parts", parts}};
}

LevyMeasure measure_from_json(const json& j) {
  return guarded([&] {
    const std::string kind = kind_of(j, "levy measure");
    if (kind == "none") {
      allow_keys(j, {"kind"}, "levy measure");
      return LevyMeasure();
    }
    if (kind == "atomic") {
      allow_keys(j, {"kind", "atoms"}, "atomic measure");
      std::vector<Atom> atoms;
      for (const json& a : j.at("atoms")) {
        expect_object(a, "atom");
        allow_keys(a, {"x", "mass"}, "atom");
        atoms.push_back({get(a, "x", "atom"), get(a, "mass", "atom")});
      }
      return LevyMeasure::atomic(std::move(atoms));
    }
    if (kind == "density") {
      allow_keys(j, {"kind", "pieces"}, "density measure");
      std::vector<DensityPiece> pieces;
      for (const json& p : j.at("pieces")) pieces.push_back(piece_from_json(p));
      return LevyMeasure::density(std::move(pieces));
    }
    if (kind == "parametric") {
      const std::string family = j.value("family", "");
      if (family == "stable") {
        allow_keys(j, {"kind", "family", "c", "p"}, "stable measure");
        return LevyMeasure::stable(get(j, "c", "stable measure"), get(j, "p", "stable measure"));
      }
      if (family == "gamma") {
        allow_keys(j, {"kind", "family", "a", "b"}, "gamma measure");
        const double a = get(j, "a", "gamma measure"), b = get(j, "b", "gamma measure");
        return LevyMeasure::density({DensityPiece{a, 1.0, b, 0.0, 0.0, 0.0, kInf}});
      }
      throw InputError("unknown parametric family \"" + family + "\"");
    }
    if (kind == "sum") {
      allow_keys(j, {"kind", "parts"}, "sum measure");
      LevyMeasure out;
      for (const json& p : j.at("parts")) out = out + measure_from_json(p);
      return out;
    }
    if (kind == "pushforward") {
      allow_keys(j, {"kind", "source", "map"}, "pushforward measure");
      return LevyMeasure::pushforward(std::make_shared<const LevyMeasure>(measure_from_json(j.at("source"))),
                                      std::make_shared<const IntegralMap>(map_from_json(j.at("map"))));
    }
    throw InputError("unknown levy measure kind \"" + kind + "\"");
  });
}

json to_json(const LevyTriple& t) {
  return {{"shift", t.shift}, {"gaussian_var", t.gaussian_var}, {"levy", to_json(t.levy)}};
}

LevyTriple triple_from_json(const json& j) {
  return guarded([&] {
    expect_object(j, "law");
    allow_keys(j, {"shift", "gaussian_var", "levy", "description"}, "law");
    LevyTriple t(get_or(j, "shift", 0.0), get_or(j, "gaussian_var", 0.0),
                 j.contains("levy") ? measure_from_json(j.at("levy")) : LevyMeasure());
    t.validate();
    return t;
  });
}

json to_json(const SpaceTransform& h) {
  using K = SpaceTransform::Kind;
  switch (h.kind()) {
    case K::constant: return {{"kind", "constant"}, {"params", {{"c", h.scale()}}}};
    case K::linear: return {{"kind", "linear"}, {"params", {{"k", h.scale()}}}};
    case K::power: return {{"kind", "power"}, {"params", {{"alpha", h.param()}, {"k", h.scale()}}}};
    case K::exp: return {{"kind", "exp"}, {"params", {{"lambda", h.param()}, {"k", h.scale()}}}};
    case K::neg_log: return {{"kind", "neg_log"}, {"params", {{"k", h.scale()}}}};
    case K::opaque: break;
  }
  throw UnsupportedError("opaque space transforms have no JSON form");
}

SpaceTransform space_from_json(const json& j) {
  return guarded([&] {
    const std::string kind = kind_of(j, "h");
    allow_keys(j, {"kind", "params"}, "h");
    const json& p = params_of(j);
    const double k = get_or(p, "k", 1.0);
    if (kind == "constant") {
      allow_keys(p, {"c"}, "constant h");
      return SpaceTransform::constant(get(p, "c", "constant h"));
    }
    if (kind == "linear") {
      allow_keys(p, {"k"}, "linear h");
      return SpaceTransform::linear(k);
    }
    if (kind == "power") {
      allow_keys(p, {"alpha", "k"}, "power h");
      return SpaceTransform::power(get(p, "alpha", "power h"), k);
    }
    if (kind == "exp") {
      allow_keys(p, {"lambda", "k"}, "exp h");
      return SpaceTransform::exp_decay(get_or(p, "lambda", 1.0), k);
    }
    if (kind == "neg_log") {
      allow_keys(p, {"k"}, "neg_log h");
      return SpaceTransform::neg_log(k);
    }
    throw InputError("unknown space transform kind \"" + kind + "\"");
  });
}

json to_json(const TimeChange& r) {
  using K = TimeChange::Kind;
  json out;
  switch (r.kind()) {
    case K::linear: out = {{"kind", "linear"}, {"params", {{"k", r.scale()}}}}; break;
    case K::power: out = {{"kind", "power"}, {"params", {{"beta", r.param()}, {"k", r.scale()}}}}; break;
    case K::neg_log: out = {{"kind", "neg_log"}, {"params", {{"k", r.scale()}}}}; break;
    case K::one_minus_exp:
      out = {{"kind", "one_minus_exp"}, {"params", {{"lambda", r.param()}, {"k", r.scale()}}}};
      break;
    case K::exp_decay: out = {{"kind", "exp_decay"}, {"params", {{"lambda", r.param()}, {"k", r.scale()}}}}; break;
    case K::upper_gamma: out = {{"kind", "upper_gamma"}, {"params", {{"alpha", r.param()}, {"k", r.scale()}}}}; break;
    case K::dirac: out = {{"kind", "dirac"}, {"params", {{"u", r.param()}}}}; break;
    case K::catalog:
      out = {{"kind", "catalog"},
             {"params", {{"clock", catalog_name(r.catalog_id())}, {"param", r.param()}, {"k", r.scale()}}}};
      break;
    case K::image: throw UnsupportedError("image clocks have no JSON form; export the tail table instead");
  }
  if (r.offset() != 0.0) out["params"]["offset"] = r.offset();
  return out;
}

TimeChange clock_from_json(const json& j) {
  return guarded([&] {
    const std::string kind = kind_of(j, "r");
    allow_keys(j, {"kind", "params"}, "r");
    const json& p = params_of(j);
    const double k = get_or(p, "k", 1.0);
    auto only = [&](std::set<std::string> keys) {
      keys.insert("offset");
      allow_keys(p, keys, kind + " clock");
    };
    TimeChange r;
    if (kind == "linear") {
      only({"k"});
      r = TimeChange::linear(k);
    } else if (kind == "power") {
      only({"beta", "k"});
      r = TimeChange::power(get(p, "beta", "power clock"), k);
    } else if (kind == "neg_log") {
      only({"k"});
      r = TimeChange::neg_log(k);
    } else if (kind == "one_minus_exp") {
      only({"lambda", "k"});
      r = TimeChange::one_minus_exp(get_or(p, "lambda", 1.0), k);
    } else if (kind == "exp_decay") {
      only({"lambda", "k"});
      r = TimeChange::exp_decay(get_or(p, "lambda", 1.0), k);
    } else if (kind == "upper_gamma") {
      only({"alpha", "k"});
      r = TimeChange::upper_gamma(get(p, "alpha", "upper_gamma clock"), k);
    } else if (kind == "dirac") {
      allow_keys(p, {"u"}, "dirac clock");
      return TimeChange::dirac(get(p, "u", "dirac clock"));
    } else if (kind == "catalog") {
      only({"clock", "param", "k"});
      const std::string name = p.value("clock", "");
      const auto id = catalog_from_name(name);
      if (!id) throw InputError("unknown catalog clock \"" + name + "\"");
      r = TimeChange::catalog(*id, get(p, "param", "catalog clock"), k);
    } else {
      throw InputError("unknown time change kind \"" + kind + "\"");
    }
    if (p.contains("offset")) r = r.shifted(number_from_json(p.at("offset")));
    return r;
  });
}

json to_json(const IntegralMap& m) {
  json out = {{"h", to_json(m.h())},
              {"r", to_json(m.r())},
              {"a", number_to_json(m.interval().a)},
              {"b", number_to_json(m.interval().b)}};
  if (m.reflect_input()) out["reflect_input"] = true;
  return out;
}

IntegralMap map_from_json(const json& j) {
  return guarded([&] {
    expect_object(j, "map");
    if (j.contains("class")) {
      allow_keys(j, {"class", "description"}, "map");
      const auto m = ClassTag::parse(j.at("class").get<std::string>()).defining_map();
      if (!m) throw InputError("class " + j.at("class").get<std::string>() + " has no defining map");
      return *m;
    }
    if (j.contains("catalog")) {
      allow_keys(j, {"catalog", "description"}, "map");
      const std::string id = j.at("catalog").get<std::string>();
      const auto e = catalog_lookup(id);
      if (!e) throw InputError("unknown catalog id \"" + id + "\"");
      return compose(e->constituents);
    }
    allow_keys(j, {"h", "r", "a", "b", "reflect_input", "description"}, "map");
    const SpaceTransform h = space_from_json(j.at("h"));
    const TimeChange r = clock_from_json(j.at("r"));
    const Interval iv(get(j, "a", "map"), get(j, "b", "map"));
    const bool refl = j.value("reflect_input", false);
    if (h.is_zero()) return IntegralMap::trivial(h, r, iv);
    return IntegralMap(h, r, iv, refl);
  });
}

json to_json(const DomainReport& r) {
  json checks = json::array();
  for (const DomainCheck& c : r.checks)
    checks.push_back({{"id", c.id},
                      {"value", number_to_json(c.value)},
                      {"threshold", number_to_json(c.threshold)},
                      {"passed", c.passed},
                      {"role", to_string(c.role)},
                      {"note", c.note}});
  json out = {{"admitted", r.admitted}, {"checks", checks}};
  out["shortcut_used"] = r.shortcut_used ? json(*r.shortcut_used) : json(nullptr);
  return out;
}

json to_json(const CatalogEntry& e) {
  json maps = json::array();
  for (const IntegralMap& m : e.constituents) maps.push_back(to_json(m));
  return {{"id", e.id},
          {"description", e.description},
          {"clock", catalog_name(e.clock)},
          {"param", e.param},
          {"support", {{"a", number_to_json(e.support.a)}, {"b", number_to_json(e.support.b)}}},
          {"validity", e.validity},
          {"constituents", maps}};
}

json catalog_json() {
  json out = json::array();
  for (const CatalogEntry& e : catalog()) out.push_back(to_json(e));
  return {{"catalog", out}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed for " + path);
}

std::vector<double> parse_grid(const std::string& text) {
  if (text.empty() || text == "default") return default_y_grid();
  auto num = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw InputError("");
      return v;
    } catch (const std::exception&) {
      throw InputError("bad grid \"" + text + "\"");
    }
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> f;
    std::stringstream ss(text);
    for (std::string s; std::getline(ss, s, ':');) f.push_back(s);
    if (f.size() != 3) throw InputError("grid lo:hi:n needs three fields");
    const double lo = num(f[0]), hi = num(f[1]);
    const long n = std::lround(num(f[2]));
    if (n < 1 || !(hi >= lo)) throw InputError("bad grid \"" + text + "\"");
    for (long i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return out;
  }
  std::stringstream ss(text);
  for (std::string s; std::getline(ss, s, ',');) out.push_back(num(s));
  if (out.empty()) throw InputError("empty grid");
  return out;
}

}  // namespace levi
