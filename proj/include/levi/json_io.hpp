#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "levi/compose.hpp"
#include "levi/kernels.hpp"
#include "levi/measures.hpp"
#include "levi/transform.hpp"

namespace levi {

using json = nlohmann::json;

/// Numbers may be written as JSON numbers or as "inf" / "-inf".
double number_from_json(const json& j);
json number_to_json(double x);

/// Law schema:
///   {"shift": z, "gaussian_var": R, "levy": LEVY}
/// LEVY is one of
///   {"kind": "none"}
///   {"kind": "atomic", "atoms": [{"x": .., "mass": ..}, ...]}
///   {"kind": "density", "pieces": [{"coef", "q", "lambda", "kappa", "log_shift", "lo", "hi"}, ...]}
///   {"kind": "parametric", "family": "stable", "c": .., "p": ..}
///   {"kind": "parametric", "family": "gamma", "a": .., "b": ..}   a x^-1 e^(-b x) on (0, inf)
///   {"kind": "sum", "parts": [LEVY, ...]}
///   {"kind": "pushforward", "source": LEVY, "map": MAP}
json to_json(const LevyMeasure& m);
LevyMeasure measure_from_json(const json& j);
json to_json(const LevyTriple& t);
LevyTriple triple_from_json(const json& j);

/// Map schema:
///   {"h": {"kind": .., "params": {..}}, "r": {"kind": .., "params": {..}},
///    "a": .., "b": .. | "inf", "reflect_input": false}
/// or {"class": "L" | "E" | "Thorin" | "L_2" | "U_0.5" ...} for a defining map,
/// or {"catalog": "<catalog id>"} for the composed map of a catalog entry.
/// Image clocks have no JSON form.
json to_json(const SpaceTransform& h);
json to_json(const TimeChange& r);
json to_json(const IntegralMap& m);
SpaceTransform space_from_json(const json& j);
TimeChange clock_from_json(const json& j);
IntegralMap map_from_json(const json& j);

json to_json(const DomainReport& r);
json to_json(const CatalogEntry& e);
/// The whole catalog as shipped in configs/catalog.json.
json catalog_json();

/// Reads and parses a file; InputError on I/O or syntax errors.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// "default", a comma list "0.5,1,2", or "lo:hi:n" (n evenly spaced points).
std::vector<double> parse_grid(const std::string& text);

}  // namespace levi
