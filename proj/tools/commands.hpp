#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levi/json_io.hpp"

namespace levicli {

struct Options {
  std::string law, map, prime, out, y_grid = "default", catalog_id, samples_csv, tail_csv, config, config_dir;
  std::vector<std::string> maps, classes;
  std::vector<int> criteria;
  std::optional<std::uint64_t> seed;
  std::optional<double> truncation, p;
  double tol = 1e-6;
  std::size_t paths = 10000, resolution = 1000;
  double eps = 1e-3;
  unsigned threads = 0;
};

/// Each command returns the JSON document to print and the exit status.
struct Outcome {
  levi::json doc;
  int status = 0;
};

Outcome cmd_exponent(const Options& o);
Outcome cmd_transform(const Options& o);
Outcome cmd_compose(const Options& o);
Outcome cmd_catalog(const Options& o);
Outcome cmd_simulate(const Options& o);
Outcome cmd_fixed_point(const Options& o);
Outcome cmd_factorize(const Options& o);
Outcome cmd_classify(const Options& o);
Outcome cmd_accept(const Options& o);

}  // namespace levicli
