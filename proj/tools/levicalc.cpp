// levicalc: command-line front end for the random integral calculus.
//
// Exit codes: 0 success, 1 failed acceptance criteria, 2 input error,
// 3 domain rejection, 4 numerical nonconvergence.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "levi/errors.hpp"

namespace {

using levicli::Options;
using levicli::Outcome;

void law_flag(CLI::App* c, Options& o) { c->add_option("--law", o.law, "law JSON file")->required(); }
void map_flag(CLI::App* c, Options& o) { c->add_option("--map", o.map, "map JSON file")->required(); }
void grid_flag(CLI::App* c, Options& o) {
  c->add_option("--y-grid", o.y_grid, "\"default\", \"a,b,c\" or \"lo:hi:n\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Levy-Khintchine calculus for random integral mappings"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--out", o.out, "write the JSON result to FILE instead of stdout");
  app.add_option("--tol", o.tol, "tolerance for identity checks");

  auto* exponent = app.add_subcommand("exponent", "Levy exponent of a law on a y-grid");
  law_flag(exponent, o);
  grid_flag(exponent, o);

  auto* transform = app.add_subcommand("transform", "transformed triple and domain report");
  law_flag(transform, o);
  map_flag(transform, o);

  auto* compose = app.add_subcommand("compose", "compose maps into one image-clock map");
  compose->add_option("--map", o.maps, "map JSON file (repeatable, outermost first)");
  compose->add_option("--catalog", o.catalog_id, "catalog entry id");
  compose->add_option("--tail-csv", o.tail_csv, "write the image tail table (w, tail_mass)");

  auto* catalog = app.add_subcommand("catalog", "print the closed-form clock catalog");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo pathwise integral against the analytic CF");
  law_flag(simulate, o);
  map_flag(simulate, o);
  grid_flag(simulate, o);
  simulate->add_option("--seed", o.seed, "RNG seed")->required();
  simulate->add_option("--paths", o.paths, "number of paths");
  simulate->add_option("--resolution", o.resolution, "t-grid points per path");
  simulate->add_option("--eps", o.eps, "jumps with |x| <= eps are not simulated");
  simulate->add_option("--truncation", o.truncation, "upper end used for b = inf");
  simulate->add_option("--threads", o.threads, "worker threads (0: LEVI_CALC_THREADS or hardware)");
  simulate->add_option("--samples-csv", o.samples_csv, "write raw samples");

  auto* fixed = app.add_subcommand("fixed-point", "fixed-point constants int |h|^p |dr|");
  map_flag(fixed, o);
  fixed->add_option("--p", o.p, "stable index (default: scan a p-grid)");

  auto* factorize = app.add_subcommand("factorize", "factorization conditions and identities");
  map_flag(factorize, o);
  law_flag(factorize, o);
  factorize->add_option("--prime", o.prime, "second map JSON file")->required();
  grid_flag(factorize, o);

  auto* classify = app.add_subcommand("classify-law", "membership in moment and range classes");
  law_flag(classify, o);
  classify->add_option("--class", o.classes, "class tag (repeatable), e.g. L, L_2, E, Thorin, ID_log, ID_2");

  auto* accept = app.add_subcommand("accept", "run acceptance experiments");
  accept->add_option("--config", o.config, "single criterion config file");
  accept->add_option("--criterion", o.criteria, "criterion numbers (default: all)");
  accept->add_option("--config-dir", o.config_dir, "directory holding laws/, maps/ and accept/");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    Outcome out;
    if (*exponent) out = levicli::cmd_exponent(o);
    else if (*transform) out = levicli::cmd_transform(o);
    else if (*compose) out = levicli::cmd_compose(o);
    else if (*catalog) out = levicli::cmd_catalog(o);
    else if (*simulate) out = levicli::cmd_simulate(o);
    else if (*fixed) out = levicli::cmd_fixed_point(o);
    else if (*factorize) out = levicli::cmd_factorize(o);
    else if (*classify) out = levicli::cmd_classify(o);
    else if (*accept) out = levicli::cmd_accept(o);
    const std::string text = out.doc.dump(2) + "\n";
    if (o.out.empty()) std::cout << text;
    else levi::write_text_file(o.out, text);
    return out.status;
  } catch (const levi::Error& e) {
    std::cerr << "levicalc: " << e.what() << "\n";
    return e.exit_code();
  } catch (const levi::json::exception& e) {
    std::cerr << "levicalc: " << e.what() << "\n";
    return 2;
  }
}
