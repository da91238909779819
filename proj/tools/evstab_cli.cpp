#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evstab/evstab.h"

namespace {

struct Collected {
  std::map<std::string, std::string> kv;
};

void add_param(CLI::App* cmd, Collected& coll, const std::string& key,
               const std::string& help, bool required) {
  auto* opt = cmd->add_option_function<std::string>(
      "--" + key,
      [&coll, key](const std::string& v) { coll.kv[key] = v; }, help);
  if (required) opt->required();
}

struct CmdSpec {
  const char* name;
  const char* help;
  std::vector<std::pair<const char*, const char*>> required;
  std::vector<std::pair<const char*, const char*>> optional;
};

const std::vector<CmdSpec> kSpecs = {
    {"orbit",
     "forward orbit of a point until first repeat",
     {{"field", "Q | GF(p) | GF(p,m) | GF(p)(t)"},
      {"map", "rational map in z"},
      {"point", "starting point (or inf)"}},
     {{"cap", "repeat-detection budget"}, {"seed", "rng seed (default 0)"}}},
    {"iterate",
     "n-fold composition of a map",
     {{"field", "coefficient field"},
      {"map", "rational map in z"},
      {"n", "iteration count, n >= 1"}},
     {{"cap", "degree cap"}, {"seed", "rng seed (default 0)"}}},
    {"preimage-poly",
     "numerator of phi^n(z) - alpha",
     {{"field", "coefficient field"},
      {"map", "rational map in z"},
      {"point", "target point alpha (or inf)"},
      {"n", "iteration count, n >= 1"}},
     {{"cap", "degree cap"}, {"seed", "rng seed (default 0)"}}},
    {"factor",
     "complete factorization over Q or GF(q)",
     {{"field", "Q | GF(p) | GF(p,m)"}, {"poly", "polynomial in z"}},
     {{"seed", "rng seed (default 0)"}}},
    {"counts",
     "irreducible factor counts of the preimage polynomials P_1..P_N",
     {{"field", "coefficient field"},
      {"map", "rational map in z"},
      {"point", "target point alpha (or inf)"},
      {"N", "horizon, N >= 1"}},
     {{"cap", "degree cap"}, {"seed", "rng seed (default 0)"}}},
    {"tree",
     "factor tree of the preimage polynomials with parentage and ratios",
     {{"field", "coefficient field"},
      {"map", "rational map in z"},
      {"point", "target point alpha (or inf)"},
      {"N", "horizon, N >= 1"}},
     {{"cap", "degree cap"}, {"seed", "rng seed (default 0)"}}},
    {"certify",
     "eventual-stability certificate for (map, point) at a valuation",
     {{"field", "Q or GF(p)(t)"},
      {"map", "rational map in z"},
      {"point", "target point alpha (or inf)"},
      {"val", "prime p over Q; t or monic irreducible pi(t) over GF(p)(t)"}},
     {{"strategy", "all|eisenstein|evstab1|evstab2|polycor|fullmain"},
      {"seed", "rng seed (default 0)"}}},
    {"bijectivity",
     "is the map bijective on P^1 of every finite extension",
     {{"field", "GF(p) | GF(p,m)"}, {"map", "rational map in z"}},
     {{"seed", "rng seed (default 0)"}}},
    {"stickelberger",
     "discriminant parity audit for a squarefree even-degree polynomial",
     {{"field", "GF(p) | GF(p,m), odd characteristic"},
      {"poly", "polynomial in z"}},
     {{"seed", "rng seed (default 0)"}}},
    {"settled",
     "stable-mass fractions of the preimage factor tree",
     {{"field", "GF(p) | GF(p,m)"},
      {"map", "rational map in z"},
      {"point", "target point alpha (or inf)"},
      {"N", "horizon, N >= 2"}},
     {{"cap", "degree cap"}, {"seed", "rng seed (default 0)"}}},
    {"preset",
     "named example family: power | chebyshev | quad",
     {{"name", "power | chebyshev | quad"}},
     {{"d", "degree for power/chebyshev"},
      {"a", "parameter for quad (z^2 + 1/a)"},
      {"seed", "rng seed (default 0)"}}},
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("evstab ") + evstab_version() +
               ": exact iteration, factorization and eventual-stability "
               "certificates for rational maps"};
  app.require_subcommand(1);
  bool table = false;
  app.add_flag("--table", table, "print the aligned table instead of JSON");

  std::map<std::string, Collected> collected;
  for (const CmdSpec& spec : kSpecs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->fallthrough();
    Collected& coll = collected[spec.name];
    for (const auto& [key, help] : spec.required)
      add_param(sub, coll, key, help, true);
    for (const auto& [key, help] : spec.optional)
      add_param(sub, coll, key, help, false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const Collected& coll = collected[sub->get_name()];
  std::vector<const char*> keys, values;
  for (const auto& [k, v] : coll.kv) {
    keys.push_back(k.c_str());
    values.push_back(v.c_str());
  }

  evstab_result res;
  int code = evstab_command(sub->get_name().c_str(), keys.data(),
                            values.data(), keys.size(), &res);
  if (res.error) {
    std::fprintf(stderr, "error: %s\n", res.error);
  } else if (table) {
    std::fputs(res.table ? res.table : "", stdout);
  } else {
    std::fputs(res.report_json ? res.report_json : "", stdout);
  }
  evstab_result_free(&res);
  return code;
}
