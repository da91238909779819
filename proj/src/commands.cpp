#include "evstab/commands.hpp"

#include <cstdlib>
#include <string>
#include <vector>

#include "evstab/experiments.hpp"
#include "evstab/parse.hpp"
#include "evstab/stability.hpp"
#include "json.hpp"

namespace evstab {

namespace {

using nlohmann::json; // object keys serialize sorted, so dumps are stable

struct Params {
  const std::map<std::string, std::string>& kv;

  bool has(const std::string& k) const { return kv.count(k) != 0; }

  const std::string& require(const std::string& k) const {
    auto it = kv.find(k);
    if (it == kv.end())
      throw ArgumentError("missing required parameter --" + k);
    return it->second;
  }

  std::string get(const std::string& k, const std::string& dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : it->second;
  }

  long long get_int(const std::string& k) const {
    return to_int(k, require(k));
  }

  long long get_int(const std::string& k, long long dflt) const {
    auto it = kv.find(k);
    return it == kv.end() ? dflt : to_int(k, it->second);
  }

  unsigned long long seed() const {
    long long s = get_int("seed", 0);
    if (s < 0) throw ArgumentError("--seed must be nonnegative");
    return (unsigned long long)s;
  }

  static long long to_int(const std::string& k, const std::string& s) {
    try {
      size_t pos = 0;
      long long v = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw ArgumentError("parameter --" + k + ": '" + s +
                          "' is not an integer");
    }
  }
};

void check_keys(const Params& p, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : p.kv) {
    bool ok = false;
    for (const char* a : allowed)
      if (k == a) ok = true;
    if (!ok) throw ArgumentError("unknown parameter --" + k);
  }
}

// --cap beats EVSTAB_DEGREE_CAP beats the built-in default.
int resolve_cap(const Params& p, int dflt) {
  long long c = dflt;
  if (p.has("cap")) {
    c = p.get_int("cap");
  } else if (const char* env = std::getenv("EVSTAB_DEGREE_CAP")) {
    try {
      size_t pos = 0;
      c = std::stoll(env, &pos);
      if (env[pos] != '\0') throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ArgumentError(std::string("EVSTAB_DEGREE_CAP: '") + env +
                          "' is not an integer");
    }
  }
  if (c < 1 || c > (1 << 26)) throw ArgumentError("degree cap out of range");
  return (int)c;
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> w;
  for (const auto& r : rows)
    for (size_t i = 0; i < r.size(); ++i) {
      if (w.size() <= i) w.resize(i + 1, 0);
      w[i] = std::max(w[i], r[i].size());
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (size_t i = 0; i < r.size(); ++i) {
      if (i) line += "  ";
      line += r[i];
      if (i + 1 < r.size()) line += std::string(w[i] - r[i].size(), ' ');
    }
    out += line;
    out += '\n';
  }
  return out;
}

CommandResult finish(const std::string& command, unsigned long long seed,
                     json input, json result, int exit_code,
                     std::string table) {
  json rep;
  rep["command"] = command;
  rep["input"] = std::move(input);
  rep["result"] = std::move(result);
  rep["schema"] = "evstab/1";
  rep["seed"] = seed;
  CommandResult out;
  out.exit_code = exit_code;
  out.report_json = rep.dump(2) + "\n";
  out.table = std::move(table);
  return out;
}

template <class K>
using FieldOf = std::decay_t<decltype(std::declval<K>().f().coeff(0))>;

// Parse field + map, then run `body(phi)` on the concrete instantiation.
template <class F>
CommandResult with_map(const Params& p, const FieldDesc& field, F&& body) {
  MapVariant mv = parse_map(p.require("map"), field);
  return std::visit([&](auto& phi) { return body(phi); }, mv);
}

template <class K>
ProjPoint<K> point_of(const Params& p, const FieldDesc& field) {
  return std::get<ProjPoint<K>>(parse_point(p.require("point"), field));
}

json hyp_json(const Hypothesis& h) {
  return json{{"holds", h.holds}, {"name", h.name}, {"witness", h.witness}};
}

json certify_entry(const std::string& name, const CertifyResult& r) {
  json e;
  e["strategy"] = name;
  e["granted"] = r.ok();
  json hs = json::array();
  for (const Hypothesis& h : r.hypotheses) hs.push_back(hyp_json(h));
  e["hypotheses"] = std::move(hs);
  if (r.ok()) {
    const StabilityCertificate& c = *r.certificate;
    e["bound"] = c.bound;
    if (c.strategy == Strategy::FullMain)
      e["residue_return_time"] = c.residue_return_time;
    if (c.presumed_nonperiodic_cap)
      e["presumed_nonperiodic_cap"] = *c.presumed_nonperiodic_cap;
    e["describe"] = c.describe();
  } else {
    e["refusal"] = r.refusal;
  }
  return e;
}

// ---- orbit ----------------------------------------------------------------

CommandResult cmd_orbit(const Params& p) {
  check_keys(p, {"field", "map", "point", "cap", "seed"});
  FieldDesc field = parse_field(p.require("field"));
  int cap = (int)p.get_int("cap", kOrbitCap);
  return with_map(p, field, [&](auto& phi) {
    using K = FieldOf<decltype(phi)>;
    ProjPoint<K> alpha = point_of<K>(p, field);
    OrbitRecord<K> rec = orbit(phi, alpha, cap);

    json input{{"cap", cap},
               {"field", field.describe()},
               {"map", map_to_expr(phi)},
               {"point", point_to_expr(alpha)}};
    json res;
    json pts = json::array();
    for (const auto& x : rec.points) pts.push_back(point_to_expr(x));
    res["points"] = std::move(pts);
    res["describe"] = rec.describe();
    switch (rec.status) {
      case OrbitStatus::Periodic: res["status"] = "periodic"; break;
      case OrbitStatus::Preperiodic: res["status"] = "preperiodic"; break;
      default: res["status"] = "unresolved"; break;
    }
    if (rec.status == OrbitStatus::Unresolved) {
      res["cap"] = rec.cap;
    } else {
      res["tail"] = rec.tail;
      res["period"] = rec.period;
    }

    std::vector<std::vector<std::string>> rows{{"n", "phi^n(alpha)"}};
    for (size_t i = 0; i < rec.points.size(); ++i)
      rows.push_back({std::to_string(i), point_to_expr(rec.points[i])});
    std::string table = render_table(rows) + rec.describe() + "\n";
    return finish("orbit", p.seed(), std::move(input), std::move(res), EV_OK,
                  std::move(table));
  });
}

// ---- iterate ----------------------------------------------------------------

CommandResult cmd_iterate(const Params& p) {
  check_keys(p, {"field", "map", "n", "cap", "seed"});
  FieldDesc field = parse_field(p.require("field"));
  int n = (int)p.get_int("n");
  int cap = resolve_cap(p, kDegreeCap);
  return with_map(p, field, [&](auto& phi) {
    auto phin = iterate(phi, n, cap);
    json input{{"cap", cap},
               {"field", field.describe()},
               {"map", map_to_expr(phi)},
               {"n", n}};
    json res{{"degree", phin.degree()}, {"map", map_to_expr(phin)}};
    std::string table =
        "phi^" + std::to_string(n) + " = " + map_to_expr(phin) + "\n";
    return finish("iterate", p.seed(), std::move(input), std::move(res),
                  EV_OK, std::move(table));
  });
}

// ---- preimage-poly ---------------------------------------------------------

CommandResult cmd_preimage_poly(const Params& p) {
  check_keys(p, {"field", "map", "point", "n", "cap", "seed"});
  FieldDesc field = parse_field(p.require("field"));
  int n = (int)p.get_int("n");
  int cap = resolve_cap(p, kDegreeCap);
  return with_map(p, field, [&](auto& phi) {
    using K = FieldOf<decltype(phi)>;
    ProjPoint<K> alpha = point_of<K>(p, field);
    auto phin = iterate(phi, n, cap);
    Poly<K> P = preimage_of_iterate(phin, alpha);
    bool deficient = P.deg() < phin.degree();

    json input{{"cap", cap},
               {"field", field.describe()},
               {"map", map_to_expr(phi)},
               {"n", n},
               {"point", point_to_expr(alpha)}};
    json res{{"deficient", deficient},
             {"degree", P.deg()},
             {"nominal_degree", phin.degree()},
             {"poly", poly_to_expr(P)}};
    std::string table = "P_" + std::to_string(n) + " = " + poly_to_expr(P) +
                        "\ndegree " + std::to_string(P.deg()) +
                        (deficient ? " (deficient, nominal " +
                                         std::to_string(phin.degree()) + ")"
                                   : "") +
                        "\n";
    return finish("preimage-poly", p.seed(), std::move(input), std::move(res),
                  EV_OK, std::move(table));
  });
}

// ---- factor ----------------------------------------------------------------

template <class K>
json factor_json(const FactorReport<K>& rep) {
  json terms = json::array();
  for (const auto& t : rep.terms)
    terms.push_back(json{{"degree", t.factor.deg()},
                         {"factor", poly_to_expr(t.factor)},
                         {"multiplicity", t.multiplicity}});
  return json{{"count", rep.count_with_multiplicity()},
              {"distinct", rep.count_distinct()},
              {"factors", std::move(terms)},
              {"unit", rep.unit.to_string()}};
}

template <class K>
std::string factor_table(const FactorReport<K>& rep) {
  std::vector<std::vector<std::string>> rows{{"factor", "mult", "degree"}};
  for (const auto& t : rep.terms)
    rows.push_back({poly_to_expr(t.factor), std::to_string(t.multiplicity),
                    std::to_string(t.factor.deg())});
  return render_table(rows) + "unit " + rep.unit.to_string() + "\n";
}

CommandResult cmd_factor(const Params& p) {
  check_keys(p, {"field", "poly", "seed"});
  FieldDesc field = parse_field(p.require("field"));
  PolyVariant pv = parse_poly(p.require("poly"), field);
  return std::visit(
      [&](auto& f) -> CommandResult {
        using K = std::decay_t<decltype(f.coeff(0))>;
        json input{{"field", field.describe()}, {"poly", poly_to_expr(f)}};
        if constexpr (std::is_same_v<K, FuncFieldElem>) {
          throw ArgumentError("factoring is supported over Q and GF(q) only");
        } else {
          FactorReport<K> rep;
          if constexpr (std::is_same_v<K, Rat>)
            rep = factor_q(f, p.seed());
          else
            rep = factor_gfq(f, p.seed());
          return finish("factor", p.seed(), std::move(input), factor_json(rep),
                        EV_OK, factor_table(rep));
        }
      },
      pv);
}

// ---- counts ----------------------------------------------------------------

CommandResult cmd_counts(const Params& p) {
  check_keys(p, {"field", "map", "point", "N", "cap", "seed"});
  FieldDesc field = parse_field(p.require("field"));
  int N = (int)p.get_int("N");
  return with_map(p, field, [&](auto& phi) -> CommandResult {
    using K = FieldOf<decltype(phi)>;
    if constexpr (std::is_same_v<K, FuncFieldElem>) {
      throw ArgumentError("counts is supported over Q and GF(q) only");
    } else {
      int cap = resolve_cap(p, detail::experiment_degree_cap<K>());
      ProjPoint<K> alpha = point_of<K>(p, field);
      CountSequence seq = factor_count_sequence(phi, alpha, N, p.seed(), cap);

      json input{{"N", N},
                 {"cap", cap},
                 {"field", field.describe()},
                 {"map", map_to_expr(phi)},
                 {"point", point_to_expr(alpha)}};
      json levels = json::array();
      for (const auto& lv : seq.levels) {
        json degs = json::array();
        for (int d : lv.factor_degrees) degs.push_back(d);
        levels.push_back(json{{"count", lv.count},
                              {"deficient", lv.deficient},
                              {"degree", lv.degree},
                              {"factor_degrees", std::move(degs)},
                              {"n", lv.n}});
      }
      json res{{"levels", std::move(levels)},
               {"stabilization_index", seq.stabilization_index
                                           ? json(*seq.stabilization_index)
                                           : json(nullptr)}};

      std::vector<std::vector<std::string>> rows{
          {"n", "degree", "count", "factor degrees"}};
      for (const auto& lv : seq.levels) {
        std::string degs;
        for (size_t i = 0; i < lv.factor_degrees.size(); ++i)
          degs += (i ? " " : "") + std::to_string(lv.factor_degrees[i]);
        rows.push_back({std::to_string(lv.n),
                        std::to_string(lv.degree) +
                            (lv.deficient ? "*" : ""),
                        std::to_string(lv.count), degs});
      }
      std::string table = render_table(rows);
      if (seq.stabilization_index)
        table += "stabilizes at n = " +
                 std::to_string(*seq.stabilization_index) + "\n";
      return finish("counts", p.seed(), std::move(input), std::move(res),
                    EV_OK, std::move(table));
    }
  });
}

// ---- tree ------------------------------------------------------------------

CommandResult cmd_tree(const Params& p) {
  check_keys(p, {"field", "map", "point", "N", "cap", "seed"});
  FieldDesc field = parse_field(p.require("field"));
  int N = (int)p.get_int("N");
  return with_map(p, field, [&](auto& phi) -> CommandResult {
    using K = FieldOf<decltype(phi)>;
    if constexpr (std::is_same_v<K, FuncFieldElem>) {
      throw ArgumentError("tree is supported over Q and GF(q) only");
    } else {
      int cap = resolve_cap(p, detail::experiment_degree_cap<K>());
      ProjPoint<K> alpha = point_of<K>(p, field);
      TreeProfile<K> tree = tree_profile(phi, alpha, N, p.seed(), cap);

      json input{{"N", N},
                 {"cap", cap},
                 {"field", field.describe()},
                 {"map", map_to_expr(phi)},
                 {"point", point_to_expr(alpha)}};
      json levels = json::array();
      std::vector<std::vector<std::string>> rows{
          {"n", "factor", "mult", "degree", "parent", "ratio"}};
      for (size_t l = 0; l < tree.levels.size(); ++l) {
        json nodes = json::array();
        for (const auto& nd : tree.levels[l]) {
          nodes.push_back(json{{"degree", nd.degree},
                               {"degree_ratio", nd.degree_ratio},
                               {"factor", poly_to_expr(nd.factor)},
                               {"multiplicity", nd.multiplicity},
                               {"parent", nd.parent}});
          rows.push_back(
              {std::to_string(l + 1), poly_to_expr(nd.factor),
               std::to_string(nd.multiplicity), std::to_string(nd.degree),
               nd.parent < 0 ? "-" : std::to_string(nd.parent),
               nd.degree_ratio == 0 ? "-" : std::to_string(nd.degree_ratio)});
        }
        levels.push_back(std::move(nodes));
      }
      json res{{"levels", std::move(levels)}};
      return finish("tree", p.seed(), std::move(input), std::move(res), EV_OK,
                    render_table(rows));
    }
  });
}

// ---- certify ---------------------------------------------------------------

const std::vector<std::string> kStrategies = {"eisenstein", "evstab1",
                                              "evstab2", "polycor",
                                              "fullmain"};

template <class K, class V>
CommandResult certify_with(const Params& p, const FieldDesc& field,
                           const RationalMap<K>& phi, const V& v,
                           const ProjPoint<K>& alpha) {
  std::string strategy = p.get("strategy", "all");
  bool at_zero = !alpha.is_infinity() && alpha.value().is_zero();
  Poly<K> P1 = preimage_of_iterate(phi, alpha);

  auto run_one = [&](const std::string& s) -> CertifyResult {
    if (s == "eisenstein") return eisenstein_bound(P1, v);
    if (s == "evstab1") {
      if (!at_zero)
        throw ArgumentError("strategy evstab1 certifies the point 0 only");
      return evstab1_certificate(phi, v);
    }
    if (s == "evstab2") return evstab2_certificate(phi, v, alpha);
    if (s == "polycor") return polycor_bound(phi, v, alpha);
    if (s == "fullmain") return fullmain_certificate(phi, v, alpha);
    throw ArgumentError("unknown strategy '" + s + "'");
  };

  // "all" runs every strategy whose shape precondition holds: evstab1 only
  // certifies the point 0, and eisenstein needs a nonconstant P_1
  std::vector<std::string> todo;
  if (strategy == "all") {
    for (const std::string& s : kStrategies) {
      if (s == "evstab1" && !at_zero) continue;
      if (s == "eisenstein" && P1.deg() < 1) continue;
      todo.push_back(s);
    }
  } else {
    todo.push_back(strategy);
  }

  bool granted = false;
  json entries = json::array();
  std::vector<std::vector<std::string>> rows{{"strategy", "verdict"}};
  std::string detail_lines;
  for (const std::string& s : todo) {
    CertifyResult r = run_one(s);
    granted = granted || r.ok();
    entries.push_back(certify_entry(s, r));
    rows.push_back({s, r.ok() ? r.certificate->describe()
                              : "refused: " + r.refusal});
    for (const Hypothesis& h : r.hypotheses)
      detail_lines += "  " + s + (h.holds ? "  [ok] " : "  [no] ") + h.name +
                      ": " + h.witness + "\n";
  }

  json input{{"field", field.describe()},
             {"map", map_to_expr(phi)},
             {"point", point_to_expr(alpha)},
             {"strategy", strategy},
             {"valuation", v.describe()}};
  json res{{"granted", granted}, {"strategies", std::move(entries)}};
  std::string table = render_table(rows) + detail_lines;
  return finish("certify", p.seed(), std::move(input), std::move(res),
                granted ? EV_OK : EV_REFUSED, std::move(table));
}

CommandResult cmd_certify(const Params& p) {
  check_keys(p, {"field", "map", "point", "val", "strategy", "seed"});
  FieldDesc field = parse_field(p.require("field"));
  std::string strategy = p.get("strategy", "all");
  if (strategy != "all") {
    bool known = false;
    for (const std::string& s : kStrategies) known = known || s == strategy;
    if (!known) throw ArgumentError("unknown strategy '" + strategy + "'");
  }
  const std::string& val = p.require("val");
  return with_map(p, field, [&](auto& phi) -> CommandResult {
    using K = FieldOf<decltype(phi)>;
    ProjPoint<K> alpha = point_of<K>(p, field);
    if constexpr (std::is_same_v<K, Rat>) {
      PadicValuation v(Params::to_int("val", val));
      return certify_with(p, field, phi, v, alpha);
    } else if constexpr (std::is_same_v<K, FuncFieldElem>) {
      auto pt = std::get<ProjPoint<FuncFieldElem>>(parse_point(val, field));
      if (pt.is_infinity() || !pt.value().is_polynomial())
        throw ArgumentError(
            "--val must be a monic irreducible polynomial in t");
      PiAdicValuation v(field.ctx, pt.value().num());
      return certify_with(p, field, phi, v, alpha);
    } else {
      throw ArgumentError(
          "certify requires Q or GF(q)(t) (a finite field carries no "
          "valuation)");
    }
  });
}

// ---- bijectivity -----------------------------------------------------------

CommandResult cmd_bijectivity(const Params& p) {
  check_keys(p, {"field", "map", "seed"});
  FieldDesc field = parse_field(p.require("field"));
  if (field.kind != FieldKind::GF)
    throw ArgumentError("bijectivity requires a finite field");
  return with_map(p, field, [&](auto& phi) -> CommandResult {
    using K = FieldOf<decltype(phi)>;
    if constexpr (std::is_same_v<K, GFElem>) {
      BijectivityResult b = is_bijective_on_residue_extensions(phi);
      json input{{"field", field.describe()}, {"map", map_to_expr(phi)}};
      json res;
      res["bijective"] = b.bijective;
      res["describe"] = b.describe();
      if (b.bijective) {
        res["frob_power"] = b.frob_power;
        json nf = json::array();
        for (const GFElem& c : b.normal_form) nf.push_back(c.to_string());
        res["normal_form"] = std::move(nf);
      }
      if (b.witness) {
        res["witness"] = json{{"ext_degree", b.witness->ext_degree},
                              {"image", b.witness->image.to_string()},
                              {"x", b.witness->x.to_string()},
                              {"y", b.witness->y.to_string()}};
      }
      std::string table = std::string(b.bijective ? "bijective" : "not bijective") +
                          " on all residue extensions: " + b.describe() + "\n";
      return finish("bijectivity", p.seed(), std::move(input), std::move(res),
                    EV_OK, std::move(table));
    } else {
      throw ArgumentError("bijectivity requires a finite field");
    }
  });
}

// ---- stickelberger ----------------------------------------------------------

CommandResult cmd_stickelberger(const Params& p) {
  check_keys(p, {"field", "poly", "seed"});
  FieldDesc field = parse_field(p.require("field"));
  if (field.kind != FieldKind::GF)
    throw ArgumentError("stickelberger requires a finite field");
  PolyVariant pv = parse_poly(p.require("poly"), field);
  const auto& f = std::get<Poly<GFElem>>(pv);
  StickelbergerAudit audit = stickelberger_audit(f, p.seed());

  json input{{"field", field.describe()}, {"poly", poly_to_expr(f)}};
  json res;
  std::string table;
  if (!audit.ok()) {
    res["refusal"] = audit.refusal;
    table = "refused: " + audit.refusal + "\n";
    return finish("stickelberger", p.seed(), std::move(input), std::move(res),
                  EV_REFUSED, std::move(table));
  }
  auto parity = [](int x) { return x == 0 ? "even" : "odd"; };
  res["agrees"] = audit.predicted_parity == audit.observed_parity;
  res["disc"] = audit.disc.to_string();
  res["disc_is_square"] = audit.disc_is_square;
  res["observed_count"] = audit.observed_count;
  res["observed_parity"] = parity(audit.observed_parity);
  res["predicted_parity"] = parity(audit.predicted_parity);
  table = std::string("disc = ") + audit.disc.to_string() +
          (audit.disc_is_square ? " (square)" : " (nonsquare)") +
          ", predicted " + parity(audit.predicted_parity) + ", observed " +
          std::to_string(audit.observed_count) + " factors (" +
          parity(audit.observed_parity) + ")\n";
  return finish("stickelberger", p.seed(), std::move(input), std::move(res),
                EV_OK, std::move(table));
}

// ---- settled ---------------------------------------------------------------

CommandResult cmd_settled(const Params& p) {
  check_keys(p, {"field", "map", "point", "N", "cap", "seed"});
  FieldDesc field = parse_field(p.require("field"));
  if (field.kind != FieldKind::GF)
    throw ArgumentError("settled requires a finite field");
  int N = (int)p.get_int("N");
  int cap = resolve_cap(p, detail::experiment_degree_cap<GFElem>());
  return with_map(p, field, [&](auto& phi) -> CommandResult {
    using K = FieldOf<decltype(phi)>;
    if constexpr (std::is_same_v<K, GFElem>) {
      ProjPoint<GFElem> alpha = point_of<GFElem>(p, field);
      SettlednessEstimate est =
          settledness_estimate(phi, alpha, N, p.seed(), cap);

      json input{{"N", N},
                 {"cap", cap},
                 {"field", field.describe()},
                 {"map", map_to_expr(phi)},
                 {"point", point_to_expr(alpha)}};
      json mass = json::array();
      for (const Rat& s : est.stable_mass) mass.push_back(s.to_string());
      json warn = json::array();
      for (const std::string& w : est.warnings) warn.push_back(w);
      json res{{"horizon", est.horizon},
               {"stable_mass", std::move(mass)},
               {"warnings", std::move(warn)}};

      std::vector<std::vector<std::string>> rows{{"n", "stable mass"}};
      for (size_t i = 0; i < est.stable_mass.size(); ++i)
        rows.push_back(
            {std::to_string(i + 1), est.stable_mass[i].to_string()});
      std::string table = render_table(rows);
      for (const std::string& w : est.warnings)
        table += "warning: " + w + "\n";
      return finish("settled", p.seed(), std::move(input), std::move(res),
                    EV_OK, std::move(table));
    } else {
      throw ArgumentError("settled requires a finite field");
    }
  });
}

// ---- preset ----------------------------------------------------------------

CommandResult cmd_preset(const Params& p) {
  check_keys(p, {"name", "d", "a", "seed"});
  const std::string& name = p.require("name");
  json input{{"name", name}};
  RationalMap<Rat> phi = [&] {
    if (name == "power") {
      int d = (int)p.get_int("d");
      input["d"] = d;
      return power_map(d);
    }
    if (name == "chebyshev") {
      int d = (int)p.get_int("d");
      input["d"] = d;
      return chebyshev(d);
    }
    if (name == "quad") {
      FieldDesc q{FieldKind::Q, nullptr};
      auto pt = std::get<ProjPoint<Rat>>(parse_point(p.require("a"), q));
      if (pt.is_infinity()) throw ArgumentError("--a must be rational");
      input["a"] = pt.value().to_string();
      return quad_family(pt.value());
    }
    throw ArgumentError("unknown preset '" + name +
                        "' (power|chebyshev|quad)");
  }();
  json res{{"degree", phi.degree()}, {"map", map_to_expr(phi)}};
  std::string table = name + ": " + map_to_expr(phi) + "\n";
  return finish("preset", p.seed(), std::move(input), std::move(res), EV_OK,
                std::move(table));
}

CommandResult fail(int code, std::string msg) {
  CommandResult r;
  r.exit_code = code;
  r.error = std::move(msg);
  return r;
}

} // namespace

CommandResult run_command(const std::string& command,
                          const std::map<std::string, std::string>& params) {
  try {
    Params p{params};
    if (command == "orbit") return cmd_orbit(p);
    if (command == "iterate") return cmd_iterate(p);
    if (command == "preimage-poly") return cmd_preimage_poly(p);
    if (command == "factor") return cmd_factor(p);
    if (command == "counts") return cmd_counts(p);
    if (command == "tree") return cmd_tree(p);
    if (command == "certify") return cmd_certify(p);
    if (command == "bijectivity") return cmd_bijectivity(p);
    if (command == "stickelberger") return cmd_stickelberger(p);
    if (command == "settled") return cmd_settled(p);
    if (command == "preset") return cmd_preset(p);
    throw ArgumentError("unknown command '" + command + "'");
  } catch (const ParseError& e) {
    return fail(EV_BAD_INPUT, std::string(e.what()) + " (at offset " +
                                  std::to_string(e.offset) + ")");
  } catch (const ArgumentError& e) {
    return fail(EV_BAD_INPUT, e.what());
  } catch (const ResourceError& e) {
    return fail(EV_RESOURCE, e.what());
  } catch (const InternalError& e) {
    return fail(EV_INTERNAL, e.what());
  } catch (const std::exception& e) {
    return fail(EV_INTERNAL, e.what());
  }
}

} // namespace evstab
