#include "germext/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <type_traits>
#include <vector>

#include "germext/extension.hpp"
#include "germext/json_io.hpp"
#include "germext/kmaps.hpp"
#include "germext/suite.hpp"
#include "germext/verify.hpp"

namespace germext::cli {

namespace {

const std::vector<std::string> kCommands{"demo-extend", "demo-borel", "verify", "probe-c1"};

constexpr const char* kUsage =
    "usage: germext <demo-extend|demo-borel|verify|probe-c1> [options]\n"
    "       (\"demo extend\" and \"demo borel\" are accepted as aliases)\n";

template <class T>
void need_positive(const char* name, T value) {
  if (!(value > T{0})) throw UsageError(std::string("--") + name + " must be positive");
}

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{seed, salt};
  return std::mt19937_64(seq);
}

Element in_ball(const Space& space, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return random_element(space, radius * unit(rng), rng);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

struct CommandResult {
  std::vector<Check> checks;
  json data = json::object();
};

CommandResult demo_extend(const RunConfig& cfg) {
  const std::size_t d = cfg.d.value_or(65);
  const Space space{SpaceKind::grid, d, 2, 0};
  const LocalMap f = integral_local_map();
  const KMap k = pointwise_kmap(cfg.a, cfg.b, space);
  ExtendOptions opts;
  opts.eps = cfg.eps;
  opts.seed = cfg.seed;
  const GlobalMap big_f = extend_germ(f, k, opts);
  const double tol = cfg.tol.value_or(1e-12);

  CommandResult out;
  auto rng = seeded(cfg.seed, 11);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Element x = in_ball(space, big_f.agreement_radius, rng);
    worst = std::max(worst, std::abs(values(big_f(x))[0] - values(f(x))[0]));
  }
  out.checks.push_back(upper_check("integral_agreement", worst, 0.0, tol));

  const auto closed_form = [&](const char* name, const GridFn& x, double exact, double t) {
    const double err = std::abs(values(big_f(Element(x)))[0] - exact);
    Check c = upper_check(name, err, 0.0, t);
    // Outside the agreement ball the closed form no longer applies.
    if (!(sup_norm(x) <= big_f.agreement_radius)) c.status = CheckStatus::info;
    out.checks.push_back(c);
  };
  closed_form("constant_quarter", GridFn(std::vector<double>(d, 0.25)), 4.0 / 3.0, 1e-14);
  closed_form("linear_ramp", GridFn::from_function(d, [](double t) { return t / 4.0; }),
              4.0 * std::log(4.0 / 3.0), 1e-8);

  ProbeConfig probes{10000, {1e-3, 1e3}, rng()};
  std::mt19937_64 prng(probes.seed);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < probes.trials; ++i) {
    const double v = values(big_f(sample_probe(space, probes, prng)))[0];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  out.checks.push_back({"global_positive", lo > 0.0 ? CheckStatus::pass : CheckStatus::fail, lo, 0.0, 0.0});
  out.checks.push_back(upper_check("global_sup_bound", hi, big_f.sup_bound));

  const Space lp{SpaceKind::pvec, d, cfg.p, 0};
  const KMap bump = bump_kmap(cfg.rho_in, cfg.rho_out, lp);
  std::size_t moved = 0;
  for (int i = 0; i < 1000; ++i) {
    const Element x = in_ball(lp, bump.identity_radius(), rng);
    if (!identical(bump(x), x)) ++moved;
  }
  const Map bmap = [&bump](const Element& x) { return bump(x); };
  const double bsup = sup_probe(bmap, lp, {10000, {1e-3, 1e3}, rng()});
  out.checks.push_back(upper_check("bump_identity_mismatches", static_cast<double>(moved), 0.0));
  out.checks.push_back(upper_check("bump_sup_bound", bsup, bump.bound(), 1e-12));

  out.data = {{"eps", cfg.eps.value_or(0.9 * f.domain_radius())},
              {"agreement_radius", big_f.agreement_radius},
              {"sup_bound", big_f.sup_bound},
              {"sup_bound_certified", big_f.sup_bound_certified},
              {"deriv_bounds", big_f.deriv_bounds},
              {"kmap", kmap_to_json(k)}};
  return out;
}

Jet load_or_draw_jet(const RunConfig& cfg, const Space& domain) {
  if (!cfg.jet) return random_jet(cfg.J.value_or(4), domain, {SpaceKind::pvec, 2, 2, 0}, 2, cfg.seed);
  Jet jet = [&] {
    try {
      return jet_from_json(read_json_file(*cfg.jet), domain);
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError("bad jet file '" + *cfg.jet + "': " + e.what());
    }
  }();
  if (!cfg.J || *cfg.J == jet.order()) return jet;
  std::vector<HomogeneousPoly> polys(jet.polys().begin(), jet.polys().end());
  polys.resize(static_cast<std::size_t>(std::min(*cfg.J, jet.order())) + 1, polys.front());
  for (int j = jet.order() + 1; j <= *cfg.J; ++j) polys.emplace_back(j, jet.domain(), jet.codomain());
  return Jet(std::move(polys));
}

CommandResult demo_borel(const RunConfig& cfg) {
  const Jet jet = load_or_draw_jet(cfg, {SpaceKind::grid, cfg.d.value_or(8), 2, 0});
  const Space& dom = jet.domain();
  const KMap k = dom.kind == SpaceKind::pvec ? bump_kmap(cfg.rho_in, cfg.rho_out, dom)
                                             : pointwise_kmap(cfg.a, cfg.b, dom);
  if (!k.bound_certified()) throw UsageError("demo-borel needs a grid or pvec jet domain");
  const BorelSeries series = make_borel_series(jet, k, cfg.budget);
  const double tol = cfg.tol.value_or(1e-6);

  auto rng = seeded(cfg.seed, 12);
  std::vector<Element> dirs;
  for (int i = 0; i < 20; ++i) dirs.push_back(random_element(dom, 1.0, rng));
  const JetReport rep = verify_jet(series, dirs, tol);

  CommandResult out;
  for (const auto& r : rep.residuals) {
    out.checks.push_back(upper_check(
        "jet_residual_n" + std::to_string(r.order) + "_v" + std::to_string(r.direction), r.rel_error, 0.0, tol));
  }
  const Map f = [&series](const Element& x) { return series(x); };
  const double sup = sup_probe(f, dom, {10000, {1e-3, 1e3}, rng()});
  out.checks.push_back(upper_check("global_sup", sup, series.sup_bound_unscaled(), 1e-9));

  out.data = {{"epsilons", std::vector<double>(series.epsilons().begin(), series.epsilons().end())},
              {"identity_radius", series.identity_radius()},
              {"sup_bound", series.sup_bound_unscaled()},
              {"max_rel_error", rep.max_rel_error},
              {"order", jet.order()},
              {"kmap", kmap_to_json(k)}};
  return out;
}

SuiteParams suite_params(const RunConfig& cfg) {
  SuiteParams p;
  if (cfg.d) p.grid_dim = *cfg.d;
  p.cheb_degree = cfg.D;
  p.a = cfg.a;
  p.b = cfg.b;
  p.jet_order = cfg.J.value_or(4);
  p.budget = cfg.budget;
  if (cfg.tol) p.jet_tol = *cfg.tol;
  p.seed = cfg.seed;
  return p;
}

CommandResult verify_all(const RunConfig& cfg) {
  const SuiteParams params = suite_params(cfg);
  CommandResult out;
  for (const auto& section : acceptance_sections()) {
    auto res = section.run(params);
    for (auto& c : res.checks) {
      c.name = std::string(section.name) + "/" + c.name;
      out.checks.push_back(std::move(c));
    }
    out.data[section.name] = std::move(res.data);
  }
  return out;
}

CommandResult probe_c1(const RunConfig& cfg) {
  auto res = c1_growth(suite_params(cfg));
  return {std::move(res.checks), std::move(res.data)};
}

std::string summarize(const std::string& command, const std::vector<Check>& checks) {
  std::size_t pass = 0, fail = 0, info = 0;
  std::ostringstream failed;
  for (const auto& c : checks) {
    switch (c.status) {
      case CheckStatus::pass:
        ++pass;
        break;
      case CheckStatus::info:
        ++info;
        break;
      case CheckStatus::fail:
        ++fail;
        failed << "  FAIL " << c.name << " measured=" << c.measured.value_or(0.0)
               << " bound=" << c.bound.value_or(0.0) << " tol=" << c.tolerance.value_or(0.0) << "\n";
        break;
    }
  }
  std::ostringstream s;
  s << command << ": " << checks.size() << " checks, " << pass << " pass, " << fail << " fail, " << info
    << " info\n"
    << failed.str();
  return s.str();
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end()) {
    throw UsageError("unknown command '" + cfg.command + "'");
  }
  if (cfg.d) need_positive("d", *cfg.d);
  if (cfg.d && *cfg.d < 2) throw UsageError("--d must be at least 2");
  need_positive("D", cfg.D);
  if (cfg.p <= 0 || cfg.p % 2 != 0) throw UsageError("--p must be a positive even integer");
  need_positive("a", cfg.a);
  need_positive("b", cfg.b);
  if (!(cfg.a < cfg.b)) throw UsageError("--a must be smaller than --b");
  need_positive("rho-in", cfg.rho_in);
  need_positive("rho-out", cfg.rho_out);
  if (!(cfg.rho_in < cfg.rho_out)) throw UsageError("--rho-in must be smaller than --rho-out");
  if (cfg.eps) {
    need_positive("eps", *cfg.eps);
    if (!(*cfg.eps < 1.0)) throw UsageError("--eps must be smaller than the germ's domain radius 1");
  }
  need_positive("budget", cfg.budget);
  if (cfg.J) need_positive("J", *cfg.J);
  if (cfg.tol) need_positive("tol", *cfg.tol);
}

void apply_config(RunConfig& cfg, const json& doc, const std::function<bool(const std::string&)>& given) {
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  static const std::vector<std::string> known{"command", "d",      "D",   "p",    "a",   "b",   "rho_in", "rho_out",
                                              "eps",     "budget", "J",   "seed", "tol", "out", "jet"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  const auto take = [&](const char* key, auto& field) {
    if (!doc.contains(key) || given(key)) return;
    try {
      using T = std::remove_reference_t<decltype(field)>;
      if constexpr (requires { typename T::value_type; } && !std::is_same_v<T, std::string>) {
        field = doc.at(key).get<typename T::value_type>();
      } else {
        field = doc.at(key).get<T>();
      }
    } catch (const json::exception& e) {
      throw UsageError(std::string("config key '") + key + "': " + e.what());
    }
  };
  take("command", cfg.command);
  take("d", cfg.d);
  take("D", cfg.D);
  take("p", cfg.p);
  take("a", cfg.a);
  take("b", cfg.b);
  take("rho_in", cfg.rho_in);
  take("rho_out", cfg.rho_out);
  take("eps", cfg.eps);
  take("budget", cfg.budget);
  take("J", cfg.J);
  take("seed", cfg.seed);
  take("tol", cfg.tol);
  take("out", cfg.out);
  take("jet", cfg.jet);
}

json config_to_json(const RunConfig& cfg) {
  const auto opt = [](const auto& v) -> json {
    if (v) return *v;
    return nullptr;
  };
  return {{"command", cfg.command}, {"d", opt(cfg.d)},         {"D", cfg.D},
          {"p", cfg.p},             {"a", cfg.a},               {"b", cfg.b},
          {"rho_in", cfg.rho_in},   {"rho_out", cfg.rho_out},   {"eps", opt(cfg.eps)},
          {"budget", cfg.budget},   {"J", opt(cfg.J)},          {"seed", cfg.seed},
          {"tol", opt(cfg.tol)},    {"jet", opt(cfg.jet)}};
}

RunOutput run(const RunConfig& cfg) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  CommandResult result;
  try {
    if (cfg.command == "demo-extend") {
      result = demo_extend(cfg);
    } else if (cfg.command == "demo-borel") {
      result = demo_borel(cfg);
    } else if (cfg.command == "verify") {
      result = verify_all(cfg);
    } else {
      result = probe_c1(cfg);
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunOutput out;
  json checks = json::array();
  for (const auto& c : result.checks) checks.push_back(check_to_json(c));
  out.report = {{"command", cfg.command},
                {"params", config_to_json(cfg)},
                {"checks", checks},
                {"data", result.data},
                {"timing", {{"seconds", seconds}}}};
  out.exit_code = all_pass(result.checks) ? kExitPass : kExitCheckFailure;
  out.summary = summarize(cfg.command, result.checks);
  return out;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extension of germs by K-maps and the Borel lemma, with numerical checks"};
  std::vector<std::string> words;
  RunConfig cfg;
  std::size_t d = 0;
  double eps = 0.0;
  int order = 0;
  double tol = 0.0;
  std::string out_path, jet_path, config_path;

  app.add_option("command", words, "demo-extend | demo-borel | verify | probe-c1")->expected(1, 2)->required();
  auto* o_d = app.add_option("--d", d, "space dimension");
  auto* o_D = app.add_option("--D", cfg.D, "Chebyshev degree (probe-c1)");
  auto* o_p = app.add_option("--p", cfg.p, "l_p exponent (even)");
  auto* o_a = app.add_option("--a", cfg.a, "pointwise K-map inner threshold");
  auto* o_b = app.add_option("--b", cfg.b, "pointwise K-map outer threshold");
  auto* o_ri = app.add_option("--rho-in", cfg.rho_in, "bump K-map inner radius");
  auto* o_ro = app.add_option("--rho-out", cfg.rho_out, "bump K-map outer radius");
  auto* o_eps = app.add_option("--eps", eps, "extension radius");
  auto* o_budget = app.add_option("--budget", cfg.budget, "Borel derivative budget");
  auto* o_J = app.add_option("--J", order, "jet order");
  auto* o_seed = app.add_option("--seed", cfg.seed, "random seed");
  auto* o_tol = app.add_option("--tol", tol, "main tolerance override");
  auto* o_out = app.add_option("--out", out_path, "write the JSON report here");
  auto* o_jet = app.add_option("--jet", jet_path, "jet JSON file (demo-borel)");
  app.add_option("--config", config_path, "JSON config file; flags win");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitPass;
    }
    err << "error: " << e.what() << "\n" << kUsage;
    return kExitUsage;
  }

  std::string command = words.front();
  if (words.size() == 2) command += "-" + words[1];
  cfg.command = command;
  if (o_d->count()) cfg.d = d;
  if (o_eps->count()) cfg.eps = eps;
  if (o_J->count()) cfg.J = order;
  if (o_tol->count()) cfg.tol = tol;
  if (o_out->count()) cfg.out = out_path;
  if (o_jet->count()) cfg.jet = jet_path;

  const std::map<std::string, CLI::Option*> flags{
      {"d", o_d},          {"D", o_D},           {"p", o_p},     {"a", o_a},       {"b", o_b},
      {"rho_in", o_ri},    {"rho_out", o_ro},    {"eps", o_eps}, {"budget", o_budget},
      {"J", o_J},          {"seed", o_seed},     {"tol", o_tol}, {"out", o_out},   {"jet", o_jet}};

  RunOutput result;
  try {
    if (!config_path.empty()) {
      apply_config(cfg, read_json_file(config_path), [&](const std::string& key) {
        if (key == "command") return true;
        const auto it = flags.find(key);
        return it != flags.end() && it->second->count() > 0;
      });
    }
    result = run(cfg);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << kUsage;
    return kExitUsage;
  }

  const std::string text = result.report.dump(2) + "\n";
  if (cfg.out) {
    std::ofstream file(*cfg.out);
    if (!file) {
      err << "error: cannot write '" << *cfg.out << "'\n";
      return kExitUsage;
    }
    file << text;
    out << result.summary;
  } else {
    out << text;
    err << result.summary;
  }
  return result.exit_code;
}

}  // namespace germext::cli
