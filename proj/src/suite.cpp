#include "germext/suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "germext/borel.hpp"
#include "germext/extension.hpp"
#include "germext/kmaps.hpp"
#include "germext/polynomials.hpp"
#include "germext/scalar_smooth.hpp"
#include "germext/verify.hpp"

namespace germext {

using nlohmann::json;

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::info:
      return "info";
  }
  return "fail";
}

Check upper_check(std::string name, double measured, double bound, double tolerance) {
  const bool ok = measured <= bound + tolerance;
  return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, measured, bound, tolerance};
}

json check_to_json(const Check& c) {
  const auto num = [](const std::optional<double>& v) -> json {
    if (!v || !std::isfinite(*v)) return nullptr;
    return *v;
  };
  return {{"name", c.name},
          {"status", to_string(c.status)},
          {"measured", num(c.measured)},
          {"bound", num(c.bound)},
          {"tolerance", num(c.tolerance)}};
}

bool all_pass(const std::vector<Check>& checks) {
  return std::none_of(checks.begin(), checks.end(),
                      [](const Check& c) { return c.status == CheckStatus::fail; });
}

namespace {

// Each section draws from its own stream so that sections stay independent.
std::mt19937_64 stream(const SuiteParams& p, std::uint64_t section) {
  std::seed_seq seq{p.seed, section};
  return std::mt19937_64(seq);
}

std::uint64_t sub_seed(std::mt19937_64& rng) { return rng(); }

Element in_ball(const Space& space, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return random_element(space, radius * unit(rng), rng);
}

Space grid(std::size_t d) { return {SpaceKind::grid, d, 2, 0}; }
Space pair_codomain() { return {SpaceKind::pvec, 2, 2, 0}; }

}  // namespace

SectionResult truncator_template(const SuiteParams& p) {
  auto rng = stream(p, 1);
  const auto h = make_truncator(p.a, p.b);
  std::uniform_real_distribution<double> inner(-p.a, p.a);
  std::uniform_real_distribution<double> logo(std::log(p.b), std::log(1e3));
  std::bernoulli_distribution sign(0.5);

  std::size_t moved = 0;
  std::size_t nonzero = 0;
  const std::size_t samples = 1000;
  for (std::size_t i = 0; i < samples; ++i) {
    double s = i == 0 ? p.a : i == 1 ? -p.a : inner(rng);
    if (h(s) != s) ++moved;
    double t = i == 0 ? p.b : std::exp(logo(rng));
    if (sign(rng)) t = -t;
    if (h(t) != 0.0) ++nonzero;
  }
  SectionResult out;
  out.checks.push_back(upper_check("identity_core_mismatches", static_cast<double>(moved), 0.0));
  out.checks.push_back(upper_check("outer_nonzero", static_cast<double>(nonzero), 0.0));
  out.data = {{"samples", samples}, {"a", p.a}, {"b", p.b}};
  return out;
}

SectionResult kmap_certificate(const SuiteParams& p) {
  auto rng = stream(p, 2);
  const KMap k = pointwise_kmap(p.a, p.b, grid(p.grid_dim));

  std::size_t moved = 0;
  for (int i = 0; i < 1000; ++i) {
    const Element x = in_ball(k.space(), k.identity_radius(), rng);
    if (!identical(k(x), x)) ++moved;
  }
  ProbeConfig cfg{10000, {1e-3, 1e3}, sub_seed(rng)};
  const Map hmap = [&k](const Element& x) { return k(x); };
  const double sup = sup_probe(hmap, k.space(), cfg);

  SectionResult out;
  out.checks.push_back(upper_check("identity_ball_mismatches", static_cast<double>(moved), 0.0));
  out.checks.push_back(upper_check("sup_bound", sup, k.bound(), 1e-12));
  out.data = {{"d", p.grid_dim}, {"identity_radius", k.identity_radius()}, {"bound", k.bound()}};
  return out;
}

SectionResult integral_extension(const SuiteParams& p) {
  auto rng = stream(p, 3);
  const std::size_t d = p.quad_dim;
  const LocalMap f = integral_local_map();
  const KMap k = pointwise_kmap(p.a, p.b, grid(d));
  // eps = N makes H_1 = K, so F is the static truncator path itself.
  ExtendOptions opts;
  opts.eps = k.bound();
  const GlobalMap big_f = extend_germ(f, k, opts);

  std::size_t differ = 0;
  std::size_t differ_static = 0;
  for (int i = 0; i < 1000; ++i) {
    const Element x = in_ball(k.space(), big_f.agreement_radius, rng);
    const Element fx = big_f(x);
    if (!identical(fx, f(x))) ++differ;
    if (values(fx)[0] != integral_functional_global(std::get<GridFn>(x))) ++differ_static;
  }

  ProbeConfig cfg{10000, {1e-3, 1e3}, sub_seed(rng)};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < cfg.trials; ++i) {
    const double v = values(big_f(sample_probe(k.space(), cfg, rng)))[0];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }

  const Element quarter = GridFn(std::vector<double>(d, 0.25));
  const Element ramp = GridFn::from_function(d, [](double t) { return t / 4.0; });
  const double e_quarter = std::abs(values(big_f(quarter))[0] - 4.0 / 3.0);
  const double e_ramp = std::abs(values(big_f(ramp))[0] - 4.0 * std::log(4.0 / 3.0));

  SectionResult out;
  out.checks.push_back(upper_check("agreement_mismatches", static_cast<double>(differ), 0.0));
  out.checks.push_back(upper_check("static_path_mismatches", static_cast<double>(differ_static), 0.0));
  Check positive{"global_min_positive", lo > 0.0 ? CheckStatus::pass : CheckStatus::fail, lo, 0.0, 0.0};
  out.checks.push_back(positive);
  out.checks.push_back(upper_check("global_max", hi, 2.0));
  out.checks.push_back(upper_check("constant_quarter_error", e_quarter, 0.0, 1e-14));
  out.checks.push_back(upper_check("ramp_error", e_ramp, 0.0, 1e-8));
  out.data = {{"d", d}, {"eps", k.bound()}, {"agreement_radius", big_f.agreement_radius}};
  return out;
}

SectionResult derivative_formulas(const SuiteParams& p) {
  auto rng = stream(p, 4);
  const Space dom = grid(16);
  const Space cod = pair_codomain();
  std::uniform_int_distribution<int> degree(1, 4);
  const FDConfig fd{0.1, 5};

  double worst_fd = 0.0;
  double worst_const = 0.0;
  double worst_above = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Jet jet = random_jet(4, dom, cod, 2, sub_seed(rng));
    const HomogeneousPoly& poly = jet[static_cast<std::size_t>(degree(rng))];
    const Element z = random_element(dom, 1.0, rng);
    const Element v = random_element(dom, 1.0, rng);
    const Map pm = [&poly](const Element& x) { return eval(poly, x); };
    for (int n = 0; n <= 3; ++n) {
      const Element exact = deriv_at(poly, z, v, n);
      const auto approx = directional_deriv(pm, z, v, n, fd);
      const double scale = deriv_magnitude(poly, z, v, n);
      const double err = norm(lincomb(1.0, exact, -1.0, approx.value));
      worst_fd = std::max(worst_fd, scale > 0.0 ? err / scale : err);
    }
    worst_above = std::max(worst_above, norm(deriv_at(poly, z, v, poly.degree() + 1)));
  }

  for (int trial = 0; trial < 10; ++trial) {
    const Jet jet = random_jet(4, dom, cod, 2, sub_seed(rng));
    const HomogeneousPoly& poly = jet[static_cast<std::size_t>(degree(rng))];
    const Element v = random_element(dom, 1.0, rng);
    const Element ref = deriv_at(poly, random_element(dom, 1.0, rng), v, poly.degree());
    const double scale = std::max(norm(ref), std::numeric_limits<double>::min());
    for (int i = 0; i < 10; ++i) {
      const Element other = deriv_at(poly, random_element(dom, 1.0, rng), v, poly.degree());
      worst_const = std::max(worst_const, norm(lincomb(1.0, ref, -1.0, other)) / scale);
    }
  }

  SectionResult out;
  out.checks.push_back(upper_check("fd_rel_error", worst_fd, 0.0, 1e-6));
  out.checks.push_back(upper_check("top_order_z_spread", worst_const, 0.0, 1e-12));
  out.checks.push_back(upper_check("above_degree_norm", worst_above, 0.0));
  return out;
}

SectionResult borel_lemma(const SuiteParams& p) {
  auto rng = stream(p, 5);
  const Space dom = grid(p.borel_dim);
  const Jet jet = random_jet(p.jet_order, dom, pair_codomain(), 2, sub_seed(rng));
  const KMap k = pointwise_kmap(p.a, p.b, dom);
  const BorelSeries series = make_borel_series(jet, k, p.budget);

  std::vector<Element> dirs;
  for (int i = 0; i < 20; ++i) dirs.push_back(random_element(dom, 1.0, rng));
  const JetReport rep = verify_jet(series, dirs, p.jet_tol);

  ProbeConfig cfg{10000, {1e-3, 1e3}, sub_seed(rng)};
  const Map f = [&series](const Element& x) { return series(x); };
  const double sup = sup_probe(f, dom, cfg);

  SectionResult out;
  out.checks.push_back(upper_check("jet_max_rel_error", rep.max_rel_error, 0.0, p.jet_tol));
  out.checks.push_back(upper_check("global_sup", sup, series.sup_bound_unscaled(), 1e-9));
  json res = json::array();
  for (const auto& r : rep.residuals) {
    res.push_back({{"n", r.order}, {"v", r.direction}, {"rel_error", r.rel_error}});
  }
  out.data = {{"epsilons", std::vector<double>(series.epsilons().begin(), series.epsilons().end())},
              {"identity_radius", series.identity_radius()},
              {"budget", p.budget},
              {"residuals", res}};
  return out;
}

SectionResult epsilon_power_law(const SuiteParams& p) {
  auto rng = stream(p, 6);
  const Space dom = grid(p.borel_dim);
  const Jet jet = random_jet(4, dom, pair_codomain(), 2, sub_seed(rng));
  const KMap k = pointwise_kmap(p.a, p.b, dom);
  const double eps = 0.5;

  SectionResult out;
  json rows = json::array();
  for (const auto& [j, n] : {std::pair{3, 1}, std::pair{3, 2}, std::pair{4, 2}}) {
    const std::uint64_t seed = sub_seed(rng);
    const auto& poly = jet[static_cast<std::size_t>(j)];
    const double full = sample_term_deriv_sup(poly, k, eps, n, 1000, seed);
    const double half = sample_term_deriv_sup(poly, k, eps / 2.0, n, 1000, seed);
    const double ratio = half / full;
    const double law = std::ldexp(1.0, -(j - n));
    out.checks.push_back(upper_check("ratio_j" + std::to_string(j) + "_n" + std::to_string(n), ratio,
                                     1.5 * law));
    rows.push_back({{"j", j}, {"n", n}, {"sup_eps", full}, {"sup_half", half}, {"law", law}});
  }
  out.data = {{"eps", eps}, {"rows", rows}};
  return out;
}

SectionResult ideal_property(const SuiteParams& p) {
  auto rng = stream(p, 7);
  const KMap k = pointwise_kmap(p.a, p.b, grid(p.grid_dim));
  const std::size_t index = p.grid_dim / 3;
  const auto sub = vanishing_at(index);
  const std::size_t bad = count_closure_violations(k, sub, 1000, 1e-3, 1e3, sub_seed(rng));
  SectionResult out;
  out.checks.push_back(upper_check("closure_violations", static_cast<double>(bad), 0.0));
  out.data = {{"t0", GridFn::grid_point(index, p.grid_dim)}};
  return out;
}

SectionResult c1_growth(const SuiteParams& p) {
  const KMap k = pointwise_kmap(p.a, p.b, {SpaceKind::cheb, p.cheb_degree + 1, 2, 1});
  const std::vector<double> freqs{4, 8, 16, 32};
  const auto rows = c1_growth_probe(k, freqs, 0.25);

  // Smallest ratio of norm growth to frequency growth between consecutive rows;
  // >= 1 means at least linear growth.
  double slope = std::numeric_limits<double>::infinity();
  json table = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) {
      slope = std::min(slope, (rows[i].output_norm / rows[i - 1].output_norm) /
                                  (rows[i].frequency / rows[i - 1].frequency));
    }
    table.push_back({{"M", rows[i].frequency},
                     {"input_c1", rows[i].input_norm},
                     {"output_c1", rows[i].output_norm},
                     {"output_sup", rows[i].output_sup},
                     {"aliasing", rows[i].aliasing_error}});
  }
  SectionResult out;
  out.checks.push_back({"c1_growth_vs_linear", CheckStatus::info, slope, 1.0, 1e-9});
  out.data = {{"degree", p.cheb_degree},
              {"rows", table},
              {"linear_or_faster", slope >= 1.0 - 1e-9}};
  return out;
}

const std::vector<Section>& acceptance_sections() {
  static const std::vector<Section> sections{
      {"truncator_template", truncator_template, 1.0},
      {"kmap_certificate", kmap_certificate, 5.0},
      {"integral_extension", integral_extension, 5.0},
      {"derivative_formulas", derivative_formulas, 10.0},
      {"borel_lemma", borel_lemma, 60.0},
      {"epsilon_power_law", epsilon_power_law, 30.0},
      {"ideal_property", ideal_property, 0.0},
      {"c1_growth", c1_growth, 0.0},
  };
  return sections;
}

}  // namespace germext
