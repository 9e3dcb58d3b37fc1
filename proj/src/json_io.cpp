#include "germext/json_io.hpp"

#include <stdexcept>
#include <string>

namespace germext {

json space_to_json(const Space& s) {
  return {{"kind", to_string(s.kind)}, {"dim", s.dim}, {"p", s.p}, {"smoothness", s.smoothness}};
}

Space space_from_json(const json& j) {
  Space s;
  s.kind = space_kind_from_string(j.at("kind").get<std::string>());
  s.dim = j.at("dim").get<std::size_t>();
  s.p = j.value("p", 2);
  s.smoothness = j.value("smoothness", 0);
  return s;
}

json element_to_json(const Element& x) {
  const Space s = space_of(x);
  json meta;
  switch (s.kind) {
    case SpaceKind::grid:
      meta = {{"d", s.dim}};
      break;
    case SpaceKind::cheb:
      meta = {{"degree", s.dim - 1}, {"smoothness", s.smoothness}};
      break;
    case SpaceKind::pvec:
      meta = {{"p", s.p}};
      break;
  }
  const auto v = values(x);
  return {{"kind", to_string(s.kind)}, {"data", std::vector<double>(v.begin(), v.end())}, {"meta", meta}};
}

Element element_from_json(const json& j) {
  const auto kind = space_kind_from_string(j.at("kind").get<std::string>());
  auto data = j.at("data").get<std::vector<double>>();
  const json meta = j.value("meta", json::object());
  switch (kind) {
    case SpaceKind::grid:
      if (meta.contains("d") && meta.at("d").get<std::size_t>() != data.size()) {
        throw std::invalid_argument("grid element: meta.d does not match data length");
      }
      return GridFn(std::move(data));
    case SpaceKind::cheb:
      return ChebFn(std::move(data), meta.value("smoothness", 0));
    case SpaceKind::pvec:
      return PVector(std::move(data), meta.value("p", 2));
  }
  throw std::invalid_argument("element: bad kind");
}

json poly_to_json(const HomogeneousPoly& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) {
    terms.push_back({{"c", t.weight}, {"phi", t.functional}, {"y", element_to_json(t.output)}});
  }
  return {{"degree", p.degree()},
          {"terms", terms},
          {"domain", space_to_json(p.domain())},
          {"codomain", space_to_json(p.codomain())}};
}

HomogeneousPoly poly_from_json(const json& j, const Space& domain) {
  const int degree = j.at("degree").get<int>();
  const Space dom = j.contains("domain") ? space_from_json(j.at("domain")) : domain;
  std::vector<RankOneTerm> terms;
  for (const auto& t : j.at("terms")) {
    terms.push_back({t.at("c").get<double>(), t.at("phi").get<std::vector<double>>(),
                     element_from_json(t.at("y"))});
  }
  Space codomain;
  if (j.contains("codomain")) {
    codomain = space_from_json(j.at("codomain"));
  } else if (!terms.empty()) {
    codomain = space_of(terms.front().output);
  } else {
    throw std::invalid_argument("polynomial without terms needs a \"codomain\" entry");
  }
  return HomogeneousPoly(degree, dom, codomain, std::move(terms));
}

json jet_to_json(const Jet& jet) {
  json polys = json::array();
  for (const auto& p : jet.polys()) polys.push_back(poly_to_json(p));
  return {{"polys", polys}};
}

Jet jet_from_json(const json& j, const Space& domain) {
  const json& list = j.is_array() ? j : j.at("polys");
  std::vector<HomogeneousPoly> polys;
  for (const auto& p : list) polys.push_back(poly_from_json(p, domain));
  return Jet(std::move(polys));
}

json kmap_to_json(const KMap& k) {
  json out;
  if (k.kind() == KMapKind::pointwise) {
    out = {{"kind", "pointwise"},
           {"params", {{"a", k.inner_param()}, {"b", k.outer_param()}, {"space", space_to_json(k.space())}}}};
  } else {
    out = {{"kind", "bump"},
           {"params",
            {{"rho_in", k.inner_param()}, {"rho_out", k.outer_param()}, {"space", space_to_json(k.space())}}}};
  }
  for (double eps : k.rescalings()) {
    out = {{"kind", "rescaled"}, {"params", {{"base", out}, {"eps", eps}}}};
  }
  return out;
}

KMap kmap_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  const json& params = j.at("params");
  if (kind == "pointwise") {
    return pointwise_kmap(params.at("a").get<double>(), params.at("b").get<double>(),
                          space_from_json(params.at("space")));
  }
  if (kind == "bump") {
    return bump_kmap(params.at("rho_in").get<double>(), params.at("rho_out").get<double>(),
                     space_from_json(params.at("space")));
  }
  if (kind == "rescaled") {
    return rescale(kmap_from_json(params.at("base")), params.at("eps").get<double>());
  }
  throw std::invalid_argument("unknown K-map kind '" + kind + "'");
}

json ball_to_json(const BallKMap& b) {
  return {{"kind", "ball"},
          {"params",
           {{"base", kmap_to_json(b.base())},
            {"z", element_to_json(b.center())},
            {"r", b.radius()},
            {"margin", b.margin()}}}};
}

BallKMap ball_from_json(const json& j) {
  if (j.at("kind").get<std::string>() != "ball") throw std::invalid_argument("expected a ball K-map");
  const json& params = j.at("params");
  return kmap_at_ball(kmap_from_json(params.at("base")), element_from_json(params.at("z")),
                      params.at("r").get<double>(), params.at("margin").get<double>());
}

}  // namespace germext
