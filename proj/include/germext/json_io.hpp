#pragma once

#include <json.hpp>

#include "germext/borel.hpp"
#include "germext/kmaps.hpp"
#include "germext/polynomials.hpp"
#include "germext/spaces.hpp"

namespace germext {

using json = nlohmann::json;

// {"kind": "grid"|"cheb"|"pvec", "data": [...], "meta": {...}}
json element_to_json(const Element& x);
Element element_from_json(const json& j);

// {"kind": ..., "dim": ..., "p": ..., "smoothness": ...}
json space_to_json(const Space& s);
Space space_from_json(const json& j);

// {"degree": j, "terms": [{"c": real, "phi": [...], "y": element}], "domain": space?}
// `domain` is used when the document carries no "domain" key.
json poly_to_json(const HomogeneousPoly& p);
HomogeneousPoly poly_from_json(const json& j, const Space& domain);

// {"polys": [poly, ...]} or a bare array of polys.
json jet_to_json(const Jet& jet);
Jet jet_from_json(const json& j, const Space& domain);

// {"kind": "pointwise"|"bump"|"rescaled", "params": {...}}
json kmap_to_json(const KMap& k);
KMap kmap_from_json(const json& j);

// {"kind": "ball", "params": {"base": kmap, "z": element, "r": ..., "margin": ...}}
json ball_to_json(const BallKMap& b);
BallKMap ball_from_json(const json& j);

}  // namespace germext
