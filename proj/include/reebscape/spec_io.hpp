#pragma once

#include <json.hpp>

#include "reebscape/curve.hpp"
#include "reebscape/fn1d.hpp"

namespace reebscape {

/// Function specs:
///   {"kind": "polynomial", "coefficients": [a0, a1, ...]}
///   {"kind": "sdcran", "R": 0.01, "j0": 0, "terms": [{"i": 0, "T": [[...], ...]}]}
///   {"kind": "composition", "outer": [a0, ...], "inner": <function>}
///   {"kind": "example_one"}
///   {"kind": "piecewise_blend", "pieces": [...], "breaks": [...], "width": w}
nlohmann::json fn_to_json(const Fn1D& f);
Fn1D fn_from_json(const nlohmann::json& j);

/// Curve specs:
///   {"kind": "parabola_chain", "offset": o, "sign": s, "period": p, "vertex": v}
///   {"kind": "circle", "level": L}
///   {"kind": "fn_graph", "f": <function>, "param_window": [lo, hi]}
///   {"kind": "transformed", "base": <curve>, "matrix": [m00, m01, m10, m11],
///    "translation": [b1, b2]}
nlohmann::json curve_to_json(const PlaneCurve& c);
PlaneCurve curve_from_json(const nlohmann::json& j);

}  // namespace reebscape
