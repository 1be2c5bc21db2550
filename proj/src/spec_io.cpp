#include "reebscape/spec_io.hpp"

#include <cmath>

#include "reebscape/error.hpp"

namespace reebscape {

using nlohmann::json;

namespace {

template <class T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(std::string("spec is missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("spec field '") + key + "' has the wrong type");
  }
}

std::string kind_of(const json& j) { return field<std::string>(j, "kind"); }

double finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ConfigError(std::string(what) + " must be finite");
  return v;
}

}  // namespace

json fn_to_json(const Fn1D& f) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          return {{"kind", "polynomial"}, {"coefficients", v.coefficients()}};
        } else if constexpr (std::is_same_v<T, SDCRAnFn>) {
          json terms = json::array();
          for (const auto& t : v.terms()) terms.push_back({{"i", t.i}, {"T", t.T.rows()}});
          return {{"kind", "sdcran"}, {"R", v.R()}, {"j0", v.j0()}, {"terms", terms}};
        } else if constexpr (std::is_same_v<T, Composition>) {
          return {{"kind", "composition"},
                  {"outer", v.outer.coefficients()},
                  {"inner", fn_to_json(*v.inner)}};
        } else if constexpr (std::is_same_v<T, ExampleOne>) {
          return {{"kind", "example_one"}};
        } else {
          json pieces = json::array();
          for (const auto& p : v.pieces) pieces.push_back(fn_to_json(p));
          return {{"kind", "piecewise_blend"},
                  {"pieces", pieces},
                  {"breaks", v.breaks},
                  {"width", v.width}};
        }
      },
      f.variant());
}

Fn1D fn_from_json(const json& j) {
  const std::string kind = kind_of(j);
  if (kind == "polynomial") {
    auto c = field<std::vector<double>>(j, "coefficients");
    if (c.empty()) throw ConfigError("polynomial needs coefficients");
    return Fn1D(Polynomial(std::move(c)));
  }
  if (kind == "sdcran") {
    const double R = finite(field<double>(j, "R"), "R");
    if (R == 0.0) throw ConfigError("sdcran needs R != 0");
    std::vector<SDCRAnTerm> terms;
    for (const json& t : field<json>(j, "terms")) {
      const int i = field<int>(t, "i");
      if (i < 0) throw ConfigError("sdcran term exponents must be non-negative");
      auto rows = field<std::vector<std::vector<double>>>(t, "T");
      if (static_cast<int>(rows.size()) > TrigPoly::kMaxDegree + 1) {
        throw ConfigError("sdcran T exceeds the degree cap");
      }
      for (const auto& r : rows) {
        if (static_cast<int>(r.size()) > TrigPoly::kMaxDegree + 1) {
          throw ConfigError("sdcran T exceeds the degree cap");
        }
      }
      terms.push_back({i, TrigPoly(std::move(rows))});
    }
    if (terms.empty()) throw ConfigError("sdcran needs at least one term");
    return Fn1D(SDCRAnFn(R, field<int>(j, "j0"), std::move(terms)));
  }
  if (kind == "composition") {
    return Fn1D::compose(Polynomial(field<std::vector<double>>(j, "outer")),
                         fn_from_json(field<json>(j, "inner")));
  }
  if (kind == "example_one") return Fn1D(ExampleOne{});
  if (kind == "piecewise_blend") {
    PiecewiseBlend b;
    for (const json& p : field<json>(j, "pieces")) b.pieces.push_back(fn_from_json(p));
    b.breaks = field<std::vector<double>>(j, "breaks");
    b.width = field<double>(j, "width");
    if (b.pieces.size() != b.breaks.size() + 1) {
      throw ConfigError("piecewise_blend needs one more piece than breaks");
    }
    return Fn1D(std::move(b));
  }
  throw ConfigError("unknown function kind '" + kind + "'");
}

json curve_to_json(const PlaneCurve& c) {
  json base = std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ParabolaChain>) {
          return {{"kind", "parabola_chain"},
                  {"offset", p.offset},
                  {"sign", p.sign},
                  {"period", p.period},
                  {"vertex", p.vertex}};
        } else if constexpr (std::is_same_v<T, Circle>) {
          return {{"kind", "circle"}, {"level", p.level}};
        } else {
          json j{{"kind", "fn_graph"}, {"f", fn_to_json(p.f)}};
          if (std::isfinite(p.param_window.lo) || std::isfinite(p.param_window.hi)) {
            j["param_window"] = {p.param_window.lo, p.param_window.hi};
          }
          return j;
        }
      },
      c.primitive());
  if (!c.is_transformed()) return base;
  const Affine2& m = c.map();
  return {{"kind", "transformed"},
          {"base", base},
          {"matrix", m.m},
          {"translation", m.b}};
}

PlaneCurve curve_from_json(const json& j) {
  const std::string kind = kind_of(j);
  if (kind == "parabola_chain") {
    const double sign = field<double>(j, "sign");
    if (sign != 1.0 && sign != -1.0) throw ConfigError("parabola_chain sign must be +1 or -1");
    const double period = finite(field<double>(j, "period"), "period");
    if (!(period > 0.0)) throw ConfigError("parabola_chain period must be positive");
    return PlaneCurve(ParabolaChain{finite(field<double>(j, "offset"), "offset"), sign, period,
                                    finite(field<double>(j, "vertex"), "vertex")});
  }
  if (kind == "circle") {
    const double level = field<double>(j, "level");
    if (!(level > 0.0) || !std::isfinite(level)) throw ConfigError("circle level must be positive");
    return PlaneCurve(Circle{level});
  }
  if (kind == "fn_graph") {
    FnGraph g{fn_from_json(field<json>(j, "f"))};
    if (j.contains("param_window")) {
      const auto w = field<std::vector<double>>(j, "param_window");
      if (w.size() != 2 || !(w[1] > w[0])) throw ConfigError("param_window must be [lo, hi]");
      g.param_window = {w[0], w[1]};
    }
    return PlaneCurve(std::move(g));
  }
  if (kind == "transformed") {
    Affine2 m;
    const auto mat = field<std::vector<double>>(j, "matrix");
    if (mat.size() != 4) throw ConfigError("matrix needs four entries");
    std::copy(mat.begin(), mat.end(), m.m.begin());
    if (j.contains("translation")) {
      const auto t = field<std::vector<double>>(j, "translation");
      if (t.size() != 2) throw ConfigError("translation needs two entries");
      m.b = {t[0], t[1]};
    }
    if (std::fabs(m.det()) < 1e-12) throw ConfigError("transformed curve needs an invertible matrix");
    return PlaneCurve::transformed(curve_from_json(field<json>(j, "base")), m);
  }
  throw ConfigError("unknown curve kind '" + kind + "'");
}

}  // namespace reebscape
