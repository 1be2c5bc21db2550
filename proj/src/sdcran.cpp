#include "reebscape/sdcran.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "reebscape/error.hpp"

namespace reebscape {

TrigPoly::TrigPoly(std::vector<std::vector<double>> rows) : rows_(std::move(rows)) {
  trim();
  if (s_degree() > kMaxDegree) throw Error("TrigPoly: sin degree exceeds 8");
  for (const auto& r : rows_) {
    if (static_cast<int>(r.size()) - 1 > kMaxDegree)
      throw Error("TrigPoly: cos degree exceeds 8");
  }
}

TrigPoly TrigPoly::constant(double v) {
  return TrigPoly(std::vector<std::vector<double>>{std::vector<double>{v}});
}

void TrigPoly::trim() {
  for (auto& r : rows_) {
    while (!r.empty() && r.back() == 0.0) r.pop_back();
  }
  while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
}

double TrigPoly::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a >= static_cast<int>(rows_.size())) return 0.0;
  const auto& r = rows_[a];
  return b < static_cast<int>(r.size()) ? r[b] : 0.0;
}

double TrigPoly::operator()(double s, double c) const {
  double acc = 0.0;
  for (auto a = rows_.rbegin(); a != rows_.rend(); ++a) {
    double row = 0.0;
    for (auto b = a->rbegin(); b != a->rend(); ++b) row = row * c + *b;
    acc = acc * s + row;
  }
  return acc;
}

bool TrigPoly::is_zero() const { return rows_.empty(); }

bool TrigPoly::is_constant() const {
  return rows_.size() <= 1 && (rows_.empty() || rows_[0].size() <= 1);
}

TrigPoly TrigPoly::d_ds() const {
  std::vector<std::vector<double>> out;
  for (std::size_t a = 1; a < rows_.size(); ++a) {
    std::vector<double> r = rows_[a];
    for (auto& v : r) v *= static_cast<double>(a);
    out.push_back(std::move(r));
  }
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::d_dc() const {
  std::vector<std::vector<double>> out;
  for (const auto& row : rows_) {
    std::vector<double> r;
    for (std::size_t b = 1; b < row.size(); ++b) r.push_back(b * row[b]);
    out.push_back(std::move(r));
  }
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::times_s() const {
  std::vector<std::vector<double>> out;
  out.emplace_back();
  for (const auto& r : rows_) out.push_back(r);
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::times_c() const {
  std::vector<std::vector<double>> out;
  for (const auto& row : rows_) {
    std::vector<double> r;
    if (!row.empty()) {
      r.push_back(0.0);
      r.insert(r.end(), row.begin(), row.end());
    }
    out.push_back(std::move(r));
  }
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::scaled(double k) const {
  auto out = rows_;
  for (auto& r : out)
    for (auto& v : r) v *= k;
  return TrigPoly(std::move(out));
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  std::size_t na = std::max(rows_.size(), o.rows_.size());
  std::vector<std::vector<double>> out(na);
  for (std::size_t a = 0; a < na; ++a) {
    std::size_t nb = 0;
    if (a < rows_.size()) nb = std::max(nb, rows_[a].size());
    if (a < o.rows_.size()) nb = std::max(nb, o.rows_[a].size());
    out[a].assign(nb, 0.0);
    for (std::size_t b = 0; b < nb; ++b)
      out[a][b] = coeff(static_cast<int>(a), static_cast<int>(b)) +
                  o.coeff(static_cast<int>(a), static_cast<int>(b));
  }
  return TrigPoly(std::move(out));
}

SDCRAnFn::SDCRAnFn(double R, int j0, std::vector<SDCRAnTerm> terms)
    : R_(R), j0_(j0) {
  if (R == 0.0) throw Error("SDCRAnFn: R must be nonzero");
  std::map<int, TrigPoly> merged;
  for (auto& t : terms) {
    if (t.i < 0) throw Error("SDCRAnFn: exponents i_j must be non-negative");
    auto it = merged.find(t.i);
    if (it == merged.end())
      merged.emplace(t.i, std::move(t.T));
    else
      it->second = it->second + t.T;
  }
  for (auto& [i, T] : merged) {
    if (!T.is_zero()) terms_.push_back({i, std::move(T)});
  }
  if (terms_.empty()) throw Error("SDCRAnFn: needs at least one nonzero term");
}

LogAbs SDCRAnFn::eval_log(double x) const {
  if (x == 0.0) return {};
  const double u = 1.0 / x;
  const double s = std::sin(u), c = std::cos(u);
  const int imax = terms_.back().i;  // terms_ sorted by i
  double lp = 0.0;
  for (const auto& t : terms_) lp += std::pow(u, t.i - imax) * t.T(s, c);
  if (lp == 0.0) return {};
  const int k = j0_ + imax;
  int sign = (R_ > 0 ? 1 : -1) * (lp > 0 ? 1 : -1);
  if (u < 0 && (k % 2 != 0)) sign = -sign;
  return {sign, std::log(std::fabs(R_)) - u * u + k * std::log(std::fabs(u)) +
                    std::log(std::fabs(lp))};
}

double SDCRAnFn::eval(double x) const {
  if (x == 0.0) return 0.0;
  const double u = 1.0 / x;
  if (u * u > 600.0) return eval_log(x).value();
  const double s = std::sin(u), c = std::cos(u);
  double sum = 0.0;
  for (const auto& t : terms_) sum += std::pow(u, t.i) * t.T(s, c);
  return R_ * std::exp(-u * u) * std::pow(u, j0_) * sum;
}

// With u = 1/x and du/dx = -u^2:
//   d/dx [e^{-u^2} u^k P(s,c)] = e^{-u^2} [2 u^{k+3} P - k u^{k+1} P
//                                          + u^{k+2} (s P_c - c P_s)].
SDCRAnFn SDCRAnFn::derivative() const {
  std::vector<SDCRAnTerm> out;
  for (const auto& t : terms_) {
    const int k = j0_ + t.i;
    out.push_back({t.i + 3, t.T.scaled(2.0)});
    if (k != 0) out.push_back({t.i + 1, t.T.scaled(-static_cast<double>(k))});
    TrigPoly osc = t.T.d_dc().times_s() - t.T.d_ds().times_c();
    if (!osc.is_zero()) out.push_back({t.i + 2, std::move(osc)});
  }
  return SDCRAnFn(R_, j0_, std::move(out));
}

SDCRAnFn SDCRAnFn::nth_derivative(int n) const {
  SDCRAnFn f = *this;
  for (int k = 0; k < n; ++k) f = f.derivative();
  return f;
}

SDCRAnFn SDCRAnFn::scaled(double k) const { return SDCRAnFn(R_ * k, j0_, terms_); }

bool SDCRAnFn::oscillates() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const SDCRAnTerm& t) { return !t.T.is_constant(); });
}

}  // namespace reebscape
