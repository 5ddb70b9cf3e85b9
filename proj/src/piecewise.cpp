#include "condnum/piecewise.hpp"

#include "condnum/common.hpp"

#include <algorithm>

namespace condnum {

double Poly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::derivative() const {
  Poly d;
  for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(static_cast<double>(i) * c[i]);
  if (d.c.empty()) d.c.push_back(0.0);
  return d;
}

Poly Poly::antiderivative() const {
  Poly a;
  a.c.push_back(0.0);
  for (std::size_t i = 0; i < c.size(); ++i) a.c.push_back(c[i] / static_cast<double>(i + 1));
  return a;
}

PiecewisePoly::PiecewisePoly(std::vector<double> breaks, std::vector<Poly> pieces)
    : breaks_(std::move(breaks)), pieces_(std::move(pieces)) {
  if (pieces_.size() != breaks_.size() + 1)
    throw Error(ErrorCode::invalid_objective, "piecewise: need one more piece than breaks");
  if (!std::is_sorted(breaks_.begin(), breaks_.end()))
    throw Error(ErrorCode::invalid_objective, "piecewise: breaks must be sorted");
}

std::size_t PiecewisePoly::piece_index(double x) const {
  return static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), x) -
                                  breaks_.begin());
}

double PiecewisePoly::operator()(double x) const { return pieces_[piece_index(x)](x); }

PiecewisePoly PiecewisePoly::derivative() const {
  std::vector<Poly> d;
  for (const auto& p : pieces_) d.push_back(p.derivative());
  return PiecewisePoly(breaks_, std::move(d));
}

PiecewisePoly PiecewisePoly::integrate(const PiecewisePoly& derivative, double anchor,
                                       double value) {
  std::vector<Poly> out;
  for (const auto& p : derivative.pieces_) out.push_back(p.antiderivative());
  const auto& br = derivative.breaks_;
  std::size_t k = derivative.piece_index(anchor);
  out[k].c[0] += value - out[k](anchor);
  for (std::size_t i = k + 1; i < out.size(); ++i) {
    double b = br[i - 1];
    out[i].c[0] += out[i - 1](b) - out[i](b);
  }
  for (std::size_t i = k; i-- > 0;) {
    double b = br[i];
    out[i].c[0] += out[i + 1](b) - out[i](b);
  }
  return PiecewisePoly(br, std::move(out));
}

}  // namespace condnum
