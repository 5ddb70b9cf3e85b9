#pragma once

#include <vector>

namespace condnum {

// Polynomial in ascending coefficient order: c[0] + c[1] x + c[2] x^2 + ...
struct Poly {
  std::vector<double> c;

  double operator()(double x) const;
  Poly derivative() const;
  Poly antiderivative() const;  // zero constant term
};

// Piecewise polynomial on the real line. Piece i covers [breaks[i-1], breaks[i]);
// the first and last pieces extend to -inf and +inf.
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<double> breaks, std::vector<Poly> pieces);

  // Antiderivative whose pieces are glued continuously, with F(anchor) = value.
  static PiecewisePoly integrate(const PiecewisePoly& derivative, double anchor, double value);

  double operator()(double x) const;
  PiecewisePoly derivative() const;

  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<Poly>& pieces() const { return pieces_; }
  std::size_t piece_index(double x) const;

 private:
  std::vector<double> breaks_;
  std::vector<Poly> pieces_;
};

}  // namespace condnum
