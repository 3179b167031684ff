#ifndef MFG_POLYNOMIAL_HPP
#define MFG_POLYNOMIAL_HPP

#include <span>
#include <vector>

namespace mfg {

// One monomial: coefficient * prod_i m_i^{exponents[i]}.
struct PolyTerm {
  std::vector<int> exponents;
  double coefficient = 0.0;

  bool operator==(const PolyTerm&) const = default;
};

// Multivariate polynomial over the state simplex, kept in canonical form:
// terms sorted lexicographically by exponent vector, duplicate exponent
// vectors merged, exact-zero coefficients dropped.
class PolynomialField {
 public:
  PolynomialField() : dim_(0) {}
  PolynomialField(int dim, std::vector<PolyTerm> terms);

  static PolynomialField zero(int dim) { return PolynomialField(dim, {}); }
  static PolynomialField constant(int dim, double c);
  // Single term c * m_{var}^power.
  static PolynomialField monomial(int dim, int var, int power, double c);

  int dim() const { return dim_; }
  const std::vector<PolyTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  double eval(std::span<const double> m) const;
  // d/dm_k at m, for every k.
  std::vector<double> eval_gradient(std::span<const double> m) const;

  double constant_coefficient() const;
  // Adds delta to the coefficient of the constant term.
  void shift_constant(double delta);

  PolynomialField& operator+=(const PolynomialField& other);
  PolynomialField operator-() const;
  PolynomialField scaled(double factor) const;

  bool operator==(const PolynomialField&) const = default;

 private:
  void canonicalize();

  int dim_;
  std::vector<PolyTerm> terms_;
};

PolynomialField operator+(PolynomialField a, const PolynomialField& b);

}  // namespace mfg

#endif  // MFG_POLYNOMIAL_HPP
