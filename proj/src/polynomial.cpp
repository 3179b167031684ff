#include "mfg/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "mfg/types.hpp"

namespace mfg {

PolynomialField::PolynomialField(int dim, std::vector<PolyTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  if (dim_ < 1) {
    throw Error(ErrorKind::invalid_argument, "PolynomialField: dim < 1");
  }
  for (const PolyTerm& t : terms_) {
    if (t.exponents.size() != static_cast<std::size_t>(dim_)) {
      throw Error(ErrorKind::invalid_argument,
                  "PolynomialField: exponent vector length != dim");
    }
    for (int e : t.exponents) {
      if (e < 0) {
        throw Error(ErrorKind::invalid_argument,
                    "PolynomialField: negative exponent");
      }
    }
  }
  canonicalize();
}

PolynomialField PolynomialField::constant(int dim, double c) {
  return PolynomialField(dim, {PolyTerm{std::vector<int>(dim, 0), c}});
}

PolynomialField PolynomialField::monomial(int dim, int var, int power,
                                          double c) {
  if (var < 0 || var >= dim) {
    throw Error(ErrorKind::invalid_argument, "monomial: variable out of range");
  }
  std::vector<int> e(static_cast<std::size_t>(dim), 0);
  e[static_cast<std::size_t>(var)] = power;
  return PolynomialField(dim, {PolyTerm{std::move(e), c}});
}

void PolynomialField::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const PolyTerm& a, const PolyTerm& b) {
              return a.exponents < b.exponents;
            });
  std::vector<PolyTerm> merged;
  for (PolyTerm& t : terms_) {
    if (!merged.empty() && merged.back().exponents == t.exponents) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const PolyTerm& t) { return t.coefficient == 0.0; });
  terms_ = std::move(merged);
}

double PolynomialField::eval(std::span<const double> m) const {
  double sum = 0.0;
  for (const PolyTerm& t : terms_) {
    double prod = t.coefficient;
    for (int i = 0; i < dim_; ++i) {
      const int e = t.exponents[static_cast<std::size_t>(i)];
      const double mi = m[static_cast<std::size_t>(i)];
      for (int k = 0; k < e; ++k) prod *= mi;
    }
    sum += prod;
  }
  return sum;
}

std::vector<double> PolynomialField::eval_gradient(
    std::span<const double> m) const {
  std::vector<double> grad(static_cast<std::size_t>(dim_), 0.0);
  for (const PolyTerm& t : terms_) {
    for (int k = 0; k < dim_; ++k) {
      const int ek = t.exponents[static_cast<std::size_t>(k)];
      if (ek == 0) continue;
      double prod = t.coefficient * ek;
      for (int i = 0; i < dim_; ++i) {
        const int e = t.exponents[static_cast<std::size_t>(i)] - (i == k ? 1 : 0);
        const double mi = m[static_cast<std::size_t>(i)];
        for (int p = 0; p < e; ++p) prod *= mi;
      }
      grad[static_cast<std::size_t>(k)] += prod;
    }
  }
  return grad;
}

double PolynomialField::constant_coefficient() const {
  for (const PolyTerm& t : terms_) {
    bool all_zero = std::all_of(t.exponents.begin(), t.exponents.end(),
                                [](int e) { return e == 0; });
    if (all_zero) return t.coefficient;
  }
  return 0.0;
}

void PolynomialField::shift_constant(double delta) {
  if (delta == 0.0) return;
  PolyTerm t{std::vector<int>(static_cast<std::size_t>(dim_), 0), delta};
  terms_.push_back(std::move(t));
  canonicalize();
}

PolynomialField& PolynomialField::operator+=(const PolynomialField& other) {
  if (other.is_zero()) return *this;
  if (is_zero() && dim_ == 0) {
    *this = other;
    return *this;
  }
  if (dim_ != other.dim_) {
    throw Error(ErrorKind::invalid_argument, "polynomial dim mismatch");
  }
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

PolynomialField PolynomialField::operator-() const { return scaled(-1.0); }

PolynomialField PolynomialField::scaled(double factor) const {
  PolynomialField out = *this;
  for (PolyTerm& t : out.terms_) t.coefficient *= factor;
  out.canonicalize();
  return out;
}

PolynomialField operator+(PolynomialField a, const PolynomialField& b) {
  a += b;
  return a;
}

}  // namespace mfg
