#include "mfg/fixtures.hpp"

namespace mfg::fixtures {

namespace {

PolynomialField c(double value) { return PolynomialField::constant(2, value); }

// a + b * m_1 + c * m_2 over the 2-state simplex.
PolynomialField affine2(double a, double b1, double b2) {
  std::vector<PolyTerm> terms;
  if (a != 0.0) terms.push_back({{0, 0}, a});
  if (b1 != 0.0) terms.push_back({{1, 0}, b1});
  if (b2 != 0.0) terms.push_back({{0, 1}, b2});
  return PolynomialField(2, std::move(terms));
}

// Dense S*S*A rate table for S = 2, diagonal slots ignored.
std::vector<PolynomialField> rates2(int actions,
                                    const std::vector<PolynomialField>& up,
                                    const std::vector<PolynomialField>& down) {
  std::vector<PolynomialField> rates(static_cast<std::size_t>(4) * actions,
                                     PolynomialField::zero(2));
  for (int a = 0; a < actions; ++a) {
    rates[(0 * 2 + 1) * static_cast<std::size_t>(actions) + a] =
        up[static_cast<std::size_t>(a)];
    rates[(1 * 2 + 0) * static_cast<std::size_t>(actions) + a] =
        down[static_cast<std::size_t>(a)];
  }
  return rates;
}

}  // namespace

GameModel ref_1a() {
  return GameModel(2, 1, 0.5, rates2(1, {c(1.0)}, {c(2.0)}),
                   {c(1.0), c(0.0)});
}

GameModel ref_dom() {
  return GameModel(2, 2, 0.5, rates2(2, {c(1.0), c(1.0)}, {c(2.0), c(2.0)}),
                   {c(2.0), c(1.0), c(2.0), c(1.0)});
}

GameModel ref_ind() {
  return GameModel(2, 2, 0.5, rates2(2, {c(1.0), c(1.0)}, {c(2.0), c(2.0)}),
                   {c(1.0), c(1.0), c(0.0), c(0.0)});
}

GameModel ref_knife() {
  const PolynomialField slope = affine2(0.0, 1.5, 0.0);
  return GameModel(2, 2, 0.5, rates2(2, {c(1.0), c(1.0)}, {c(2.0), c(2.0)}),
                   {c(1.0), slope, c(1.0), slope});
}

GameModel ref_2x2() {
  const auto up = std::vector<PolynomialField>{affine2(0.6, 0.0, 0.4),
                                               affine2(1.2, 0.0, 0.2)};
  const auto down = std::vector<PolynomialField>{affine2(0.8, 0.2, 0.0),
                                                 affine2(0.3, 0.2, 0.0)};
  return GameModel(2, 2, 0.5, rates2(2, up, down),
                   {affine2(2.0, -1.0, 0.0), affine2(1.4, -1.0, 0.0),
                    affine2(1.0, 0.0, -1.0), affine2(1.6, 0.0, -1.0)});
}

const std::vector<std::pair<std::string, GameModel>>& all() {
  static const std::vector<std::pair<std::string, GameModel>> table = {
      {"ref-1a", ref_1a()},
      {"ref-dom", ref_dom()},
      {"ref-ind", ref_ind()},
      {"ref-knife", ref_knife()},
      {"ref-2x2", ref_2x2()},
  };
  return table;
}

std::optional<GameModel> by_name(const std::string& name) {
  for (const auto& [key, model] : all()) {
    if (key == name) return model;
  }
  return std::nullopt;
}

}  // namespace mfg::fixtures
