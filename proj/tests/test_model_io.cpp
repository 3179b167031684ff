#include <cstdio>
#include <fstream>
#include <string>

#include <doctest.h>

#include "mfg/fixtures.hpp"
#include "mfg/model.hpp"
#include "mfg/model_io.hpp"
#include "test_util.hpp"

using mfg::ErrorKind;
using mfg::GameModel;

namespace {

bool models_equal(const GameModel& a, const GameModel& b) {
  if (a.state_count() != b.state_count() ||
      a.action_count() != b.action_count() || a.discount() != b.discount()) {
    return false;
  }
  for (int i = 0; i < a.state_count(); ++i) {
    for (int aidx = 0; aidx < a.action_count(); ++aidx) {
      if (!(a.reward_poly(i, aidx) == b.reward_poly(i, aidx))) return false;
      for (int j = 0; j < a.state_count(); ++j) {
        if (!(a.rate_poly(i, j, aidx) == b.rate_poly(i, j, aidx))) return false;
      }
    }
  }
  return true;
}

std::string minimal_doc(const std::string& extra_rate_fields) {
  return std::string(R"({
    "states": 2, "actions": 1, "beta": 0.5,
    "rates": [
      {"from": 1, "to": 2, "action": 1, "poly": [{"exp": [0, 0], "coef": 1.0}]})") +
         extra_rate_fields + R"(
    ],
    "rewards": [
      {"state": 1, "action": 1, "poly": [{"exp": [1, 0], "coef": 2.0}]}
    ]
  })";
}

}  // namespace

TEST_SUITE("model-io") {

TEST_CASE("save/load reproduces every coefficient exactly") {
  for (const auto& [name, model] : mfg::fixtures::all()) {
    CAPTURE(name);
    const mfg::LoadedModel back = mfg::load_model(mfg::save_model(model));
    CHECK(models_equal(model, back.model));
    CHECK(back.warnings.empty());
  }
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const GameModel model = testutil::random_affine_model(3, 2, seed);
    const mfg::LoadedModel back = mfg::load_model(mfg::save_model(model));
    CHECK(models_equal(model, back.model));
  }
}

TEST_CASE("packaged fixture files match the in-code builders") {
  for (const auto& [name, model] : mfg::fixtures::all()) {
    CAPTURE(name);
    const std::string path =
        testutil::source_root() + "/fixtures/" + name + ".json";
    const mfg::LoadedModel loaded = mfg::load_model_file(path);
    CHECK(models_equal(model, loaded.model));
  }
}

TEST_CASE("a minimal document loads with defaults for omitted entries") {
  const mfg::LoadedModel loaded = mfg::load_model(minimal_doc(""));
  const GameModel& m = loaded.model;
  CHECK(m.state_count() == 2);
  CHECK(m.action_count() == 1);
  CHECK(m.discount() == 0.5);
  // Omitted off-diagonal rate (2 -> 1) defaults to zero.
  CHECK(m.rate_poly(1, 0, 0).is_zero());
  CHECK(m.rate_poly(0, 1, 0).constant_coefficient() == 1.0);
  // Diagonal is derived: q_{11} = -q_{12}.
  CHECK(m.rate_poly(0, 0, 0).constant_coefficient() == -1.0);
  CHECK(m.reward_poly(1, 0).is_zero());
}

TEST_CASE("schema violations raise schema errors naming the field") {
  struct Case {
    const char* label;
    std::string doc;
    const char* needle;
  };
  const Case cases[] = {
      {"not json", "not json at all {", ""},
      {"top level array", "[1, 2]", "top level"},
      {"missing states", R"({"actions": 1, "beta": 0.5})", "states"},
      {"one state", R"({"states": 1, "actions": 1, "beta": 0.5})", "states"},
      {"zero actions", R"({"states": 2, "actions": 0, "beta": 0.5})", "actions"},
      {"beta at 1", R"({"states": 2, "actions": 1, "beta": 1.0})", "beta"},
      {"beta negative", R"({"states": 2, "actions": 1, "beta": -0.25})", "beta"},
      {"diagonal rate entry",
       minimal_doc(R"(, {"from": 1, "to": 1, "action": 1, "poly": []})"), "diagonal"},
      {"duplicate rate entry",
       minimal_doc(R"(, {"from": 1, "to": 2, "action": 1, "poly": []})"), "duplicate"},
      {"rate index out of range",
       minimal_doc(R"(, {"from": 3, "to": 1, "action": 1, "poly": []})"), "range"},
      {"action index out of range",
       minimal_doc(R"(, {"from": 2, "to": 1, "action": 2, "poly": []})"), "range"},
      {"bad exp length",
       minimal_doc(R"(, {"from": 2, "to": 1, "action": 1,
                         "poly": [{"exp": [1], "coef": 1.0}]})"), "exp"},
      {"negative exponent",
       minimal_doc(R"(, {"from": 2, "to": 1, "action": 1,
                         "poly": [{"exp": [-1, 0], "coef": 1.0}]})"), "exp"},
      {"coef not a number",
       minimal_doc(R"(, {"from": 2, "to": 1, "action": 1,
                         "poly": [{"exp": [1, 0], "coef": "x"}]})"), "coef"},
      {"duplicate exponent vector",
       minimal_doc(R"(, {"from": 2, "to": 1, "action": 1,
                         "poly": [{"exp": [1, 0], "coef": 1.0},
                                  {"exp": [1, 0], "coef": 2.0}]})"), "duplicate"},
  };
  for (const Case& c : cases) {
    CAPTURE(c.label);
    std::string message;
    try {
      mfg::load_model(c.doc);
      FAIL("expected a schema error for: ", c.label);
    } catch (const mfg::Error& e) {
      CHECK(e.kind() == ErrorKind::schema);
      message = e.what();
    }
    CHECK(message.find(c.needle) != std::string::npos);
  }
}

TEST_CASE("vertex-negative rates load with a warning and fail validation") {
  // q_{12} = m_1 - 0.5: well-formed document, invalid game.
  const std::string doc = R"({
    "states": 2, "actions": 1, "beta": 0.5,
    "rates": [
      {"from": 1, "to": 2, "action": 1,
       "poly": [{"exp": [1, 0], "coef": 1.0}, {"exp": [0, 0], "coef": -0.5}]}
    ],
    "rewards": []
  })";
  const mfg::LoadedModel loaded = mfg::load_model(doc);
  CHECK(!loaded.warnings.empty());
  CHECK(!validate(loaded.model, 20).passed);
}

TEST_CASE("file round trip and io failures") {
  const std::string path = "model_io_roundtrip_tmp.json";
  const GameModel model = mfg::fixtures::ref_2x2();
  mfg::save_model_file(model, path);
  const mfg::LoadedModel back = mfg::load_model_file(path);
  CHECK(models_equal(model, back.model));
  std::remove(path.c_str());

  CHECK(testutil::error_kind_of([] {
          mfg::load_model_file("does-not-exist-anywhere.json");
        }) == ErrorKind::io);
}

}  // TEST_SUITE
