#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfg/cli.hpp"
#include "mfg/model_io.hpp"
#include "test_util.hpp"

using testutil::source_root;

// Checks the documented JSON report shapes in docs/schemas/ against live CLI
// output, using a small validator for the schema subset those files use.

namespace {

using nlohmann::json;

// Validates `value` against `schema`, resolving "$ref": "#/$defs/NAME"
// against `root`. Returns "" when valid, else a path-prefixed reason.
std::string check_schema(const json& value, const json& schema,
                         const json& root, const std::string& path) {
  if (schema.contains("$ref")) {
    const std::string ref = schema["$ref"].get<std::string>();
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0) return path + ": unsupported $ref " + ref;
    const std::string name = ref.substr(prefix.size());
    if (!root.contains("$defs") || !root["$defs"].contains(name)) {
      return path + ": unresolved $ref " + ref;
    }
    return check_schema(value, root["$defs"][name], root, path);
  }

  if (schema.contains("oneOf")) {
    for (const auto& branch : schema["oneOf"]) {
      if (check_schema(value, branch, root, path).empty()) return "";
    }
    return path + ": matches no oneOf branch";
  }

  if (schema.contains("type")) {
    auto matches = [&](const std::string& t) {
      if (t == "object") return value.is_object();
      if (t == "array") return value.is_array();
      if (t == "string") return value.is_string();
      if (t == "boolean") return value.is_boolean();
      if (t == "integer") return value.is_number_integer();
      if (t == "number") return value.is_number();
      if (t == "null") return value.is_null();
      return false;
    };
    const json& type = schema["type"];
    bool ok = false;
    if (type.is_string()) {
      ok = matches(type.get<std::string>());
    } else {
      for (const auto& t : type) ok = ok || matches(t.get<std::string>());
    }
    if (!ok) return path + ": type mismatch (" + type.dump() + ")";
  }

  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& candidate : schema["enum"]) found = found || value == candidate;
    if (!found) return path + ": " + value.dump() + " not in enum";
  }

  if (value.is_number()) {
    const double x = value.get<double>();
    if (schema.contains("minimum") && x < schema["minimum"].get<double>()) {
      return path + ": below minimum";
    }
    if (schema.contains("maximum") && x > schema["maximum"].get<double>()) {
      return path + ": above maximum";
    }
    if (schema.contains("exclusiveMinimum") &&
        x <= schema["exclusiveMinimum"].get<double>()) {
      return path + ": not above exclusiveMinimum";
    }
    if (schema.contains("exclusiveMaximum") &&
        x >= schema["exclusiveMaximum"].get<double>()) {
      return path + ": not below exclusiveMaximum";
    }
  }

  if (value.is_array()) {
    if (schema.contains("minItems") &&
        value.size() < schema["minItems"].get<std::size_t>()) {
      return path + ": fewer than minItems";
    }
    if (schema.contains("maxItems") &&
        value.size() > schema["maxItems"].get<std::size_t>()) {
      return path + ": more than maxItems";
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string err =
            check_schema(value[i], schema["items"], root,
                         path + "[" + std::to_string(i) + "]");
        if (!err.empty()) return err;
      }
    }
  }

  if (value.is_object()) {
    const json props =
        schema.contains("properties") ? schema["properties"] : json::object();
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) {
          return path + ": missing required key " + key.get<std::string>();
        }
      }
    }
    if (schema.contains("additionalProperties") &&
        schema["additionalProperties"] == json(false)) {
      for (const auto& [key, sub] : value.items()) {
        (void)sub;
        if (!props.contains(key)) return path + ": unexpected key " + key;
      }
    }
    for (const auto& [key, sub] : value.items()) {
      if (props.contains(key)) {
        const std::string err =
            check_schema(sub, props[key], root, path + "." + key);
        if (!err.empty()) return err;
      }
    }
  }

  return "";
}

json load_schema(const std::string& name) {
  const std::string path = source_root() + "/docs/schemas/" + name;
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), path);
  return json::parse(in);
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), path);
  return json::parse(in);
}

// Runs the CLI in-process, requires success, and parses stdout as JSON.
json cli_json(std::vector<std::string> args, int expect_exit = 0) {
  args.push_back("--format");
  args.push_back("json");
  std::ostringstream out;
  std::ostringstream err;
  const int code = mfg::cli::run(args, out, err);
  REQUIRE_MESSAGE(code == expect_exit, err.str());
  return json::parse(out.str());
}

void require_valid(const json& doc, const std::string& schema_name) {
  const json schema = load_schema(schema_name);
  const std::string err = check_schema(doc, schema, schema, "$");
  CHECK_MESSAGE(err.empty(), (schema_name + ": " + err));
}

}  // namespace

TEST_SUITE("schemas") {

TEST_CASE("validator rejects shape violations") {
  const json schema = load_schema("distance-report.schema.json");
  auto fails = [&](const json& doc) {
    return !check_schema(doc, schema, schema, "$").empty();
  };
  CHECK(check_schema(json{{"distance", 1.5}, {"grid_resolution", 20}}, schema,
                     schema, "$")
            .empty());
  CHECK(fails(json{{"distance", 1.5}}));                      // missing key
  CHECK(fails(json{{"distance", "x"}, {"grid_resolution", 20}}));
  CHECK(fails(json{{"distance", -0.1}, {"grid_resolution", 20}}));
  CHECK(fails(json{{"distance", 1.5}, {"grid_resolution", 2.5}}));
  CHECK(fails(json{{"distance", 1.5}, {"grid_resolution", 20}, {"extra", 1}}));
  CHECK(fails(json::array({1, 2})));
}

TEST_CASE("validator handles enums, refs, and nullable branches") {
  const json schema = load_schema("essential-report.schema.json");
  // Broken verdict enums or non-null/non-object optionals must be caught.
  json doc = cli_json({"essential", "ref-dom"});
  REQUIRE(check_schema(doc, schema, schema, "$").empty());
  json bad = doc;
  bad["unique_criterion"]["verdict"] = "maybe";
  CHECK_FALSE(check_schema(bad, schema, schema, "$").empty());
  bad = doc;
  bad["equilibria"][0]["probe"] = "none";
  CHECK_FALSE(check_schema(bad, schema, schema, "$").empty());
  bad = doc;
  bad["equilibria"][0]["characterization"]["persistence"] = json::array();
  CHECK_FALSE(check_schema(bad, schema, schema, "$").empty());
}

TEST_CASE("model files and save_model match the model schema") {
  const json schema = load_schema("model.schema.json");
  for (const std::string name :
       {"ref-1a", "ref-dom", "ref-ind", "ref-knife", "ref-2x2"}) {
    const json doc =
        load_json_file(source_root() + "/fixtures/" + name + ".json");
    const std::string err = check_schema(doc, schema, schema, "$");
    CHECK_MESSAGE(err.empty(), (name + ": " + err));
  }
  const json saved = json::parse(mfg::save_model(
      mfg::load_model_file(source_root() + "/fixtures/ref-2x2.json").model));
  CHECK(check_schema(saved, schema, schema, "$").empty());
}

TEST_CASE("family fixture matches the family schema") {
  const json schema = load_schema("family.schema.json");
  const json doc = load_json_file(source_root() + "/fixtures/family-2x2.json");
  const std::string err = check_schema(doc, schema, schema, "$");
  CHECK_MESSAGE(err.empty(), err);
}

TEST_CASE("validate output matches its schema") {
  require_valid(cli_json({"validate", "ref-1a"}),
                "validate-report.schema.json");
}

TEST_CASE("equilibria output matches its schema") {
  require_valid(cli_json({"equilibria", "ref-knife"}),
                "equilibria-report.schema.json");
  require_valid(cli_json({"equilibria", "ref-2x2"}),
                "equilibria-report.schema.json");
}

TEST_CASE("essential output matches its schema") {
  require_valid(cli_json({"essential", "ref-dom"}),
                "essential-report.schema.json");
  // Not all certified (exit 1), and probe populated: exercises both optionals.
  require_valid(cli_json({"essential", "ref-knife", "--probe", "--deltas",
                          "0.01", "--samples", "4", "--seed", "5"},
                         1),
                "essential-report.schema.json");
}

TEST_CASE("probe output matches its schema") {
  require_valid(cli_json({"probe", "ref-dom", "--index", "0", "--deltas",
                          "0.05,0.005", "--samples", "4", "--seed", "9"}),
                "probe-report.schema.json");
}

TEST_CASE("ensemble output matches its schema") {
  require_valid(
      cli_json({"ensemble", source_root() + "/fixtures/family-2x2.json",
                "--count", "2", "--samples", "2", "--deltas", "0.05",
                "--seed", "3", "--inject", "ref-dom"}),
      "ensemble-report.schema.json");
}

TEST_CASE("distance output matches its schema") {
  require_valid(cli_json({"distance", "ref-dom", "ref-ind"}),
                "distance-report.schema.json");
}

TEST_CASE("mc-check output matches its schema") {
  require_valid(cli_json({"mc-check", "ref-1a", "--samples", "2000", "--seed",
                          "17"}),
                "mc-check-report.schema.json");
}

}  // TEST_SUITE
