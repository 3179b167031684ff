#include "mfg/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mfg/simplex.hpp"

namespace mfg {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& where,
                               const std::string& what) {
  throw Error(ErrorKind::schema, where + ": " + what);
}

int require_int(const ordered_json& j, const char* field,
                const std::string& where) {
  if (!j.contains(field)) schema_error(where, std::string("missing \"") + field + "\"");
  const auto& v = j.at(field);
  if (!v.is_number_integer()) {
    schema_error(where, std::string("\"") + field + "\" must be an integer");
  }
  return v.get<int>();
}

double require_number(const ordered_json& j, const char* field,
                      const std::string& where) {
  if (!j.contains(field)) schema_error(where, std::string("missing \"") + field + "\"");
  const auto& v = j.at(field);
  if (!v.is_number()) {
    schema_error(where, std::string("\"") + field + "\" must be a number");
  }
  return v.get<double>();
}

PolynomialField parse_poly(const ordered_json& j, int states,
                           const std::string& where) {
  if (!j.is_array()) schema_error(where, "\"poly\" must be an array of terms");
  std::vector<PolyTerm> terms;
  std::set<std::vector<int>> seen;
  int idx = 0;
  for (const auto& t : j) {
    std::ostringstream loc;
    loc << where << ".poly[" << idx << "]";
    if (!t.is_object()) schema_error(loc.str(), "term must be an object");
    if (!t.contains("exp") || !t.at("exp").is_array()) {
      schema_error(loc.str(), "missing \"exp\" array");
    }
    PolyTerm term;
    for (const auto& e : t.at("exp")) {
      if (!e.is_number_integer() || e.get<int>() < 0) {
        schema_error(loc.str(), "\"exp\" entries must be nonnegative integers");
      }
      term.exponents.push_back(e.get<int>());
    }
    if (static_cast<int>(term.exponents.size()) != states) {
      schema_error(loc.str(), "\"exp\" length must equal \"states\"");
    }
    if (!seen.insert(term.exponents).second) {
      schema_error(loc.str(), "duplicate exponent vector in \"poly\"");
    }
    term.coefficient = require_number(t, "coef", loc.str());
    terms.push_back(std::move(term));
    ++idx;
  }
  return PolynomialField(states, std::move(terms));
}

ordered_json poly_to_json(const PolynomialField& p) {
  ordered_json out = ordered_json::array();
  for (const PolyTerm& t : p.terms()) {
    ordered_json term;
    term["exp"] = t.exponents;
    term["coef"] = t.coefficient;
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace

LoadedModel load_model(const std::string& bytes) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::schema, std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) schema_error("document", "top level must be an object");

  const int S = require_int(doc, "states", "document");
  const int A = require_int(doc, "actions", "document");
  if (S < 2) schema_error("document", "\"states\" must be > 1");
  if (A < 1) schema_error("document", "\"actions\" must be >= 1");
  const double beta = require_number(doc, "beta", "document");
  if (!(beta > 0.0 && beta < 1.0)) {
    std::ostringstream os;
    os << "\"beta\" must lie strictly in (0,1), got " << beta;
    schema_error("document", os.str());
  }

  std::vector<PolynomialField> rates(
      static_cast<std::size_t>(S) * S * A, PolynomialField::zero(S));
  std::vector<PolynomialField> rewards(static_cast<std::size_t>(S) * A,
                                       PolynomialField::zero(S));

  std::set<std::tuple<int, int, int>> seen_rates;
  if (doc.contains("rates")) {
    if (!doc.at("rates").is_array()) {
      schema_error("document", "\"rates\" must be an array");
    }
    int idx = 0;
    for (const auto& entry : doc.at("rates")) {
      std::ostringstream loc;
      loc << "rates[" << idx << "]";
      if (!entry.is_object()) schema_error(loc.str(), "entry must be an object");
      const int i = require_int(entry, "from", loc.str());
      const int j = require_int(entry, "to", loc.str());
      const int a = require_int(entry, "action", loc.str());
      if (i < 1 || i > S || j < 1 || j > S || a < 1 || a > A) {
        schema_error(loc.str(), "index out of range (indices are 1-based)");
      }
      if (i == j) {
        schema_error(loc.str(),
                     "diagonal rate entries must be omitted (computed as "
                     "negated row sums)");
      }
      if (!seen_rates.insert({i, j, a}).second) {
        std::ostringstream os;
        os << "duplicate rate entry (from=" << i << ", to=" << j
           << ", action=" << a << ")";
        schema_error(loc.str(), os.str());
      }
      if (!entry.contains("poly")) schema_error(loc.str(), "missing \"poly\"");
      rates[(static_cast<std::size_t>(i - 1) * S + (j - 1)) * A + (a - 1)] =
          parse_poly(entry.at("poly"), S, loc.str());
      ++idx;
    }
  }

  std::set<std::pair<int, int>> seen_rewards;
  if (doc.contains("rewards")) {
    if (!doc.at("rewards").is_array()) {
      schema_error("document", "\"rewards\" must be an array");
    }
    int idx = 0;
    for (const auto& entry : doc.at("rewards")) {
      std::ostringstream loc;
      loc << "rewards[" << idx << "]";
      if (!entry.is_object()) schema_error(loc.str(), "entry must be an object");
      const int i = require_int(entry, "state", loc.str());
      const int a = require_int(entry, "action", loc.str());
      if (i < 1 || i > S || a < 1 || a > A) {
        schema_error(loc.str(), "index out of range (indices are 1-based)");
      }
      if (!seen_rewards.insert({i, a}).second) {
        std::ostringstream os;
        os << "duplicate reward entry (state=" << i << ", action=" << a << ")";
        schema_error(loc.str(), os.str());
      }
      if (!entry.contains("poly")) schema_error(loc.str(), "missing \"poly\"");
      rewards[static_cast<std::size_t>(i - 1) * A + (a - 1)] =
          parse_poly(entry.at("poly"), S, loc.str());
      ++idx;
    }
  }

  LoadedModel out{GameModel(S, A, beta, std::move(rates), std::move(rewards)),
                  {}};

  // Cheap vertex scan for obviously negative off-diagonal rates; full grid
  // validation is validate()'s job.
  for (const auto& m : simplex_grid(S, 1)) {
    for (int a = 0; a < A; ++a) {
      for (int i = 0; i < S; ++i) {
        for (int j = 0; j < S; ++j) {
          if (i == j) continue;
          const double v = out.model.rate_poly(i, j, a).eval(m);
          if (v < -1e-12) {
            std::ostringstream os;
            os << "rate (from=" << i + 1 << ", to=" << j + 1
               << ", action=" << a + 1 << ") is negative (" << v
               << ") at a simplex vertex; run validate for details";
            out.warnings.push_back(os.str());
          }
        }
      }
    }
  }
  return out;
}

std::string save_model(const GameModel& model) {
  const int S = model.state_count();
  const int A = model.action_count();
  ordered_json doc;
  doc["states"] = S;
  doc["actions"] = A;
  doc["beta"] = model.discount();
  ordered_json rates = ordered_json::array();
  for (int i = 0; i < S; ++i) {
    for (int j = 0; j < S; ++j) {
      if (i == j) continue;
      for (int a = 0; a < A; ++a) {
        const PolynomialField& p = model.rate_poly(i, j, a);
        if (p.is_zero()) continue;
        ordered_json entry;
        entry["from"] = i + 1;
        entry["to"] = j + 1;
        entry["action"] = a + 1;
        entry["poly"] = poly_to_json(p);
        rates.push_back(std::move(entry));
      }
    }
  }
  doc["rates"] = std::move(rates);
  ordered_json rewards = ordered_json::array();
  for (int i = 0; i < S; ++i) {
    for (int a = 0; a < A; ++a) {
      const PolynomialField& p = model.reward_poly(i, a);
      if (p.is_zero()) continue;
      ordered_json entry;
      entry["state"] = i + 1;
      entry["action"] = a + 1;
      entry["poly"] = poly_to_json(p);
      rewards.push_back(std::move(entry));
    }
  }
  doc["rewards"] = std::move(rewards);
  return doc.dump(2) + "\n";
}

LoadedModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::io, "cannot open model file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

void save_model_file(const GameModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(ErrorKind::io, "cannot open output file: " + path);
  }
  out << save_model(model);
  if (!out) {
    throw Error(ErrorKind::io, "failed writing model file: " + path);
  }
}

}  // namespace mfg
