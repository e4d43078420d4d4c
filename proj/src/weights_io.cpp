#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shift2d/errors.hpp"
#include "shift2d/numfmt.hpp"
#include "shift2d/shift_model.hpp"

namespace shift2d {

namespace {

using nlohmann::json;

std::vector<double> read_grid(const json& doc, const char* key, int& n1, int& n2) {
  if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty())
    fail(ErrorCode::SchemaError, std::string("field '") + key + "' must be a non-empty 2D array");
  const json& rows = doc[key];
  n1 = static_cast<int>(rows.size());
  n2 = -1;
  std::vector<double> out;
  for (const json& row : rows) {
    if (!row.is_array() || row.empty()) fail(ErrorCode::SchemaError, std::string("rows of '") + key + "' must be non-empty arrays");
    if (n2 < 0) n2 = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != n2) fail(ErrorCode::SchemaError, std::string("'") + key + "' is ragged");
    for (const json& v : row) {
      if (!v.is_number()) fail(ErrorCode::SchemaError, std::string("'") + key + "' holds a non-numeric entry");
      out.push_back(v.get<double>());
    }
  }
  return out;
}

}  // namespace

WeightDiagram parse_weights(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::SchemaError, std::string("weight file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::SchemaError, "weight file must hold a JSON object");
  std::string name = "unnamed";
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) fail(ErrorCode::SchemaError, "'name' must be a string");
    name = doc["name"].get<std::string>();
  }
  int an1 = 0, an2 = 0, bn1 = 0, bn2 = 0;
  std::vector<double> alpha = read_grid(doc, "alpha", an1, an2);
  std::vector<double> beta = read_grid(doc, "beta", bn1, bn2);
  if (an1 != bn1 || an2 != bn2) fail(ErrorCode::SchemaError, "'alpha' and 'beta' must have the same shape");
  TailKind tail = TailKind::Constant;
  std::string formula;
  if (doc.contains("tail")) {
    if (!doc["tail"].is_string()) fail(ErrorCode::SchemaError, "'tail' must be a string");
    const std::string t = doc["tail"].get<std::string>();
    if (t.rfind("formula:", 0) == 0) {
      tail = TailKind::Formula;
      formula = t.substr(8);
      if (!is_known_formula(formula)) fail(ErrorCode::SchemaError, "unknown tail formula '" + formula + "'");
    } else if (t != "constant") {
      fail(ErrorCode::SchemaError, "'tail' must be \"constant\" or \"formula:<id>\"");
    }
  }
  WeightDiagram d(name, an1, an2, std::move(alpha), std::move(beta), tail, formula);
  require_valid(d);
  return d;
}

WeightDiagram load_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open weight file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_weights(ss.str());
}

std::string serialize_weights(const WeightDiagram& d) {
  std::ostringstream os;
  os << "{\n  \"name\": " << json(d.name()).dump() << ",\n";
  for (const char* key : {"alpha", "beta"}) {
    const auto& core = key[0] == 'a' ? d.alpha_core() : d.beta_core();
    os << "  \"" << key << "\": [\n";
    for (int k1 = 0; k1 < d.n1(); ++k1) {
      os << "    [";
      for (int k2 = 0; k2 < d.n2(); ++k2) {
        if (k2) os << ", ";
        os << format_double(core[static_cast<size_t>(k1) * d.n2() + k2]);
      }
      os << "]" << (k1 + 1 < d.n1() ? "," : "") << "\n";
    }
    os << "  ],\n";
  }
  os << "  \"tail\": \"" << (d.tail() == TailKind::Formula ? "formula:" + d.formula_id() : std::string("constant"))
     << "\"\n}\n";
  return os.str();
}

void save_weights(const WeightDiagram& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write weight file '" + path + "'");
  out << serialize_weights(d);
  if (!out) fail(ErrorCode::IoError, "write failed for '" + path + "'");
}

}  // namespace shift2d
