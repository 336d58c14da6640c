#include "scenario.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace bifree::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ScenarioError("scenario: " + (where.empty() ? std::string("/") : where) + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, "missing field '" + key + "'");
  return *it;
}

void only_fields(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(where + "/" + key, "unknown field");
  }
}

std::size_t to_size(const json& v, const std::string& where, std::size_t min = 0) {
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min)) {
    fail(where, "expected an integer >= " + std::to_string(min));
  }
  return v.get<std::size_t>();
}

std::string to_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

Rational to_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) fail(where, "expected a rational \"p/q\" or an integer");
  const std::string text = v.get<std::string>();
  Rational q;
  try {
    if (text.empty() || text.find_first_not_of("+-0123456789/") != std::string::npos) throw std::invalid_argument("");
    q = Rational(text);
  } catch (const std::invalid_argument&) {
    fail(where, "malformed rational '" + text + "'");
  }
  if (q.get_den() == 0) fail(where, "zero denominator");
  q.canonicalize();
  return q;
}

Matrix to_matrix(const json& v, std::size_t n, const std::string& where) {
  if (!v.is_array() || v.size() != n) fail(where, "expected " + std::to_string(n) + " rows");
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string row = where + "/" + std::to_string(r);
    if (!v[r].is_array() || v[r].size() != n) fail(row, "expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = to_rational(v[r][c], row + "/" + std::to_string(c));
  }
  return m;
}

json from_matrix(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* kind_name(OperatorEntry::Kind k) {
  switch (k) {
    case OperatorEntry::Kind::Lb:
      return "lb";
    case OperatorEntry::Kind::Rb:
      return "rb";
    default:
      return "matrix";
  }
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }
  only_fields(doc, {"b_dim", "bimodules", "operators", "free_product", "haar", "suite", "tuple"}, "");
  Scenario s;
  s.b_dim = to_size(member(doc, "b_dim", ""), "/b_dim", 1);

  std::map<std::string, std::size_t> bimodule_index;
  const json& bms = member(doc, "bimodules", "");
  if (!bms.is_array() || bms.empty()) fail("/bimodules", "expected a nonempty array");
  for (std::size_t i = 0; i < bms.size(); ++i) {
    const std::string at = "/bimodules/" + std::to_string(i);
    only_fields(bms[i], {"name", "copies"}, at);
    BimoduleEntry b{to_string(member(bms[i], "name", at), at + "/name"), to_size(member(bms[i], "copies", at), at + "/copies")};
    if (!bimodule_index.emplace(b.name, i).second) fail(at + "/name", "duplicate bimodule '" + b.name + "'");
    s.bimodules.push_back(std::move(b));
  }

  std::set<std::string> names;
  const json& ops = member(doc, "operators", "");
  if (!ops.is_array()) fail("/operators", "expected an array");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string at = "/operators/" + std::to_string(i);
    only_fields(ops[i], {"name", "bimodule", "side", "family", "matrix", "lb", "rb"}, at);
    OperatorEntry o;
    o.name = to_string(member(ops[i], "name", at), at + "/name");
    if (!names.insert(o.name).second) fail(at + "/name", "duplicate operator '" + o.name + "'");
    o.bimodule = to_string(member(ops[i], "bimodule", at), at + "/bimodule");
    auto bm = bimodule_index.find(o.bimodule);
    if (bm == bimodule_index.end()) fail(at + "/bimodule", "unknown bimodule '" + o.bimodule + "'");
    const std::string side = to_string(member(ops[i], "side", at), at + "/side");
    if (side != "left" && side != "right") fail(at + "/side", "expected \"left\" or \"right\"");
    o.side = side == "left" ? Side::Left : Side::Right;
    if (ops[i].contains("family")) {
      const json& f = ops[i]["family"];
      if (!f.is_number_integer() || f.get<int>() < 1) fail(at + "/family", "expected an integer >= 1");
      o.family = f.get<int>();
    }
    const int given = static_cast<int>(ops[i].contains("matrix")) + static_cast<int>(ops[i].contains("lb")) +
                      static_cast<int>(ops[i].contains("rb"));
    if (given != 1) fail(at, "exactly one of 'matrix', 'lb', 'rb' required");
    const Bimodule x(s.b_dim, s.bimodules[bm->second].copies);
    if (ops[i].contains("matrix")) {
      o.kind = OperatorEntry::Kind::Matrix;
      o.matrix = to_matrix(ops[i]["matrix"], x.dim_total(), at + "/matrix");
    } else {
      o.kind = ops[i].contains("lb") ? OperatorEntry::Kind::Lb : OperatorEntry::Kind::Rb;
      const char* key = kind_name(o.kind);
      o.matrix = to_matrix(ops[i][key], s.b_dim, at + "/" + key);
    }
    s.operators.push_back(std::move(o));
  }

  if (doc.contains("free_product")) {
    only_fields(doc["free_product"], {"depth"}, "/free_product");
    s.depth = to_size(member(doc["free_product"], "depth", "/free_product"), "/free_product/depth", 1);
  }
  if (doc.contains("haar")) {
    only_fields(doc["haar"], {"window"}, "/haar");
    s.window = to_size(member(doc["haar"], "window", "/haar"), "/haar/window", 1);
  }
  if (doc.contains("suite")) {
    const json& su = doc["suite"];
    only_fields(su, {"max_n", "seed", "budget"}, "/suite");
    if (su.contains("max_n")) s.max_n = to_size(su["max_n"], "/suite/max_n", 1);
    if (su.contains("seed")) s.seed = to_size(su["seed"], "/suite/seed");
    if (su.contains("budget")) s.budget = to_size(su["budget"], "/suite/budget", 1);
  }
  if (doc.contains("tuple")) {
    const json& t = doc["tuple"];
    if (!t.is_array()) fail("/tuple", "expected an array of operator names");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string at = "/tuple/" + std::to_string(i);
      std::string name = to_string(t[i], at);
      if (!names.count(name)) fail(at, "unknown operator '" + name + "'");
      s.tuple.push_back(std::move(name));
    }
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("scenario: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path + ": " + e.what());
  }
}

std::string serialize_scenario(const Scenario& s) {
  json doc = json::object();
  doc["b_dim"] = s.b_dim;
  doc["bimodules"] = json::array();
  for (const auto& b : s.bimodules) doc["bimodules"].push_back({{"name", b.name}, {"copies", b.copies}});
  doc["operators"] = json::array();
  for (const auto& o : s.operators) {
    json j = {{"name", o.name},
              {"bimodule", o.bimodule},
              {"side", o.side == Side::Left ? "left" : "right"},
              {"family", o.family}};
    j[kind_name(o.kind)] = from_matrix(o.matrix);
    doc["operators"].push_back(std::move(j));
  }
  if (s.depth) doc["free_product"] = {{"depth", *s.depth}};
  if (s.window) doc["haar"] = {{"window", *s.window}};
  if (s.max_n || s.seed || s.budget) {
    json su = json::object();
    if (s.max_n) su["max_n"] = *s.max_n;
    if (s.seed) su["seed"] = *s.seed;
    if (s.budget) su["budget"] = *s.budget;
    doc["suite"] = std::move(su);
  }
  if (!s.tuple.empty()) doc["tuple"] = s.tuple;
  return doc.dump(2) + "\n";
}

Realization realize(const Scenario& s) {
  Realization r{s.b_dim, std::nullopt, {}};
  std::map<std::string, std::size_t> index;
  std::vector<Bimodule> bimodules;
  for (std::size_t i = 0; i < s.bimodules.size(); ++i) {
    index[s.bimodules[i].name] = i;
    bimodules.emplace_back(s.b_dim, s.bimodules[i].copies);
  }
  if (s.depth) {
    try {
      r.free_product.emplace(bimodules, *s.depth);
    } catch (const std::exception& e) {
      throw ScenarioError(std::string("scenario: /free_product: ") + e.what());
    }
  } else {
    std::set<std::string> used;
    for (const auto& o : s.operators) used.insert(o.bimodule);
    if (used.size() > 1) {
      throw ScenarioError("scenario: /free_product: operators on several bimodules need a free product depth");
    }
  }
  for (std::size_t i = 0; i < s.operators.size(); ++i) {
    const auto& o = s.operators[i];
    const std::size_t k = index.at(o.bimodule);
    const Bimodule& x = bimodules[k];
    Op op;
    switch (o.kind) {
      case OperatorEntry::Kind::Lb:
        op = make_lb(x, o.matrix);
        break;
      case OperatorEntry::Kind::Rb:
        op = make_rb(x, o.matrix);
        break;
      default:
        op = make_operator(x, o.matrix);
    }
    if (!is_side_operator(x, op, o.side)) {
      throw ScenarioError("scenario: /operators/" + std::to_string(i) + ": '" + o.name + "' is not a " +
                          (o.side == Side::Left ? "left" : "right") + " operator");
    }
    if (r.free_product) op = r.free_product->lift(k + 1, o.side, op);
    r.generators.push_back({o.name, o.side, o.family, op});
  }
  return r;
}

std::vector<const Generator*> scenario_tuple(const Scenario& s, const Realization& r) {
  if (s.tuple.empty()) throw ScenarioError("scenario: /tuple: no operator tuple given");
  std::vector<const Generator*> out;
  for (const auto& name : s.tuple) {
    for (const auto& g : r.generators) {
      if (g.name == name) out.push_back(&g);
    }
  }
  return out;
}

}  // namespace bifree::cli
