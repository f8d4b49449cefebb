#include "tbo/problem.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tbo/error.hpp"

namespace tbo {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ParseError, "field '" + field + "': " + what);
}

Integer parse_integer(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Integer(v.get<long>());
  if (v.is_string()) {
    Integer x;
    if (x.set_str(v.get<std::string>(), 10) != 0) fail(field, "not an integer: \"" + v.get<std::string>() + "\"");
    return x;
  }
  fail(field, "expected an integer");
}

Rational parse_rational_field(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) fail(field, "expected an integer or a string \"a/b\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    std::string what = e.what();
    const std::string prefix = std::string(to_string(ErrorKind::ParseError)) + ": ";
    if (what.rfind(prefix, 0) == 0) what.erase(0, prefix.size());
    fail(field, what);
  }
}

const json& required(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(key, "missing");
  return *it;
}

RatVector parse_omega(const json& obj, const char* key, std::size_t r) {
  const json& v = required(obj, key);
  if (!v.is_array() || v.size() != r) fail(key, "expected an array of " + std::to_string(r) + " rationals");
  RatVector out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(parse_rational_field(v[i], std::string(key) + "[" + std::to_string(i) + "]"));
  return out;
}

json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

// name -> (description, rank, characters, omega_plus, omega_minus)
struct CatalogEntry {
  const char* description;
  std::size_t r;
  std::vector<std::vector<long>> D;
  std::vector<const char*> omega_plus, omega_minus;
};

const std::map<std::string, CatalogEntry>& catalog() {
  static const std::map<std::string, CatalogEntry> entries = {
      {"CONIFOLD", {"Atiyah flop of the resolved conifold", 1, {{1}, {1}, {-1}, {-1}}, {"1"}, {"-1"}}},
      {"WEIGHTED-A1", {"resolution of C^2/mu_2 against the orbifold [C^2/mu_2]", 1, {{1}, {1}, {-2}}, {"1"}, {"-1"}}},
      {"WEIGHTED-FLOP", {"weighted flop with weights (1,2) and (1,2)", 1, {{1}, {2}, {-1}, {-2}}, {"1"}, {"-1"}}},
      {"RANK2-FLOP",
       {"rank-two crossing of the wall x2 = 0 with one ray on the wall",
        2,
        {{1, 1}, {1, 1}, {1, 1}, {1, -1}, {1, -2}, {1, 0}},
        {"1", "1/10"},
        {"1", "-1/10"}}},
  };
  return entries;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  Integer num, den = 1;
  auto bad = [&] { throw Error(ErrorKind::ParseError, "malformed rational \"" + text + "\""); };
  if (text.empty()) bad();
  if (num.set_str(text.substr(0, slash), 10) != 0) bad();
  if (slash != std::string::npos && den.set_str(text.substr(slash + 1), 10) != 0) bad();
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in \"" + text + "\"");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

GitDatum ProblemFile::plus() const {
  GitDatum d;
  d.r = r;
  d.D = characters;
  d.omega = omega_plus;
  return d;
}

GitDatum ProblemFile::minus() const {
  GitDatum d = plus();
  d.omega = omega_minus;
  return d;
}

ProblemFile parse_problem(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "top level must be an object");

  ProblemFile p;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) fail("name", "expected a string");
    p.name = it->get<std::string>();
  }
  if (auto it = doc.find("description"); it != doc.end()) {
    if (!it->is_string()) fail("description", "expected a string");
    p.description = it->get<std::string>();
  }
  const json& rank = required(doc, "rank");
  if (!rank.is_number_integer() || rank.get<long>() < 1) fail("rank", "expected a positive integer");
  p.r = rank.get<std::size_t>();

  const json& chars = required(doc, "characters");
  if (!chars.is_array() || chars.empty()) fail("characters", "expected a nonempty array of rows");
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const std::string field = "characters[" + std::to_string(i) + "]";
    if (!chars[i].is_array() || chars[i].size() != p.r) fail(field, "expected " + std::to_string(p.r) + " integers");
    IntVector row;
    for (std::size_t j = 0; j < p.r; ++j) row.push_back(parse_integer(chars[i][j], field + "[" + std::to_string(j) + "]"));
    p.characters.push_back(std::move(row));
  }
  p.omega_plus = parse_omega(doc, "omega_plus", p.r);
  p.omega_minus = parse_omega(doc, "omega_minus", p.r);

  if (auto it = doc.find("options"); it != doc.end()) {
    if (!it->is_object()) fail("options", "expected an object");
    for (const auto& [key, v] : it->items()) {
      const std::string field = "options." + key;
      if (!v.is_number_integer()) fail(field, "expected an integer");
      const long x = v.get<long>();
      if (key == "k_min") {
        p.options.k_min = x;
      } else if (key == "k_max") {
        p.options.k_max = x;
      } else if (key == "specializations") {
        if (x < 1 || x > 1000) fail(field, "expected 1..1000");
        p.options.specializations = static_cast<unsigned>(x);
      } else if (key == "prime_bits") {
        if (x < 8 || x > 62) fail(field, "expected 8..62");
        p.options.prime_bits = static_cast<unsigned>(x);
      } else if (key == "seed") {
        if (x < 0) fail(field, "expected a non-negative integer");
        p.options.seed = static_cast<std::uint64_t>(x);
      } else {
        fail(field, "unknown option");
      }
    }
    if (p.options.k_min && p.options.k_max && *p.options.k_min > *p.options.k_max)
      fail("options.k_min", "exceeds options.k_max");
  }
  return p;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  ProblemFile p = parse_problem(ss.str());
  if (p.name.empty()) p.name = std::filesystem::path(path).stem().string();
  return p;
}

std::string to_json(const ProblemFile& p) {
  json rows = json::array();
  for (const auto& row : p.characters) {
    json jr = json::array();
    for (const auto& x : row) jr.push_back(integer_json(x));
    rows.push_back(jr);
  }
  json plus = json::array(), minus = json::array();
  for (const auto& q : p.omega_plus) plus.push_back(rational_json(q));
  for (const auto& q : p.omega_minus) minus.push_back(rational_json(q));
  nlohmann::ordered_json opts = nlohmann::ordered_json::object();
  if (p.options.k_min) opts["k_min"] = *p.options.k_min;
  if (p.options.k_max) opts["k_max"] = *p.options.k_max;
  opts["specializations"] = p.options.specializations;
  opts["prime_bits"] = p.options.prime_bits;
  opts["seed"] = p.options.seed;

  // one field per line, values compact
  std::ostringstream out;
  out << "{\n"
      << "  \"name\": " << json(p.name).dump() << ",\n"
      << "  \"description\": " << json(p.description).dump() << ",\n"
      << "  \"rank\": " << p.r << ",\n"
      << "  \"characters\": " << rows.dump() << ",\n"
      << "  \"omega_plus\": " << plus.dump() << ",\n"
      << "  \"omega_minus\": " << minus.dump() << ",\n"
      << "  \"options\": " << opts.dump() << "\n"
      << "}\n";
  return out.str();
}

std::vector<std::string> catalog_names() { return {"CONIFOLD", "WEIGHTED-A1", "WEIGHTED-FLOP", "RANK2-FLOP"}; }

ProblemFile catalog_problem(const std::string& name) {
  auto it = catalog().find(name);
  if (it == catalog().end()) throw Error(ErrorKind::ParseError, "unknown example \"" + name + "\"");
  const CatalogEntry& c = it->second;
  ProblemFile p;
  p.name = name;
  p.description = c.description;
  p.r = c.r;
  for (const auto& row : c.D) {
    IntVector v;
    for (long x : row) v.emplace_back(x);
    p.characters.push_back(std::move(v));
  }
  for (const char* q : c.omega_plus) p.omega_plus.push_back(parse_rational(q));
  for (const char* q : c.omega_minus) p.omega_minus.push_back(parse_rational(q));
  return p;
}

}  // namespace tbo
