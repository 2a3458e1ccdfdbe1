#include "wiretap/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace wiretap {

using nlohmann::json;

namespace {

constexpr double kIngestDefectTol = 1e-6;
constexpr double kAlphabetWarnTol = 1e-9;

[[noreturn]] void fail(const std::string& where, const std::string& msg) { throw ProblemFormatError(where, msg); }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Count lines up to the reported byte offset.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail("line " + std::to_string(line) + ", column " + std::to_string(col), "syntax error (" + std::string(e.what()) + ")");
  }
}

const json& member(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(key, "missing field");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "value must be finite");
  return x;
}

std::size_t count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return static_cast<std::size_t>(v.get<long long>());
}

linalg::Complex complex_value(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) fail(where, "expected a [re, im] pair");
  return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

ComplexVector complex_vector(const json& v, std::size_t n, const std::string& where) {
  if (!v.is_array() || v.size() != n) fail(where, "expected " + std::to_string(n) + " [re, im] entries");
  ComplexVector out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(i)) = complex_value(v[i], where + "[" + std::to_string(i) + "]");
  return out;
}

ComplexMatrix covariance(const json& v, std::size_t n, const std::string& where) {
  if (!v.is_array() || v.size() != n) fail(where, "expected " + std::to_string(n) + " rows");
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    m.row(static_cast<Eigen::Index>(r)) = complex_vector(v[r], n, where + "[" + std::to_string(r) + "]").transpose();
  }
  if (linalg::hermitian_defect(m) > kIngestDefectTol) fail(where, "covariance not Hermitian");
  return linalg::hermitianize(m);
}

std::vector<ComplexMatrix> covariance_list(const json& doc, const char* key, std::size_t count, std::size_t n) {
  const json& list = member(doc, key);
  if (!list.is_array() || list.size() != count) {
    fail(key, "expected " + std::to_string(count) + " matrices");
  }
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(covariance(list[i], n, std::string(key) + "[" + std::to_string(i) + "]"));
  return out;
}

double power_budget(const json& v) {
  if (v.is_number()) return number(v, "P_T");
  if (!v.is_object()) fail("P_T", "expected a number or {\"value\", \"unit\"}");
  const double value = number(member(v, "value"), "P_T.value");
  std::string unit = "linear";
  if (auto it = v.find("unit"); it != v.end()) {
    if (!it->is_string()) fail("P_T.unit", "expected \"linear\" or \"dB\"");
    unit = it->get<std::string>();
  }
  if (unit == "linear") return value;
  if (unit == "dB") return db_to_linear(value);
  fail("P_T.unit", "unknown unit '" + unit + "' (expected \"linear\" or \"dB\")");
}

Alphabet alphabet_from_symbols(const json& v, const std::string& where, const std::string& name,
                               std::vector<std::string>* warnings) {
  if (!v.is_array() || v.size() < 2) fail(where, "alphabet needs at least two [re, im] symbols");
  std::vector<linalg::Complex> symbols;
  for (std::size_t i = 0; i < v.size(); ++i) symbols.push_back(complex_value(v[i], where + "[" + std::to_string(i) + "]"));
  double adjustment = 0.0;
  try {
    Alphabet a = Alphabet::normalized(std::move(symbols), name, &adjustment);
    if (warnings && adjustment > kAlphabetWarnTol) {
      std::ostringstream msg;
      msg << "alphabet '" << name << "' was renormalized (largest symbol shift " << adjustment << ")";
      warnings->push_back(msg.str());
    }
    return a;
  } catch (const ProblemFormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

CsiMode csi_mode(const json& v, std::size_t users, std::size_t n) {
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    if (name == "statistical") return StatisticalCsi{};
    fail("csi_mode", "unknown mode '" + name + "' (perfect_users needs an object with channels)");
  }
  if (!v.is_object()) fail("csi_mode", "expected \"statistical\" or {\"type\": \"perfect_users\", \"channels\"}");
  const json& type = member(v, "type");
  if (!type.is_string()) fail("csi_mode.type", "expected a string");
  if (type.get<std::string>() == "statistical") return StatisticalCsi{};
  if (type.get<std::string>() != "perfect_users") fail("csi_mode.type", "unknown mode '" + type.get<std::string>() + "'");
  auto it = v.find("channels");
  if (it == v.end()) fail("csi_mode.channels", "missing field");
  if (!it->is_array() || it->size() != users) fail("csi_mode.channels", "expected one channel vector per user");
  PerfectUserCsi mode;
  for (std::size_t k = 0; k < users; ++k) {
    mode.channels.push_back(complex_vector((*it)[k], n, "csi_mode.channels[" + std::to_string(k) + "]"));
  }
  return mode;
}

json encode(const linalg::Complex& z) { return json::array({z.real(), z.imag()}); }

json encode(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(encode(v(i)));
  return out;
}

json encode(const ComplexMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(encode(ComplexVector(m.row(r).transpose())));
  return out;
}

}  // namespace

ProblemFile parse_problem(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) fail("line 1, column 1", "problem document must be a JSON object");

  ProblemFile file;
  WiretapProblem& p = file.problem;
  p.antennas = count(member(doc, "N"), "N");
  if (p.antennas == 0) fail("N", "need at least one antenna");
  const std::size_t k = count(member(doc, "K"), "K");
  const std::size_t j = count(member(doc, "J"), "J");
  p.noise_power = number(member(doc, "N0"), "N0");
  p.epsilon = number(member(doc, "epsilon"), "epsilon");
  p.power_budget = power_budget(member(doc, "P_T"));
  p.user_cov = covariance_list(doc, "H", k, p.antennas);
  p.eve_cov = covariance_list(doc, "Z", j, p.antennas);

  if (auto it = doc.find("csi_mode"); it != doc.end()) file.csi_mode = csi_mode(*it, k, p.antennas);
  if (auto it = doc.find("alphabet"); it != doc.end()) {
    if (it->is_string()) {
      try {
        file.alphabet = Alphabet::builtin(it->get<std::string>());
      } catch (const std::invalid_argument& e) {
        fail("alphabet", e.what());
      }
    } else {
      file.alphabet = alphabet_from_symbols(*it, "alphabet", "custom", &file.warnings);
    }
  }

  const ValidationReport report = validate_problem(p);
  if (!report.ok()) {
    std::string msg;
    for (const auto& v : report.violations) msg += (msg.empty() ? "" : "; ") + v;
    fail("problem", msg);
  }
  return file;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemFormatError(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ProblemFile load_problem(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_problem(text);
  } catch (const ProblemFormatError& e) {
    throw ProblemFormatError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

std::string emit_problem(const ProblemFile& file) {
  const WiretapProblem& p = file.problem;
  json doc;
  doc["N"] = p.antennas;
  doc["K"] = p.users();
  doc["J"] = p.eavesdroppers();
  doc["N0"] = p.noise_power;
  doc["epsilon"] = p.epsilon;
  doc["P_T"] = {{"value", p.power_budget}, {"unit", "linear"}};
  doc["H"] = json::array();
  for (const auto& h : p.user_cov) doc["H"].push_back(encode(h));
  doc["Z"] = json::array();
  for (const auto& z : p.eve_cov) doc["Z"].push_back(encode(z));
  if (const auto* perfect = std::get_if<PerfectUserCsi>(&file.csi_mode)) {
    json ch = json::array();
    for (const auto& h : perfect->channels) ch.push_back(encode(h));
    doc["csi_mode"] = {{"type", "perfect_users"}, {"channels", ch}};
  } else {
    doc["csi_mode"] = "statistical";
  }
  if (file.alphabet) {
    const std::string& name = file.alphabet->name();
    if (name == "bpsk" || name == "qpsk" || name == "8psk" || name == "16qam") {
      doc["alphabet"] = name;
      return doc.dump(2) + "\n";
    }
    json syms = json::array();
    for (const auto& s : file.alphabet->symbols()) syms.push_back(encode(s));
    doc["alphabet"] = syms;
  }
  return doc.dump(2) + "\n";
}

std::string emit_problem(const WiretapProblem& p) {
  ProblemFile f;
  f.problem = p;
  return emit_problem(f);
}

Alphabet parse_alphabet(const std::string& text, const std::string& name, std::vector<std::string>* warnings) {
  const json doc = parse_json(text);
  return alphabet_from_symbols(doc, "alphabet", name, warnings);
}

Alphabet load_alphabet(const std::string& path, std::vector<std::string>* warnings) {
  const std::string text = read_text_file(path);
  try {
    return parse_alphabet(text, path, warnings);
  } catch (const ProblemFormatError& e) {
    throw ProblemFormatError(path + ": " + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

}  // namespace wiretap
