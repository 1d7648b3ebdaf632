#include "canonica/json_io.hpp"

#include <fstream>
#include <sstream>

#include "canonica/error.hpp"

namespace canonica::io {

namespace {

const char* mode_name(CongruenceMode m) { return m == CongruenceMode::congruence ? "congruence" : "star"; }

double number(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string("expected a number for ") + what);
  return j.get<double>();
}

std::size_t count(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  const json& v = j.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw ParseError(std::string("field \"") + key + "\" must be a nonnegative integer");
  const auto x = v.get<long long>();
  if (x < 0) throw ParseError(std::string("field \"") + key + "\" must be nonnegative");
  return static_cast<std::size_t>(x);
}

}  // namespace

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw ParseError("complex entries must be [re, im]");
  return {number(j[0], "re"), number(j[1], "im")};
}

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (const auto& z : m.data()) data.push_back(complex_to_json(z));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix must be a JSON object");
  const std::size_t r = count(j, "rows");
  const std::size_t c = count(j, "cols");
  if (!j.contains("data") || !j.at("data").is_array()) throw ParseError("missing array \"data\"");
  const json& d = j.at("data");
  if (d.size() != r * c)
    throw ParseError("data holds " + std::to_string(d.size()) + " entries, expected " +
                     std::to_string(r * c));
  std::vector<Complex> v;
  v.reserve(d.size());
  for (const auto& e : d) v.push_back(complex_from_json(e));
  return Matrix(r, c, std::move(v));
}

Matrix parse_matrix(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix(ss.str());
}

std::vector<Complex> vector_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("vector must be a JSON array");
  std::vector<Complex> v;
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return v;
}

json to_json(const ClassReport& r) {
  json flags = {{"normal", r.normal},
                {"conjugate_normal", r.conjugate_normal},
                {"congruence_normal", r.congruence_normal},
                {"squared_normal", r.squared_normal},
                {"unitary", r.unitary},
                {"coninvolutory", r.coninvolutory},
                {"involutory", r.involutory},
                {"hermitian_square", r.hermitian_square},
                {"conj_square_hermitian", r.conj_square_hermitian},
                {"range_hermitian", r.range_hermitian},
                {"lambda_projection", r.lambda_projection.has_value()}};
  json res = json::object();
  for (const auto& [k, v] : r.residuals) res[k] = v;
  return {{"flags", flags},
          {"lambda", r.lambda_projection ? complex_to_json(*r.lambda_projection) : json(nullptr)},
          {"residuals", res}};
}

json to_json(const CongruenceCanonicalForm& f) {
  json two = json::array();
  for (const auto& p : f.two_by_two) two.push_back({{"tau", p.tau}, {"mu", complex_to_json(p.mu)}});
  return {{"one_by_one", f.one_by_one}, {"two_by_two", two}};
}

CongruenceCanonicalForm congruence_form_from_json(const json& j) {
  CongruenceCanonicalForm f;
  try {
    for (const auto& s : j.at("one_by_one")) f.one_by_one.push_back(number(s, "sigma"));
    for (const auto& p : j.at("two_by_two"))
      f.two_by_two.push_back({number(p.at("tau"), "tau"), complex_from_json(p.at("mu"))});
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed congruence form: ") + e.what());
  }
  return f;
}

json to_json(const StarCanonicalForm& f) {
  json one = json::array();
  for (auto l : f.one_by_one) one.push_back(complex_to_json(l));
  json two = json::array();
  for (const auto& p : f.two_by_two) {
    json e = {{"tau", p.tau}, {"mu", complex_to_json(p.mu)}};
    if (f.representation == StarRepresentation::triangular) {
      const TriangularPair t = to_triangular(p);
      e["nu"] = complex_to_json(t.nu);
      e["r"] = t.r;
    }
    two.push_back(e);
  }
  return {{"representation", f.representation == StarRepresentation::h2 ? "h2" : "triangular"},
          {"one_by_one", one},
          {"two_by_two", two}};
}

StarCanonicalForm star_form_from_json(const json& j) {
  StarCanonicalForm f;
  try {
    const std::string rep = j.at("representation").get<std::string>();
    if (rep == "h2")
      f.representation = StarRepresentation::h2;
    else if (rep == "triangular")
      f.representation = StarRepresentation::triangular;
    else
      throw ParseError("unknown representation " + rep);
    for (const auto& l : j.at("one_by_one")) f.one_by_one.push_back(complex_from_json(l));
    for (const auto& p : j.at("two_by_two"))
      f.two_by_two.push_back({number(p.at("tau"), "tau"), complex_from_json(p.at("mu"))});
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed *congruence form: ") + e.what());
  }
  return f;
}

json to_json(const BlockList& b) {
  json out = json::array();
  for (const auto& m : b.blocks) out.push_back(matrix_to_json(m));
  return out;
}

BlockList block_list_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("block list must be an array");
  BlockList b;
  for (const auto& m : j) b.blocks.push_back(matrix_from_json(m));
  return b;
}

json to_json(const ReducedForm& r) {
  return {{"mode", mode_name(r.mode)},
          {"m1", r.m1},
          {"m2", r.m2},
          {"sigma", r.sigma},
          {"core", matrix_to_json(r.core)},
          {"transform", matrix_to_json(r.transform)},
          {"residual", r.residual}};
}

json to_json(const EquivalenceReport& r) {
  json blocks = json::array();
  for (const auto& b : r.blocks)
    blocks.push_back({{"kind", b.kind},
                      {"lhs", b.lhs},
                      {"rhs", b.rhs},
                      {"error", b.error},
                      {"matched", b.matched}});
  json out = {{"verdict", to_string(r.verdict)}, {"method", r.method}, {"blocks", blocks}};
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

json to_json(const IterationTrace& t) { return {{"norms", t.norms}, {"growth", to_string(t.growth)}}; }

json to_json(const BoundednessReport& b) {
  return {{"verdict", to_string(b.verdict)},
          {"fast_path", b.fast_path},
          {"max_modulus", b.max_modulus},
          {"min_modulus", b.min_modulus}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace canonica::io
