#include "gwn/io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace gwn {

namespace {

using ojson = nlohmann::ordered_json;

std::string key_of(std::span<const int> tuple) {
  std::string k;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) k += ',';
    k += std::to_string(tuple[i]);
  }
  return k;
}

std::vector<int> parse_key(const std::string& key, int atoms, int degree) {
  std::vector<int> t;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(part, &used);
    } catch (const std::exception&) {
      throw DomainError("tensor key \"" + key + "\" is not a comma-separated index list");
    }
    if (used != part.size()) throw DomainError("tensor key \"" + key + "\" is not a comma-separated index list");
    if (v < 0 || v >= atoms) throw DimensionError("tensor key \"" + key + "\" has an atom out of range");
    t.push_back(v);
  }
  if (static_cast<int>(t.size()) != degree)
    throw DimensionError("tensor key \"" + key + "\" does not have " + std::to_string(degree) + " indices");
  return t;
}

ojson tensor_json(const Tensor& t) {
  ojson j = ojson::object();
  for (std::int64_t r = 0; r < t.size(); ++r)
    if (t[r] != 0.0) j[key_of(t.tuple(r))] = t[r];
  return j;
}

Tensor tensor_from(const nlohmann::json& j, int atoms, int degree) {
  if (!j.is_object()) throw DomainError("tensor JSON must be an object keyed by multi-index strings");
  Tensor t(atoms, degree);
  for (const auto& [key, val] : j.items()) {
    if (!val.is_number()) throw DomainError("tensor value at \"" + key + "\" is not a number");
    const auto tuple = parse_key(key, atoms, degree);
    t.at(tuple) = val.get<double>();
  }
  return t;
}

}  // namespace

std::string tensor_to_json(const Tensor& t) { return tensor_json(t).dump(); }

Tensor tensor_from_json(const std::string& text, int atoms, int degree) {
  return tensor_from(nlohmann::json::parse(text), atoms, degree);
}

std::string functional_to_json(const PolyFunctional& p) {
  ojson j;
  j["basis"] = basis_name(p.basis);
  j["atoms"] = p.atoms();
  ojson ks = ojson::array();
  for (const auto& k : p.kernels.kernels()) ks.push_back(tensor_json(k));
  j["kernels"] = std::move(ks);
  return j.dump(2) + "\n";
}

PolyFunctional functional_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (!j.is_object()) throw DomainError("functional JSON must be an object");
  const std::string basis = j.value("basis", "");
  Basis b;
  if (basis == "wick")
    b = Basis::GammaWick;
  else if (basis == "monomial")
    b = Basis::Monomial;
  else
    throw DomainError("functional basis must be \"wick\" or \"monomial\"");
  if (!j.contains("atoms") || !j["atoms"].is_number_integer() || j["atoms"].get<int>() < 1)
    throw DomainError("functional JSON needs a positive integer \"atoms\"");
  if (!j.contains("kernels") || !j["kernels"].is_array() || j["kernels"].empty())
    throw DomainError("functional JSON needs a non-empty \"kernels\" array");
  const int atoms = j["atoms"].get<int>();
  std::vector<Tensor> ks;
  for (std::size_t n = 0; n < j["kernels"].size(); ++n)
    ks.push_back(tensor_from(j["kernels"][n], atoms, static_cast<int>(n)));
  return PolyFunctional{b, Fock(std::move(ks))};
}

PolyFunctional functional_from_file(const std::string& path) { return functional_from_json(read_text_file(path)); }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace gwn
