#include "twostep/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "twostep/errors.hpp"
#include "twostep/standard_algebras.hpp"

namespace twostep {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::BadSpecFile, where + ": " + what);
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::BadSpecFile,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + e.what());
  }
}

const json& field(const json& obj, const std::string& where, const std::string& key) {
  if (!obj.is_object()) bad(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) bad(where + "/" + key, "missing field");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) bad(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(where, "expected a finite number");
  return x;
}

const json& array(const json& v, const std::string& where) {
  if (!v.is_array()) bad(where, "expected an array");
  return v;
}

AlgebraVector coeff_vector(const json& v, const std::string& where, Eigen::Index d) {
  array(v, where);
  if (static_cast<Eigen::Index>(v.size()) != d) {
    bad(where, "expected " + std::to_string(d) + " coefficients, got " + std::to_string(v.size()));
  }
  AlgebraVector out(d);
  for (Eigen::Index i = 0; i < d; ++i) out(i) = number(v[static_cast<std::size_t>(i)], where + "/" + std::to_string(i));
  return out;
}

std::vector<AlgebraVector> coeff_list(const json& v, const std::string& where, Eigen::Index d) {
  array(v, where);
  std::vector<AlgebraVector> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(coeff_vector(v[i], where + "/" + std::to_string(i), d));
  return out;
}

AlgebraPtr algebra_from_json(const json& j, const std::string& where, double tol_alg) {
  if (j.is_string()) {
    try {
      return named_algebra(j.get<std::string>(), tol_alg);
    } catch (const Error& e) {
      bad(where, e.detail());
    }
  }
  const json& nj = field(j, where, "ambient_dim");
  if (!nj.is_number_integer() || nj.get<long long>() < 1) bad(where + "/ambient_dim", "expected a positive integer");
  const auto n = static_cast<Eigen::Index>(nj.get<long long>());

  const json& fj = field(j, where, "form");
  if (!fj.is_string()) bad(where + "/form", "expected \"neg_killing\" or \"neg_trace\"");
  FormKind form{};
  try {
    form = form_kind_from_string(fj.get<std::string>());
  } catch (const Error& e) {
    bad(where + "/form", e.detail());
  }

  const std::string bw = where + "/basis";
  const json& bj = array(field(j, where, "basis"), bw);
  std::vector<Eigen::MatrixXcd> basis;
  for (std::size_t b = 0; b < bj.size(); ++b) {
    const std::string mw = bw + "/" + std::to_string(b);
    const json& mj = array(bj[b], mw);
    if (static_cast<Eigen::Index>(mj.size()) != n) bad(mw, "expected " + std::to_string(n) + " rows");
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const std::string rw = mw + "/" + std::to_string(r);
      const json& rj = array(mj[static_cast<std::size_t>(r)], rw);
      if (static_cast<Eigen::Index>(rj.size()) != n) bad(rw, "expected " + std::to_string(n) + " entries");
      for (Eigen::Index c = 0; c < n; ++c) {
        const std::string ew = rw + "/" + std::to_string(c);
        const json& ej = array(rj[static_cast<std::size_t>(c)], ew);
        if (ej.size() != 2) bad(ew, "expected a [re, im] pair");
        m(r, c) = {number(ej[0], ew + "/0"), number(ej[1], ew + "/1")};
      }
    }
    basis.push_back(std::move(m));
  }
  return MatrixLieAlgebra::build(std::move(basis), form, tol_alg);
}

}  // namespace

AlgebraPtr named_algebra(const std::string& text, double tol_alg) {
  const auto colon = text.find(':');
  const std::string family = text.substr(0, colon);
  if (family != "su" && family != "u") throw Error(ErrorKind::BadInput, "unknown algebra '" + family + "'");
  long n = 0;
  FormKind form = family == "su" ? FormKind::NegKilling : FormKind::NegTrace;
  std::istringstream rest(colon == std::string::npos ? "" : text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    const std::string key = item.substr(0, eq);
    const std::string value = eq == std::string::npos ? "" : item.substr(eq + 1);
    if (key == "n") {
      try {
        n = std::stol(value);
      } catch (const std::exception&) {
        n = 0;
      }
    } else if (key == "form") {
      form = form_kind_from_string(value);
    } else {
      throw Error(ErrorKind::BadInput, "unknown algebra parameter '" + key + "'");
    }
  }
  if (n < (family == "su" ? 2 : 1)) throw Error(ErrorKind::BadInput, "algebra '" + text + "' needs a valid n");
  return family == "su" ? make_su(n, form, tol_alg) : make_u(n, form, tol_alg);
}

AlgebraPtr algebra_from_json_text(const std::string& text, double tol_alg) {
  return algebra_from_json(parse_text(text), "", tol_alg);
}

HomogeneousSpace space_from_json_text(const std::string& text, double tol_alg) {
  const json j = parse_text(text);
  const AlgebraPtr alg = algebra_from_json(field(j, "", "algebra"), "/algebra", tol_alg);
  const Eigen::Index d = alg->dim();

  const auto k_vectors = coeff_list(field(j, "", "k_basis"), "/k_basis", d);
  const Subspace k = Subspace::span(alg, k_vectors, "k", false);
  if (k.dim() != static_cast<Eigen::Index>(k_vectors.size())) bad("/k_basis", "vectors are linearly dependent");

  const json& sj = array(field(j, "", "split"), "/split");
  if (sj.empty()) bad("/split", "needs at least one summand");
  std::vector<Subspace> split;
  for (std::size_t i = 0; i < sj.size(); ++i) {
    const std::string w = "/split/" + std::to_string(i);
    const auto vs = coeff_list(sj[i], w, d);
    if (vs.empty()) bad(w, "summand is empty");
    Subspace sub = Subspace::span(alg, vs, "m" + std::to_string(i + 1), false);
    if (sub.dim() != static_cast<Eigen::Index>(vs.size())) bad(w, "vectors are linearly dependent");
    split.push_back(std::move(sub));
  }

  const json& lj = array(field(j, "", "lambdas"), "/lambdas");
  if (lj.size() != split.size()) {
    bad("/lambdas", "expected " + std::to_string(split.size()) + " values, one per summand");
  }
  std::vector<double> lambdas;
  for (std::size_t i = 0; i < lj.size(); ++i) {
    const std::string w = "/lambdas/" + std::to_string(i);
    const double v = number(lj[i], w);
    if (v <= 0.0) bad(w, "must be positive");
    lambdas.push_back(v);
  }

  std::string name = "spec";
  if (j.contains("name")) {
    if (!j["name"].is_string()) bad("/name", "expected a string");
    name = j["name"].get<std::string>();
  }
  try {
    return HomogeneousSpace(k, std::move(split), std::move(lambdas), name);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BadInput) bad("/split", e.detail());
    throw;
  }
}

HomogeneousSpace load_space_file(const std::string& path, double tol_alg) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadSpecFile, path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return space_from_json_text(ss.str(), tol_alg);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BadSpecFile) throw Error(ErrorKind::BadSpecFile, path + ": " + e.detail());
    throw;
  }
}

}  // namespace twostep
