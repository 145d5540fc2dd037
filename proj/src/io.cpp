#include "courant/io.hpp"

#include <fstream>
#include <sstream>

namespace courant {

namespace {

const Json& field(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ParseError(where + ": missing field \"" + key + "\"");
  }
  return doc.at(key);
}

int integer(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer");
  return v.get<int>();
}

Scalar scalar(const Json& v, int n, const std::string& where) {
  if (v.is_string()) return parse_scalar(v.get<std::string>(), n);
  if (v.is_number_integer()) return Scalar(v.get<long>());
  throw ParseError(where + ": expected a scalar string");
}

std::vector<Scalar> scalars(const Json& v, int size, int n, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != size) {
    throw ParseError(where + ": expected an array of " + std::to_string(size) + " scalars");
  }
  std::vector<Scalar> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(scalar(v[i], n, where + "[" + std::to_string(i + 1) + "]"));
  }
  return out;
}

Matrix matrix(const Json& v, int rows, int cols, int n, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != rows) {
    throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    auto row = scalars(v[i], cols, n, where + " row " + std::to_string(i + 1));
    for (int j = 0; j < cols; ++j) m(i, j) = row[j];
  }
  return m;
}

std::pair<int, int> index_pair(const std::string& key, int bound1, int bound2,
                               const std::string& where) {
  auto comma = key.find(',');
  int a = 0;
  int b = 0;
  try {
    if (comma == std::string::npos) throw std::invalid_argument("no comma");
    std::size_t used = 0;
    a = std::stoi(key.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("junk");
    std::string rest = key.substr(comma + 1);
    b = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("junk");
  } catch (const std::exception&) {
    throw ParseError(where + ": key \"" + key + "\" is not of the form \"i,j\"");
  }
  if (a < 1 || a > bound1 || b < 1 || b > bound2) {
    throw ParseError(where + ": index pair \"" + key + "\" out of range");
  }
  return {a - 1, b - 1};
}

Json scalar_json(const Scalar& s) { return s.to_string(); }

Json row_json(const std::vector<Scalar>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(scalar_json(s));
  return out;
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

AlgebroidPtr algebroid_from_json(const Json& doc) {
  const std::string where = "algebroid";
  int n = integer(field(doc, "n", where), where + ".n");
  int r = integer(field(doc, "rank", where), where + ".rank");
  if (n < 0 || n > kMaxVariables || r < 1) throw ParseError(where + ": n or rank out of range");
  Matrix g = matrix(field(doc, "pairing", where), r, r, n, where + ".pairing");
  Matrix rho(n, r);
  if (n > 0) rho = matrix(field(doc, "anchor", where), n, r, n, where + ".anchor");
  BracketTable c(r, std::vector<Section>(r, Section(r)));
  if (doc.contains("bracket")) {
    const Json& br = doc.at("bracket");
    if (!br.is_object()) throw ParseError(where + ".bracket: expected an object");
    for (const auto& [key, value] : br.items()) {
      auto [i, j] = index_pair(key, r, r, where + ".bracket");
      c[i][j] = Section(scalars(value, r, n, where + ".bracket." + key));
    }
  }
  return std::make_shared<const CourantAlgebroid>(n, std::move(g), std::move(rho), std::move(c));
}

Json algebroid_to_json(const CourantAlgebroid& e) {
  Json out;
  out["n"] = e.base_dim();
  out["rank"] = e.rank();
  out["pairing"] = matrix_json(e.pairing_matrix());
  if (e.base_dim() > 0) out["anchor"] = matrix_json(e.anchor_matrix());
  Json br = Json::object();
  for (int i = 0; i < e.rank(); ++i) {
    for (int j = 0; j < e.rank(); ++j) {
      if (!e.structure(i, j).is_zero()) {
        br[std::to_string(i + 1) + "," + std::to_string(j + 1)] =
            row_json(e.structure(i, j).components());
      }
    }
  }
  out["bracket"] = br;
  return out;
}

PredualPtr predual_from_json(const Json& doc, AlgebroidPtr e) {
  const std::string where = "predual";
  int s = integer(field(doc, "rank", where), where + ".rank");
  if (s < 1) throw ParseError(where + ": rank must be positive");
  int n = e->base_dim();
  Matrix p = matrix(field(doc, "pairing_P", where), s, e->rank(), n, where + ".pairing_P");
  Matrix a(s, n);
  if (n > 0) a = matrix(field(doc, "alpha_A", where), s, n, n, where + ".alpha_A");
  return std::make_shared<const PredualBundle>(std::move(e), std::move(p), std::move(a));
}

Json predual_to_json(const PredualBundle& b) {
  Json out;
  out["rank"] = b.rank();
  out["pairing_P"] = matrix_json(b.pairing_matrix());
  out["alpha_A"] = matrix_json(b.alpha());
  return out;
}

ConnectionTable connection_from_json(const Json& doc, const PredualBundle& b) {
  const std::string where = "connection";
  int r = b.algebroid().rank();
  int s = b.rank();
  int n = b.algebroid().base_dim();
  ConnectionTable g(r, std::vector<BSection>(s, b.zero()));
  const Json& gamma = field(doc, "gamma", where);
  if (!gamma.is_object()) throw ParseError(where + ".gamma: expected an object");
  for (const auto& [key, value] : gamma.items()) {
    auto [i, j] = index_pair(key, r, s, where + ".gamma");
    g[i][j] = BSection(scalars(value, s, n, where + ".gamma." + key));
  }
  return g;
}

Json connection_to_json(const DorfmanConnection& nabla) {
  Json gamma = Json::object();
  for (std::size_t i = 0; i < nabla.gamma().size(); ++i) {
    for (std::size_t j = 0; j < nabla.gamma()[i].size(); ++j) {
      const BSection& v = nabla.gamma()[i][j];
      if (!v.is_zero()) gamma[std::to_string(i + 1) + "," + std::to_string(j + 1)] = row_json(v.components());
    }
  }
  Json out;
  out["gamma"] = gamma;
  return out;
}

Christoffel christoffel_from_json(const Json& doc, int num_variables) {
  const std::string where = "christoffel";
  int n = integer(field(doc, "n", where), where + ".n");
  int v = doc.contains("v") ? integer(doc.at("v"), where + ".v") : n;
  if (n != num_variables) {
    throw DomainError(where + ": n = " + std::to_string(n) + " but the base has dimension " +
                      std::to_string(num_variables));
  }
  if (v < 0) throw ParseError(where + ": v must be nonnegative");
  Christoffel delta(n, std::vector<std::vector<Scalar>>(v, std::vector<Scalar>(v)));
  const Json& sym = field(doc, "symbols", where);
  if (!sym.is_object()) throw ParseError(where + ".symbols: expected an object");
  for (const auto& [key, value] : sym.items()) {
    auto [a, b] = index_pair(key, n, v, where + ".symbols");
    delta[a][b] = scalars(value, v, n, where + ".symbols." + key);
  }
  return delta;
}

std::vector<Section> dirac_from_json(const Json& doc, const CourantAlgebroid& e) {
  const std::string where = "dirac";
  const Json& frame = field(doc, "frame", where);
  if (!frame.is_array()) throw ParseError(where + ".frame: expected an array");
  std::vector<Section> out;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    out.emplace_back(scalars(frame[i], e.rank(), e.base_dim(),
                             where + ".frame[" + std::to_string(i + 1) + "]"));
  }
  return out;
}

Cochain cochain_from_json(const Json& doc, const AlgebroidPtr& e) {
  const std::string where = "cochain";
  if (!doc.is_object()) throw ParseError(where + ": expected an object");
  const Json& opj = field(doc, "op", where);
  if (!opj.is_string()) throw ParseError(where + ".op: expected a string");
  std::string op = opj.get<std::string>();
  int n = e->base_dim();
  auto arg = [&]() { return cochain_from_json(field(doc, "arg", where + "." + op), e); };
  auto section = [&](const char* key) {
    return Section(scalars(field(doc, key, where + "." + op), e->rank(), n,
                           where + "." + op + "." + key));
  };
  auto function = [&]() {
    return scalar(field(doc, "function", where + "." + op), n, where + "." + op + ".function");
  };
  if (op == "scalar") return Cochain::scalar(e, scalar(field(doc, "value", where), n, where));
  if (op == "section") return Cochain::section(e, section("value"));
  if (op == "d") return d(arg());
  if (op == "ie") return interior_e(section("section"), arg());
  if (op == "if") return interior_f(function(), arg());
  if (op == "le") return lie_e(section("section"), arg());
  if (op == "lf") return lie_f(function(), arg());
  if (op == "mul") {
    const Json& args = field(doc, "args", where + ".mul");
    if (!args.is_array() || args.size() != 2) {
      throw ParseError(where + ".mul: \"args\" must hold two operands");
    }
    return mul(cochain_from_json(args[0], e), cochain_from_json(args[1], e));
  }
  throw ParseError(where + ": unknown op \"" + op + "\"");
}

Json report_to_json(const Report& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json j;
    j["name"] = c.name;
    j["paper_ref"] = c.identity;
    j["status"] = std::string(to_string(c.status));
    j["evaluations"] = c.evaluations;
    if (c.witness) {
      Json w;
      w["arguments"] = c.witness->arguments;
      w["residual"] = row_json(c.witness->residual);
      j["witness"] = w;
    }
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(j);
  }
  return checks;
}

}  // namespace courant
