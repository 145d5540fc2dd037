#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "courant/bott.hpp"
#include "courant/cli.hpp"
#include "courant/cohomology.hpp"
#include "courant/io.hpp"

using namespace courant;

namespace {

std::string data(const std::string& name) {
  return std::string(COURANT_DATA_DIR) + "/" + name + ".json";
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects reasons for failure; a criterion passes when none are recorded.
struct Criterion {
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void require_pass(const Report& r, const std::string& what) {
    for (const auto& name : r.failures()) problems.push_back(what + ": " + name);
  }
  void within(double seconds, double limit, const std::string& what) {
    std::ostringstream s;
    s << what << " took " << seconds << " s, limit " << limit << " s";
    require(seconds < limit, s.str());
  }
};

Christoffel zero_christoffel(int n) {
  return Christoffel(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
}

Christoffel sample_christoffel() {
  return christoffel_from_json(read_json_file(data("christoffel_sample")), 2);
}

void collect_kinds(const Cochain& w, std::set<Cochain::Kind>& kinds) {
  kinds.insert(w.kind());
  for (const auto& child : w.node().children) collect_kinds(child, kinds);
}

// Rank as the size of the largest nonzero minor.
Scalar minor_det(const Matrix& m, const std::vector<int>& rows, std::vector<int> cols) {
  if (rows.empty()) return Scalar(1);
  Scalar out;
  std::vector<int> rest(rows.begin() + 1, rows.end());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (m(rows[0], cols[c]).is_zero()) continue;
    std::vector<int> sub = cols;
    sub.erase(sub.begin() + static_cast<long>(c));
    Scalar t = m(rows[0], cols[c]) * minor_det(m, rest, sub);
    out += c % 2 ? -t : t;
  }
  return out;
}

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

int minor_rank(const Matrix& m) {
  for (int k = std::min(m.rows(), m.cols()); k > 0; --k) {
    for (const auto& r : subsets(m.rows(), k)) {
      for (const auto& c : subsets(m.cols(), k)) {
        if (!minor_det(m, r, c).is_zero()) return k;
      }
    }
  }
  return 0;
}

std::vector<int> oracle_bettis(const PointComplex& complex) {
  int r = complex.rank();
  std::vector<int> ranks(r + 2, 0);
  for (int p = 0; p < r; ++p) ranks[p + 1] = minor_rank(complex.differential_matrix(p));
  std::vector<int> out;
  for (int p = 0; p <= r; ++p) {
    out.push_back(static_cast<int>(complex.basis(p).size()) - ranks[p + 1] - ranks[p]);
  }
  return out;
}

// ------------------------------------------------------------------ criteria

void axiom_suite(Criterion& c) {
  for (auto name : {"standard1", "standard2", "standard3", "su2", "su2_plus_line",
                    "port_hamiltonian_1_1"}) {
    auto start = Clock::now();
    Run r = cli({"verify-algebroid", data(name)});
    c.require(r.code == 0, std::string(name) + " exit " + std::to_string(r.code));
    c.within(seconds_since(start), 30, name);
  }
}

void negative_control(Criterion& c) {
  Run r = cli({"verify-algebroid", data("su2_diag112"), "--format", "json"});
  c.require(r.code == 1, "exit " + std::to_string(r.code));
  Json doc = Json::parse(r.out);
  std::vector<std::string> failed;
  for (const auto& check : doc["checks"]) {
    if (check["status"] != "fail") continue;
    failed.push_back(check["name"]);
    c.require(check["witness"]["arguments"] == "e1, e2, e3", "witness arguments");
    c.require(check["witness"]["residual"] == Json::array({"1"}), "residual");
  }
  c.require(failed == std::vector<std::string>{"compatibility"}, "failing set");
}

void d_squared(Criterion& c) {
  auto start = Clock::now();
  auto e = build_standard(2);
  Battery b(2, 4, BatteryConfig{});
  auto pool = sample_cochains(e, b, 4);
  c.require(pool.size() >= 20, "pool has " + std::to_string(pool.size()) + " cochains");
  std::set<Cochain::Kind> kinds;
  int top = 0;
  for (const auto& w : pool) {
    collect_kinds(w, kinds);
    top = std::max(top, w.degree());
    Check sq = check_d_squared(w, b);
    c.require(sq.passed() && sq.evaluations > 0, "d d w != 0 for " + w.describe());
  }
  using K = Cochain::Kind;
  for (K k : {K::ScalarLeaf, K::SectionLeaf, K::Product, K::Differential, K::InteriorE,
              K::InteriorF, K::LieE, K::LieF, K::Sum}) {
    c.require(kinds.count(k) == 1, "node kind " + std::to_string(static_cast<int>(k)) + " missing");
  }
  c.require(top == 4, "largest degree " + std::to_string(top));
  c.within(seconds_since(start), 120, "d^2 sweep");
}

void cartan(Criterion& c) {
  for (auto e : {build_standard(2), su2()}) {
    Battery b(e->base_dim(), e->rank(), BatteryConfig{});
    Report r = cartan_suite(e, b, sample_cochains(e, b, 3));
    c.require(r.checks.size() == 11, "suite size");
    c.require_pass(r, "rank " + std::to_string(e->rank()));
  }
}

void algebra(Criterion& c) {
  for (auto e : {build_standard(2), su2()}) {
    Battery b(e->base_dim(), e->rank(), BatteryConfig{});
    Report r = algebra_laws(b, sample_cochains(e, b, 4));
    c.require_pass(r, "rank " + std::to_string(e->rank()));
    for (const auto& check : r.checks) c.require(check.evaluations > 0, check.name + " unused");
  }
}

// Connections of criteria 6 and 7, shared with criterion 8.
std::vector<std::pair<std::string, ConnectionPtr>> connections;

void existence(Criterion& c) {
  for (auto name : {"standard1", "standard2", "standard3"}) {
    Run r = cli({"connection-build", data(name)});
    c.require(r.code == 0, std::string("connection-build ") + name);
    connections.emplace_back(name, build_connection(predual_self(algebroid_from_json(read_json_file(data(name))))));
  }
  auto ph = algebroid_from_json(read_json_file(data("port_hamiltonian_1_1")));
  for (auto side : {"predual_ph_v", "predual_ph_vdual"}) {
    Run r = cli({"connection-build", data("port_hamiltonian_1_1"), data(side)});
    c.require(r.code == 0, std::string("connection-build ") + side);
    connections.emplace_back(side, build_connection(predual_from_json(read_json_file(data(side)), ph)));
  }
  BatteryConfig cfg;
  for (const auto& [name, nabla] : connections) {
    c.require_pass(verify_connection(*nabla, cfg), name);
  }
  auto e = build_standard(2);
  auto a = build_christoffel_connection(e, sample_christoffel());
  auto b = build_connection(a->predual_ptr());
  c.require(a->gamma() != b->gamma(), "the two connections coincide");
  auto mix = affine_combine(*a, *b, parse_scalar("x1", 2));
  c.require_pass(verify_connection(*mix, cfg), "affine combination");
  c.require_pass(difference_check(*a, *b, cfg), "difference");
  connections.emplace_back("affine", mix);
}

void curvature(Criterion& c) {
  auto e = build_standard(2);
  BatteryConfig cfg;
  auto flat = build_christoffel_connection(e, zero_christoffel(2));
  auto curved = build_christoffel_connection(e, sample_christoffel());
  for (const auto& [name, nabla] : {std::pair{"zero", flat}, std::pair{"random", curved}}) {
    Report r = curvature_laws(nabla, cfg);
    c.require_pass(r, name);
    for (auto check : {"curvature0_linear_in_b", "curvature1_linear_in_b",
                       "curvature_kills_image_of_d", "covariant_square_components",
                       "curvature_symbol_second_slot"}) {
      c.require(r.find(check) != nullptr, std::string("missing ") + check);
    }
    connections.emplace_back(std::string("christoffel ") + name, nabla);
  }
  // R_1(f)(Y, eta) = (0, Hess f(Y, .)) when Delta = 0.
  Batteries bt(flat->predual(), cfg);
  Check hess = check_mixed("hessian", "R_1(f)(Y, eta) = (0, Hess f(Y, .))", bt, 0, 1, 1,
                           [&](const Battery::Tuple& x, const Battery::Tuple& y) {
                             const Scalar& f = bt.e.function(x.functions[0]);
                             BSection b = bt.b.vector<BSection>(y.vectors[0]);
                             BSection expected(4);
                             for (int k = 0; k < 2; ++k) {
                               for (int a = 0; a < 2; ++a) {
                                 expected[2 + k] += b[a] * f.derivative(a).derivative(k);
                               }
                             }
                             return (flat->curvature1(f, b) - expected).components();
                           });
  c.require(hess.passed() && hess.evaluations > 0, "hessian oracle");
}

void bianchi(Criterion& c) {
  auto start = Clock::now();
  BatteryConfig cfg;
  for (const auto& [name, nabla] : connections) {
    Report r = bianchi_check(nabla, cfg);
    c.require_pass(r, name);
    c.require(r.find("bianchi_sections") && r.find("bianchi_function_slot"), "checks present");
  }
  c.require(connections.size() == 8, "connection count " + std::to_string(connections.size()));
  c.within(seconds_since(start), 300, "Bianchi");
}

void bott(Criterion& c) {
  for (auto frame : {"dirac_tangent", "dirac_graph"}) {
    Run r = cli({"bott", data("standard2"), data(frame), "--format", "json"});
    c.require(r.code == 0, std::string(frame) + " exit " + std::to_string(r.code));
    if (r.code != 0) continue;
    Json doc = Json::parse(r.out);
    for (const auto& check : doc["checks"]) {
      if (check["name"] == "flat_r0" || check["name"] == "flat_r1") {
        c.require(check["status"] == "pass" && check["evaluations"].get<int>() > 0,
                  std::string(frame) + " not flat");
      }
    }
  }
  Run bad = cli({"bott", data("standard2"), data("bad_dirac")});
  c.require(bad.code == 3, "bad_dirac exit " + std::to_string(bad.code));
  c.require(bad.err.find("not isotropic: <l1, l2> = 1") != std::string::npos, "witness");
}

void cohomology(Criterion& c) {
  auto start = Clock::now();
  Run r = cli({"cohomology", data("su2"), "--max-p", "3", "--format", "json"});
  c.require(r.code == 0, "cohomology su2 exit " + std::to_string(r.code));
  std::vector<int> table;
  Json doc = Json::parse(r.out);
  for (const auto& row : doc["table"]) table.push_back(row["betti"]);
  c.require(table == std::vector<int>{1, 0, 0, 1}, "su2 table");
  for (auto [name, expected] : {std::pair{"su2", std::vector<int>{1, 0, 0, 1}},
                                std::pair{"abelian4", std::vector<int>{1, 4, 6, 4, 1}}}) {
    PointComplex complex(algebroid_from_json(read_json_file(data(name))));
    std::vector<int> betti;
    for (int p = 0; p <= complex.rank(); ++p) betti.push_back(complex.betti(p));
    c.require(betti == expected, std::string(name) + " betti");
    c.require(oracle_bettis(complex) == expected, std::string(name) + " oracle");
    Report rep = cohomology_report(complex, complex.rank());
    c.require_pass(rep, name);
    c.require(rep.find("matches_cochain_evaluator") != nullptr, "evaluator cross-check");
  }
  c.within(seconds_since(start), 10, "cohomology");
}

void determinism(Criterion& c) {
  std::vector<std::vector<std::string>> commands{
      {"verify-algebroid", data("standard2"), "--seed", "5"},
      {"cartan", data("standard2"), "--cochains", data("cochains_standard2"), "--seed", "3"},
      {"curvature", data("standard2"), "--christoffel", data("christoffel_sample")},
      {"bott", data("standard2"), data("dirac_graph"), "--extras", "5"},
      {"verify-algebroid", data("su2_diag112")},
  };
  for (auto args : commands) {
    args.push_back("--format");
    args.push_back("json");
    Run a = cli(args);
    Run b = cli(args);
    c.require(a.out == b.out && !a.out.empty(), args[0] + " reports differ");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"axiom suite on the example algebroids", axiom_suite},
      {"negative control su(2) with G = diag(1,1,2)", negative_control},
      {"d^2 = 0 on sampled cochains over standard(2)", d_squared},
      {"Cartan calculus on standard(2) and su(2)", cartan},
      {"product laws and Leibniz rules", algebra},
      {"connection existence, affine combination, difference", existence},
      {"curvature laws of the coordinate connection", curvature},
      {"Bianchi identity", bianchi},
      {"Dirac structure connection", bott},
      {"cohomology over a point", cohomology},
      {"deterministic JSON reports", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    auto start = Clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.problems.push_back(std::string("exception: ") + e.what());
    }
    bool ok = c.problems.empty();
    failed += ok ? 0 : 1;
    std::printf("%s  %2zu  %-55s %7.2f s\n", ok ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), seconds_since(start));
    for (const auto& p : c.problems) std::printf("          %s\n", p.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
