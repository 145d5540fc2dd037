#include "courant/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "courant/bott.hpp"
#include "courant/cohomology.hpp"
#include "courant/io.hpp"

namespace courant {

namespace {

struct Options {
  BatteryConfig battery;
  std::string format = "text";
  int max_degree = 4;
  int max_p = -1;
  std::string output;
  std::vector<std::string> inputs;
  std::string christoffel;
  std::string cochains;
};

struct Outcome {
  Report report;
  Json extra = Json::object();    // command specific data for the JSON report
  std::vector<std::string> text;  // and its text rendering
};

struct UsageError : Error {
  using Error::Error;
};

void expect_inputs(const Options& o, std::size_t lo, std::size_t hi, const char* usage) {
  if (o.inputs.size() < lo || o.inputs.size() > hi) {
    throw UsageError(std::string("expected ") + usage);
  }
}

AlgebroidPtr load_algebroid(const std::string& path) {
  return algebroid_from_json(read_json_file(path));
}

Battery battery_for(const CourantAlgebroid& e, const Options& o) {
  return Battery(e.base_dim(), e.rank(), o.battery);
}

// One check summarizing a list of per-item checks; the first failure wins.
Check merge(std::string name, std::string identity, const std::vector<Check>& parts) {
  Check out;
  out.name = std::move(name);
  out.identity = std::move(identity);
  for (const auto& c : parts) {
    out.evaluations += c.evaluations;
    if (out.passed() && !c.passed()) {
      out.status = Status::Fail;
      out.witness = c.witness;
      out.detail = c.detail;
    }
  }
  return out;
}

// Connection inputs: ALG CONNECTION (B = E) or ALG PREDUAL CONNECTION, or
// ALG with --christoffel for the coordinate connection on standard(n).
ConnectionPtr load_connection(const Options& o) {
  auto e = load_algebroid(o.inputs[0]);
  if (!o.christoffel.empty()) {
    if (o.inputs.size() != 1) throw UsageError("--christoffel takes only ALGEBROID");
    Christoffel delta = christoffel_from_json(read_json_file(o.christoffel), e->base_dim());
    return build_christoffel_connection(e, delta);
  }
  if (o.inputs.size() < 2) throw UsageError("expected ALGEBROID [PREDUAL] CONNECTION");
  PredualPtr b = o.inputs.size() == 3 ? predual_from_json(read_json_file(o.inputs[1]), e)
                                      : predual_self(e);
  auto table = connection_from_json(read_json_file(o.inputs.back()), *b);
  return std::make_shared<const DorfmanConnection>(b, std::move(table));
}

Outcome verify_algebroid(const Options& o) {
  expect_inputs(o, 1, 1, "ALGEBROID");
  auto e = load_algebroid(o.inputs[0]);
  return {verify_axioms(*e, battery_for(*e, o))};
}

Outcome cartan(const Options& o) {
  expect_inputs(o, 1, 1, "ALGEBROID");
  auto e = load_algebroid(o.inputs[0]);
  Battery b = battery_for(*e, o);
  std::vector<Cochain> pool;
  if (!o.cochains.empty()) {
    Json doc = read_json_file(o.cochains);
    if (doc.is_array()) {
      for (const auto& item : doc) pool.push_back(cochain_from_json(item, e));
    } else {
      pool.push_back(cochain_from_json(doc, e));
    }
  } else {
    pool = sample_cochains(e, b, o.max_degree);
  }
  std::vector<Check> sq;
  std::vector<Check> sym;
  std::vector<Check> ord;
  for (const auto& w : pool) {
    auto tag = [&](Check c) {
      if (!c.passed()) c.detail = "on " + w.describe() + (c.detail.empty() ? "" : ": " + c.detail);
      return c;
    };
    if (w.degree() + 2 <= kMaxCochainDegree) sq.push_back(tag(check_d_squared(w, b)));
    sym.push_back(tag(check_symmetry(w, b)));
    ord.push_back(tag(check_order(w, b)));
  }
  Outcome out;
  out.report.checks.push_back(merge("d_squared", "d d w = 0", sq));
  out.report.checks.push_back(merge("symmetry", "cochain symmetry condition", sym));
  out.report.checks.push_back(merge("order", "iterated symbols vanish past the order", ord));
  out.report.append(algebra_laws(b, pool));
  out.report.append(cartan_suite(e, b, pool));
  out.extra["cochains"] = pool.size();
  out.text.push_back("cochains: " + std::to_string(pool.size()));
  return out;
}

Outcome connection_build(const Options& o) {
  expect_inputs(o, 1, 2, "ALGEBROID [PREDUAL]");
  auto e = load_algebroid(o.inputs[0]);
  PredualPtr b = o.inputs.size() == 2 ? predual_from_json(read_json_file(o.inputs[1]), e)
                                      : predual_self(e);
  ConnectionPtr nabla = build_connection(b);
  Outcome out{verify_connection(*nabla, o.battery)};
  out.extra["connection"] = connection_to_json(*nabla);
  out.text.push_back("connection: " + out.extra["connection"].dump());
  return out;
}

Outcome connection_verify(const Options& o) {
  expect_inputs(o, 1, 3, "ALGEBROID [PREDUAL] CONNECTION");
  ConnectionPtr nabla = load_connection(o);
  Outcome out{verify_connection(*nabla, o.battery)};
  out.report.append(verify_induced(InducedConnection(nabla), o.battery));
  out.report.append(verify_dual(DualConnection(nabla), *nabla, o.battery));
  return out;
}

Outcome curvature(const Options& o) {
  expect_inputs(o, 1, 3, "ALGEBROID [PREDUAL] CONNECTION");
  ConnectionPtr nabla = load_connection(o);
  Outcome out{curvature_laws(nabla, o.battery)};
  out.report.append(flatness(nabla, o.battery));
  out.report.append(endo_checks(nabla, o.battery));
  return out;
}

Outcome bianchi(const Options& o) {
  expect_inputs(o, 1, 3, "ALGEBROID [PREDUAL] CONNECTION");
  return {bianchi_check(load_connection(o), o.battery)};
}

Outcome bott(const Options& o) {
  expect_inputs(o, 2, 2, "ALGEBROID DIRAC");
  auto e = load_algebroid(o.inputs[0]);
  auto frame = dirac_from_json(read_json_file(o.inputs[1]), *e);
  BottConnection conn(e, std::move(frame));
  Outcome out{bott_report(conn, o.battery)};
  Json gamma = Json::object();
  for (int i = 0; i < conn.rank(); ++i) {
    for (int j = 0; j < conn.rank(); ++j) {
      const BSection& v = conn.gamma()[i][j];
      if (v.is_zero()) continue;
      Json row = Json::array();
      for (const auto& s : v.components()) row.push_back(s.to_string());
      gamma[std::to_string(i + 1) + "," + std::to_string(j + 1)] = row;
    }
  }
  out.extra["connection"] = Json{{"gamma", gamma}};
  out.text.push_back("connection: " + out.extra["connection"].dump());
  return out;
}

Outcome cohomology(const Options& o) {
  expect_inputs(o, 1, 1, "ALGEBROID");
  PointComplex complex(load_algebroid(o.inputs[0]));
  int max_p = o.max_p < 0 ? complex.rank() : o.max_p;
  if (max_p > complex.rank()) {
    throw UsageError("--max-p " + std::to_string(max_p) + " exceeds the rank " +
                     std::to_string(complex.rank()));
  }
  Outcome out{cohomology_report(complex, max_p)};
  Json table = Json::array();
  out.text.push_back("p  dim  rank_d  betti");
  for (const auto& row : complex.table(max_p)) {
    table.push_back(Json{{"p", row.p}, {"dim", row.dim}, {"rank_d", row.rank_d}, {"betti", row.betti}});
    out.text.push_back(std::to_string(row.p) + "  " + std::to_string(row.dim) + "  " +
                       std::to_string(row.rank_d) + "  " + std::to_string(row.betti));
  }
  out.extra["table"] = table;
  return out;
}

Outcome predual_diagnose(const Options& o) {
  expect_inputs(o, 2, 2, "ALGEBROID PREDUAL");
  auto e = load_algebroid(o.inputs[0]);
  auto b = predual_from_json(read_json_file(o.inputs[1]), e);
  PredualDiagnosis d = diagnose(*b);
  Outcome out;
  out.extra["diagnosis"] = Json{{"rank_e", d.rank_e},     {"rank_b", d.rank_b},
                                {"rank_pairing", d.rank_pairing}, {"rank_k", d.rank_k},
                                {"rank_f", d.rank_f},     {"classification", d.classification}};
  out.text.push_back("rank E = " + std::to_string(d.rank_e) + ", rank B = " +
                     std::to_string(d.rank_b) + ", rank <<.,.>> = " +
                     std::to_string(d.rank_pairing));
  out.text.push_back("rank K = " + std::to_string(d.rank_k) + ", rank F = " +
                     std::to_string(d.rank_f) + ": " + d.classification);
  auto frame = detect_adapted_frame(*b);
  out.extra["adapted_frame"] = frame ? (*frame == AdaptedFrame::K ? "K" : "F") : "none";
  out.text.push_back(std::string("adapted frame: ") + out.extra["adapted_frame"].get<std::string>());
  return out;
}

std::string render_text(const std::string& command, const Outcome& outcome) {
  std::ostringstream s;
  s << command << "\n";
  for (const auto& line : outcome.text) s << line << "\n";
  std::size_t failed = 0;
  for (const auto& c : outcome.report.checks) {
    s << (c.status == Status::Fail ? "FAIL" : c.status == Status::Info ? "INFO" : "PASS") << "  "
      << c.name << "  [" << c.identity << "]  evaluations=" << c.evaluations;
    if (!c.detail.empty()) s << "  " << c.detail;
    s << "\n";
    if (c.witness) {
      s << "      at " << c.witness->arguments << "\n";
      s << "      residual " << c.witness->residual_text() << "\n";
    }
    if (!c.passed()) ++failed;
  }
  s << outcome.report.checks.size() << " checks, " << failed << " failed\n";
  return s.str();
}

std::string render_json(const std::string& command, const Options& o, const Outcome& outcome) {
  Json doc;
  doc["command"] = command;
  doc["config"] = Json{{"inputs", o.inputs},
                       {"battery_degree", o.battery.degree},
                       {"extras", o.battery.extras},
                       {"seed", o.battery.seed},
                       {"max_degree", o.max_degree},
                       {"max_p", o.max_p}};
  if (!o.christoffel.empty()) doc["config"]["christoffel"] = o.christoffel;
  if (!o.cochains.empty()) doc["config"]["cochains"] = o.cochains;
  for (const auto& [key, value] : outcome.extra.items()) doc[key] = value;
  doc["checks"] = report_to_json(outcome.report);
  doc["passed"] = outcome.report.passed();
  return doc.dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using Handler = std::function<Outcome(const Options&)>;
  const std::vector<std::pair<std::string, std::pair<std::string, Handler>>> commands{
      {"verify-algebroid", {"Check the Courant algebroid axioms", verify_algebroid}},
      {"cartan", {"Check d^2 = 0, the product laws and the Cartan calculus", cartan}},
      {"connection-build", {"Build a Dorfman connection and verify it", connection_build}},
      {"connection-verify",
       {"Verify a Dorfman connection, its induced and dual connections", connection_verify}},
      {"curvature", {"Check the curvature identities of a connection", curvature}},
      {"bianchi", {"Check the Bianchi identity of a connection", bianchi}},
      {"bott", {"Build and check the connection of a Dirac structure", bott}},
      {"cohomology", {"Cohomology of an algebroid over a point", cohomology}},
      {"predual-diagnose", {"Kernel ranks of a predual pairing", predual_diagnose}},
  };

  Options o;
  CLI::App app{"Exact verification of Courant algebroid calculus", "courant"};
  app.require_subcommand(1);
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, info] : commands) {
    CLI::App* sub = app.add_subcommand(name, info.first);
    sub->add_option("inputs", o.inputs, "Input JSON files")->required();
    sub->add_option("--battery-degree", o.battery.degree, "Battery monomial degree D")
        ->check(CLI::Range(0, 6));
    sub->add_option("--extras", o.battery.extras, "Random battery entries t")
        ->check(CLI::Range(0, 64));
    sub->add_option("--seed", o.battery.seed, "Battery seed");
    sub->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--max-degree", o.max_degree, "Largest sampled cochain degree")
        ->check(CLI::Range(0, kMaxCochainDegree));
    sub->add_option("--max-p", o.max_p, "Largest cochain degree in the table")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("-o", o.output, "Write the report to this file");
    if (name == "curvature" || name == "bianchi" || name == "connection-verify") {
      sub->add_option("--christoffel", o.christoffel, "Christoffel symbols on standard(n)");
    }
    if (name == "cartan") sub->add_option("--cochains", o.cochains, "Cochain expression trees");
    subs[name] = sub;
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  for (const auto& [name, info] : commands) {
    if (!subs[name]->parsed()) continue;
    try {
      Outcome outcome = info.second(o);
      std::string text = o.format == "json" ? render_json(name, o, outcome)
                                            : render_text(name, outcome);
      if (o.output.empty()) {
        out << text;
      } else {
        std::ofstream file(o.output, std::ios::binary);
        if (!file) throw UsageError("cannot write " + o.output);
        file << text;
        out << name << ": " << (outcome.report.passed() ? "pass" : "fail") << ", report in "
            << o.output << "\n";
      }
      return outcome.report.passed() ? 0 : 1;
    } catch (const UsageError& e) {
      err << name << ": usage error: " << e.what() << "\n";
      return 2;
    } catch (const ParseError& e) {
      err << name << ": malformed input: " << e.what() << "\n";
      return 2;
    } catch (const DomainError& e) {
      err << name << ": precondition failed: " << e.what() << "\n";
      return 3;
    } catch (const Error& e) {
      err << name << ": " << e.what() << "\n";
      return 1;
    }
  }
  return 2;
}

}  // namespace courant
