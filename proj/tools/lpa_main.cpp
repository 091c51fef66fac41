#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lpa/checkers.hpp"
#include "lpa/error.hpp"
#include "lpa/report.hpp"

namespace {

using namespace lpa;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParseError = 2,
  kPrecondition = 3,
  kDimensionCap = 4,
};

struct Options {
  std::string field = "q";
  std::uint64_t seed = 0;
  std::size_t dimension_cap = kDefaultDimensionCap;
  std::string format = "text";
  std::size_t samples = 50;
};

/// Output of one command: a JSON document and its text rendering.
struct Output {
  Json json;
  std::string text;
  int exit_code = kOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Graph load_graph(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_graph(text);
  } catch (const ParseError&) {
    std::cerr << path << ": ";
    throw;
  }
}

Json header(const char* command, const Algebra& algebra, const Options& options) {
  return Json{{"schema_version", kReportSchemaVersion},
              {"command", command},
              {"graph", algebra.graph().serialize()},
              {"field", algebra.field().selector()},
              {"seed", options.seed}};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string subspace_text(const FiniteAlgebra& fd, const Subspace& s) {
  std::string out = "span{";
  bool first = true;
  for (const Element& e : fd.elements(s)) {
    out += (first ? "" : ", ") + e.to_string();
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

std::string evidence_text(const Algebra& algebra, const Evidence& evidence) {
  const Graph& g = algebra.graph();
  return std::visit(
      [&](const auto& e) -> std::string {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, WitnessEvidence>) {
          return "witness: a = " + e.a + ", r = " + e.r;
        } else if constexpr (std::is_same_v<T, PInjectivityEvidence>) {
          return "p-injective at " + e.a + ": " + yes_no(e.holds) + " (dim l(r(a)) = " +
                 std::to_string(e.double_annihilator.rows()) + ", dim Ra = " +
                 std::to_string(e.principal_ideal.rows()) + ")";
        } else if constexpr (std::is_same_v<T, CycleEvidence>) {
          return "cycle: " + g.path_string(e.cycle) + " at " + g.vertex_name(e.cycle.base);
        } else if constexpr (std::is_same_v<T, BoundedSearchEvidence>) {
          std::string head = "bounded search for r with a r a = a, a = " + e.a + ", length <= " +
                             std::to_string(e.max_length) + ", " + std::to_string(e.unknowns) + " unknowns: ";
          return head + (e.r ? "found r = " + *e.r : "not found (evidence, not proof)");
        } else if constexpr (std::is_same_v<T, DecompositionEvidence>) {
          std::string out = "decomposition: dim " + std::to_string(e.dimension) + " =";
          for (std::size_t i = 0; i < e.blocks.size(); ++i) {
            out += (i ? " + M_" : " M_") + std::to_string(e.blocks[i].second) + "(" +
                   g.vertex_name(e.blocks[i].first) + ")";
          }
          return out;
        } else {
          return "loop certificate: " + std::string(e.certificate.holds() ? "holds" : "FAILS");
        }
      },
      evidence);
}

std::string loop_certificate_text(const LoopCertificate& cert) {
  std::ostringstream out;
  out << "element " << cert.element << " -> " << cert.element_image.to_string() << "\n"
      << "ghost " << cert.ghost << " -> " << cert.ghost_image.to_string() << "\n"
      << "fact 1: r(" << cert.element << ") = 0, so " << cert.ghost << " lies in l(r(" << cert.element << "))\n"
      << "  lowest term of 1 - x: " << cert.element_lowest_coefficient.coefficient_string() << " x^"
      << cert.element_lowest_exponent << " (nonzero coefficient)\n";
  for (const auto& s : cert.samples) {
    out << "  f = " << s.f.to_string() << "  (1 - x) f = " << s.product.to_string()
        << "  lowest term preserved: " << yes_no(s.preserved) << "\n";
  }
  out << "  holds: " << yes_no(cert.right_annihilator_trivial && cert.ghost_in_double_annihilator) << "\n"
      << "fact 2: " << cert.ghost << " is not in R(" << cert.element << ")\n"
      << "  evaluation at x = 1 is a ring map (checked on samples): " << yes_no(cert.evaluation_multiplicative)
      << "\n"
      << "  eval(1 - x) = " << cert.element_at_one.coefficient_string()
      << ", eval(x^-1) = " << cert.ghost_at_one.coefficient_string() << "\n"
      << "  holds: " << yes_no(cert.ghost_outside_principal_ideal) << "\n"
      << "certificate: " << (cert.holds() ? "both facts hold" : "FAILED") << "\n";
  return out.str();
}

Output run_classify(const std::string& graph_path, const Options& options) {
  Graph g = load_graph(graph_path);
  ClassifyOptions copts;
  copts.field = Field::parse(options.field);
  copts.seed = options.seed;
  copts.samples = options.samples;
  copts.dimension_cap = options.dimension_cap;
  Algebra algebra(g, copts.field);
  Verdict verdict = classify(g, copts);

  Output out;
  out.json = verdict_json(algebra, verdict, copts);
  std::ostringstream text;
  if (verdict.acyclic()) {
    std::size_t dim = out.json["dimension"].get<std::size_t>();
    text << "Acyclic; regular; P-injective; locally matricial; dim " << dim << "\n";
  } else {
    bool certificate = false;
    for (const Evidence& e : verdict.evidence()) certificate = certificate || std::holds_alternative<LoopCertificateEvidence>(e);
    text << "Cyclic(" << g.path_string(*verdict.cycle()) << "); not regular; not P-injective; not locally matricial; "
         << (certificate ? "exact certificate attached" : "bounded-search evidence attached") << "\n";
  }
  for (const Evidence& e : verdict.evidence()) text << "  " << evidence_text(algebra, e) << "\n";
  out.text = text.str();
  return out;
}

Output run_eval(const std::string& graph_path, const std::string& op, const std::vector<std::string>& exprs,
                const Options& options) {
  Algebra algebra(load_graph(graph_path), Field::parse(options.field));
  std::vector<Element> args;
  for (const auto& e : exprs) args.push_back(algebra.parse_element(e));
  std::size_t arity = (op == "mul" || op == "add") ? 2 : 1;
  if (op != "mul" && op != "add" && op != "star" && op != "normalize") {
    throw PreconditionError("unknown operation '" + op + "' (expected mul, add, star or normalize)");
  }
  if (args.size() != arity) {
    throw PreconditionError(op + " takes " + std::to_string(arity) + " element(s), got " + std::to_string(args.size()));
  }
  Element result = op == "mul"    ? algebra.mul(args[0], args[1])
                   : op == "add"  ? algebra.add(args[0], args[1])
                   : op == "star" ? algebra.star(args[0])
                                  : args[0];
  Output out;
  out.json = header("eval", algebra, options);
  out.json["operation"] = op;
  out.json["arguments"] = exprs;
  out.json["result"] = result.to_string();
  out.text = result.to_string() + "\n";
  return out;
}

Output run_witness(const std::string& graph_path, const std::string& expr, const Options& options) {
  Algebra algebra(load_graph(graph_path), Field::parse(options.field));
  FiniteAlgebra fd(algebra, options.dimension_cap);
  Element a = algebra.parse_element(expr);
  auto witness = regularity_witness(fd, a);
  if (!witness) throw InvariantViolation("no regularity witness for " + a.to_string());
  Output out;
  out.json = header("witness", algebra, options);
  out.json["certificate"] = evidence_json(algebra, WitnessEvidence{a.to_string(), witness->r().to_string()});
  out.text = "a = " + a.to_string() + "\nr = " + witness->r().to_string() + "\na·r·a = a ✓\n";
  return out;
}

Output run_pinj(const std::string& graph_path, const std::string& expr, const Options& options) {
  Algebra algebra(load_graph(graph_path), Field::parse(options.field));
  FiniteAlgebra fd(algebra, options.dimension_cap);
  Element a = algebra.parse_element(expr);
  auto check = is_p_injective_at(fd, a);
  Output out;
  out.json = header("pinj", algebra, options);
  out.json["certificate"] = evidence_json(
      algebra, PInjectivityEvidence{a.to_string(), check.holds, check.double_annihilator.echelon(),
                                    check.principal_ideal.echelon()});
  out.text = "a = " + a.to_string() + "\nl(r(a)) = " + subspace_text(fd, check.double_annihilator) +
             "\nRa = " + subspace_text(fd, check.principal_ideal) + "\np-injective at a: " + yes_no(check.holds) +
             "\n";
  return out;
}

Output run_annihilate(const std::string& graph_path, const std::string& expr, const std::string& side,
                      const Options& options) {
  Algebra algebra(load_graph(graph_path), Field::parse(options.field));
  FiniteAlgebra fd(algebra, options.dimension_cap);
  Element a = algebra.parse_element(expr);
  Subspace s = side == "right"  ? fd.right_annihilator(a)
               : side == "left" ? fd.left_annihilator(fd.span(std::span<const Element>(&a, 1)))
               : side == "double" ? fd.left_annihilator(fd.right_annihilator(a))
                                  : fd.principal_left_ideal(a);
  Output out;
  out.json = header("annihilate", algebra, options);
  out.json["a"] = a.to_string();
  out.json["side"] = side;
  out.json["dimension"] = s.rank();
  out.json["echelon"] = matrix_json(s.echelon());
  Json basis = Json::array();
  for (const Element& e : fd.elements(s)) basis.push_back(e.to_string());
  out.json["basis"] = std::move(basis);
  out.text = side + "(" + a.to_string() + ") = " + subspace_text(fd, s) + "  (dim " + std::to_string(s.rank()) + ")\n";
  return out;
}

Output run_decompose(const std::string& graph_path, const std::vector<std::string>& exprs, const Options& options) {
  Algebra algebra(load_graph(graph_path), Field::parse(options.field));
  auto d = MatricialDecomposition::decompose(algebra, options.dimension_cap);
  DecompositionEvidence evidence{d.dimension(), {}};
  for (const auto& b : d.blocks()) evidence.blocks.emplace_back(b.vertex, b.paths.size());

  Output out;
  out.json = header("decompose", algebra, options);
  out.json["certificate"] = evidence_json(algebra, evidence);
  std::ostringstream text;
  text << "dim " << d.dimension() << "\n";
  Json blocks = Json::array();
  for (const auto& b : d.blocks()) {
    Json paths = Json::array();
    text << "block " << algebra.graph().vertex_name(b.vertex) << ": n = " << b.paths.size()
         << ", unit " << b.unit.to_string() << ", paths";
    for (const Path& p : b.paths) {
      paths.push_back(algebra.graph().path_string(p));
      text << " " << algebra.graph().path_string(p);
    }
    text << "\n";
    blocks.push_back(Json{{"vertex", algebra.graph().vertex_name(b.vertex)}, {"unit", b.unit.to_string()},
                          {"paths", std::move(paths)}});
  }
  out.json["blocks"] = std::move(blocks);
  Json images = Json::array();
  for (const auto& e : exprs) {
    Element a = algebra.parse_element(e);
    BlockMatrix m = d.to_matrices(a);
    images.push_back(Json{{"element", a.to_string()}, {"matrices", block_matrix_json(algebra.graph(), m)}});
    text << a.to_string() << " ->\n";
    for (const auto& b : m.blocks) {
      text << "  " << algebra.graph().vertex_name(b.vertex) << ":\n";
      std::istringstream rows(b.matrix.to_string());
      for (std::string row; std::getline(rows, row);) text << "    " << row << "\n";
    }
  }
  if (!exprs.empty()) out.json["images"] = std::move(images);
  out.text = text.str();
  return out;
}

Output run_counterexample(const std::string& graph_path, const Options& options) {
  Algebra algebra(load_graph(graph_path), Field::parse(options.field));
  LoopCertificate cert = loop_counterexample_certificate(algebra, options.seed, options.samples);
  Output out;
  out.json = header("counterexample", algebra, options);
  out.json["certificate"] = evidence_json(algebra, LoopCertificateEvidence{cert});
  out.text = loop_certificate_text(cert);
  out.exit_code = cert.holds() ? kOk : kFailure;
  return out;
}

Output run_verify(const std::string& json_path, const std::string& graph_path, const Options& options) {
  Json doc;
  try {
    doc = Json::parse(read_file(json_path));
  } catch (const Json::parse_error& e) {
    throw ParseError(json_path + ": " + e.what(), 1, e.byte);
  }
  std::string graph_text = graph_path.empty() ? doc.value("graph", std::string()) : read_file(graph_path);
  if (graph_text.empty()) throw PreconditionError("certificate carries no graph; pass --graph");
  std::string field = doc.value("field", options.field);
  Algebra algebra(parse_graph(graph_text), Field::parse(field));

  CertificateCheck check{false, ""};
  if (doc.contains("evidence")) {
    check = verify_report(algebra, doc, options.dimension_cap);
  } else if (doc.contains("certificate")) {
    check = verify_certificate(algebra, doc["certificate"], options.dimension_cap);
  } else {
    check = verify_certificate(algebra, doc, options.dimension_cap);
  }
  Output out;
  out.json = header("verify", algebra, options);
  out.json["ok"] = check.ok;
  out.json["detail"] = check.detail;
  out.text = std::string(check.ok ? "verified: " : "verification failed: ") + check.detail + "\n";
  out.exit_code = check.ok ? kOk : kFailure;
  return out;
}

void add_common(CLI::App* cmd, Options& options) {
  cmd->add_option("--field", options.field, "Coefficient field: q or fp:<p>")->capture_default_str();
  cmd->add_option("--seed", options.seed, "Seed for sampled evidence")->capture_default_str();
  cmd->add_option("--dim-cap", options.dimension_cap, "Largest basis size to work with")->capture_default_str();
  cmd->add_option("--format", options.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_option("--samples", options.samples, "Number of sampled elements")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in Leavitt path algebras of finite graphs"};
  app.require_subcommand(1);
  Options options;
  std::string graph_path, op, expr, side = "right", json_path, verify_graph;
  std::vector<std::string> exprs;

  auto* classify_cmd = app.add_subcommand("classify", "Classify the algebra and attach evidence");
  classify_cmd->add_option("graph", graph_path, "Graph file")->required();

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate mul, add, star or normalize");
  eval_cmd->add_option("graph", graph_path, "Graph file")->required();
  eval_cmd->add_option("op", op, "mul | add | star | normalize")->required();
  eval_cmd->add_option("elements", exprs, "Element expressions")->required();

  auto* witness_cmd = app.add_subcommand("witness", "Find r with a r a = a");
  witness_cmd->add_option("graph", graph_path, "Graph file")->required();
  witness_cmd->add_option("element", expr, "Element a")->required();

  auto* pinj_cmd = app.add_subcommand("pinj", "Compare l(r(a)) with Ra");
  pinj_cmd->add_option("graph", graph_path, "Graph file")->required();
  pinj_cmd->add_option("element", expr, "Element a")->required();

  auto* annihilate_cmd = app.add_subcommand("annihilate", "Annihilators and principal left ideals");
  annihilate_cmd->add_option("graph", graph_path, "Graph file")->required();
  annihilate_cmd->add_option("element", expr, "Element a")->required();
  annihilate_cmd->add_option("--side", side, "right: r(a), left: l(a), double: l(r(a)), ideal: Ra")
      ->check(CLI::IsMember({"right", "left", "double", "ideal"}))
      ->capture_default_str();

  auto* decompose_cmd = app.add_subcommand("decompose", "Matricial decomposition of an acyclic algebra");
  decompose_cmd->add_option("graph", graph_path, "Graph file")->required();
  decompose_cmd->add_option("elements", exprs, "Elements to map to block matrices");

  auto* counter_cmd = app.add_subcommand("counterexample", "Exact certificate for v - c on the loop graph");
  counter_cmd->add_option("graph", graph_path, "Graph file")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Re-check a JSON report or certificate");
  verify_cmd->add_option("json", json_path, "JSON file written with --format json")->required();
  verify_cmd->add_option("--graph", verify_graph, "Graph file, when the JSON carries none");

  for (auto* cmd : app.get_subcommands({})) add_common(cmd, options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  try {
    Output out;
    if (*classify_cmd) out = run_classify(graph_path, options);
    else if (*eval_cmd) out = run_eval(graph_path, op, exprs, options);
    else if (*witness_cmd) out = run_witness(graph_path, expr, options);
    else if (*pinj_cmd) out = run_pinj(graph_path, expr, options);
    else if (*annihilate_cmd) out = run_annihilate(graph_path, expr, side, options);
    else if (*decompose_cmd) out = run_decompose(graph_path, exprs, options);
    else if (*counter_cmd) out = run_counterexample(graph_path, options);
    else out = run_verify(json_path, verify_graph, options);

    if (options.format == "json") {
      std::cout << out.json.dump(2) << "\n";
    } else {
      std::cout << out.text;
    }
    return out.exit_code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const DimensionCapExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise --dim-cap)\n";
    return kDimensionCap;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const DivisionByZero& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
