#include "lpa/report.hpp"

#include "lpa/error.hpp"

namespace lpa {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json base_certificate(const char* operation, const char* check) {
  return Json{{"operation", operation}, {"check", check}, {"reverify", "verify"}};
}

Path path_from_json(const Graph& g, const Json& j) {
  std::vector<EdgeId> edges;
  for (const auto& name : j.at("edges")) edges.push_back(g.edge_id(name.get<std::string>()));
  return g.make_path(edges, g.vertex(j.at("base").get<std::string>()));
}

CertificateCheck fail(std::string detail) { return {false, std::move(detail)}; }

}  // namespace

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (const auto& x : m.row(r)) row.push_back(x.coefficient_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(Field field, std::size_t cols, const Json& rows) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ShapeMismatch("matrix row has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = field.parse_scalar(rows[r][c].get<std::string>());
  }
  return m;
}

Json path_json(const Graph& g, const Path& p) {
  Json edges = Json::array();
  for (EdgeId e : p.edges) edges.push_back(g.edge_name(e));
  return Json{{"base", g.vertex_name(p.base)}, {"edges", std::move(edges)}};
}

Json block_matrix_json(const Graph& g, const BlockMatrix& m) {
  Json out = Json::object();
  for (const auto& b : m.blocks) out[g.vertex_name(b.vertex)] = matrix_json(b.matrix);
  return out;
}

Json laurent_json(const LaurentPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, k] : p.terms()) terms.push_back(Json{{"exponent", e}, {"coefficient", k.coefficient_string()}});
  return Json{{"text", p.to_string()}, {"terms", std::move(terms)}};
}

Json loop_certificate_json(const LoopCertificate& cert) {
  Json samples = Json::array();
  for (const auto& s : cert.samples) {
    samples.push_back(Json{{"f", s.f.to_string()}, {"product", s.product.to_string()}, {"preserved", s.preserved}});
  }
  return Json{
      {"seed", cert.seed},
      {"element", cert.element},
      {"element_image", laurent_json(cert.element_image)},
      {"ghost", cert.ghost},
      {"ghost_image", laurent_json(cert.ghost_image)},
      {"right_annihilator",
       Json{{"argument", "lowest term of (1 - x) f is the lowest term of f times the lowest term of 1 - x"},
            {"lowest_exponent", cert.element_lowest_exponent},
            {"lowest_coefficient", cert.element_lowest_coefficient.coefficient_string()},
            {"samples", std::move(samples)},
            {"trivial", cert.right_annihilator_trivial}}},
      {"ghost_in_double_annihilator", cert.ghost_in_double_annihilator},
      {"principal_ideal",
       Json{{"argument", "evaluation at x = 1 is a ring map vanishing on R(1 - x)"},
            {"element_at_one", cert.element_at_one.coefficient_string()},
            {"ghost_at_one", cert.ghost_at_one.coefficient_string()},
            {"evaluation_multiplicative", cert.evaluation_multiplicative},
            {"ghost_outside", cert.ghost_outside_principal_ideal}}},
      {"holds", cert.holds()},
  };
}

Json evidence_json(const Algebra& algebra, const Evidence& evidence) {
  const Graph& g = algebra.graph();
  return std::visit(
      Overloaded{
          [&](const WitnessEvidence& w) {
            Json j = base_certificate("regularity_witness", "a*r*a == a");
            j["a"] = w.a;
            j["r"] = w.r;
            return j;
          },
          [&](const PInjectivityEvidence& p) {
            Json j = base_certificate("p_injective_at", "l(r(a)) == R a");
            j["a"] = p.a;
            j["holds"] = p.holds;
            j["double_annihilator"] = matrix_json(p.double_annihilator);
            j["principal_ideal"] = matrix_json(p.principal_ideal);
            return j;
          },
          [&](const CycleEvidence& c) {
            Json j = base_certificate("cycle", "closed path visiting no vertex twice");
            j["cycle"] = path_json(g, c.cycle);
            return j;
          },
          [&](const BoundedSearchEvidence& b) {
            Json j = base_certificate("bounded_regularity_search", "a*x*a == a solvable with deg x <= max_length");
            j["a"] = b.a;
            j["max_length"] = b.max_length;
            j["unknowns"] = b.unknowns;
            j["outcome"] = b.r ? "found" : "not_found_up_to";
            if (b.r) j["r"] = *b.r;
            return j;
          },
          [&](const DecompositionEvidence& d) {
            Json j = base_certificate("matricial_decomposition", "basis size == sum of n(w)^2");
            j["dimension"] = d.dimension;
            Json blocks = Json::array();
            for (const auto& [v, n] : d.blocks) blocks.push_back(Json{{"vertex", g.vertex_name(v)}, {"size", n}});
            j["blocks"] = std::move(blocks);
            return j;
          },
          [&](const LoopCertificateEvidence& l) {
            Json j = base_certificate("loop_counterexample", "c^* in l(r(v - c)) and c^* not in R(v - c)");
            j["certificate"] = loop_certificate_json(l.certificate);
            return j;
          },
      },
      evidence);
}

Json verdict_json(const Algebra& algebra, const Verdict& verdict, const ClassifyOptions& options) {
  const Graph& g = algebra.graph();
  Json classification;
  if (verdict.acyclic()) {
    classification = Json{{"kind", "acyclic"}};
  } else {
    classification = Json{{"kind", "cyclic"}, {"cycle", path_json(g, *verdict.cycle())}};
  }
  Json evidence = Json::array();
  for (const auto& e : verdict.evidence()) evidence.push_back(evidence_json(algebra, e));
  Json report{
      {"schema_version", kReportSchemaVersion},
      {"command", "classify"},
      {"graph", g.serialize()},
      {"field", options.field.selector()},
      {"seed", options.seed},
      {"samples", options.samples},
      {"classification", std::move(classification)},
      {"regular", verdict.regular()},
      {"p_injective", verdict.p_injective()},
      {"locally_matricial", verdict.locally_matricial()},
      {"evidence", std::move(evidence)},
  };
  for (const auto& e : verdict.evidence()) {
    if (const auto* d = std::get_if<DecompositionEvidence>(&e)) report["dimension"] = d->dimension;
  }
  return report;
}

CertificateCheck verify_certificate(const Algebra& algebra, const Json& certificate, std::size_t dimension_cap) {
  const Graph& g = algebra.graph();
  const std::string operation = certificate.at("operation").get<std::string>();

  if (operation == "regularity_witness") {
    Element a = algebra.parse_element(certificate.at("a").get<std::string>());
    Element r = algebra.parse_element(certificate.at("r").get<std::string>());
    if (a * r * a == a) return {true, "a*r*a == a"};
    return fail("a*r*a != a for a = " + a.to_string());
  }

  if (operation == "p_injective_at") {
    FiniteAlgebra finite(algebra, dimension_cap);
    Element a = algebra.parse_element(certificate.at("a").get<std::string>());
    PInjectivityCheck check = is_p_injective_at(finite, a);
    Matrix lr = matrix_from_json(algebra.field(), finite.dim(), certificate.at("double_annihilator"));
    Matrix ra = matrix_from_json(algebra.field(), finite.dim(), certificate.at("principal_ideal"));
    if (!(lr == check.double_annihilator.echelon()) || !(ra == check.principal_ideal.echelon())) {
      return fail("recomputed echelon forms differ for a = " + a.to_string());
    }
    if (check.holds != certificate.at("holds").get<bool>()) return fail("recorded outcome differs");
    return {check.holds, check.holds ? "l(r(a)) == R a" : "l(r(a)) != R a"};
  }

  if (operation == "cycle") {
    Path cycle = path_from_json(g, certificate.at("cycle"));
    if (g.is_cycle(cycle)) return {true, "cycle " + g.path_string(cycle)};
    return fail(g.path_string(cycle) + " is not a cycle");
  }

  if (operation == "bounded_regularity_search") {
    Element a = algebra.parse_element(certificate.at("a").get<std::string>());
    auto max_length = certificate.at("max_length").get<std::size_t>();
    BoundedSearchResult result = bounded_regularity_search(algebra, a, max_length);
    std::string outcome = result.found() ? "found" : "not_found_up_to";
    if (outcome != certificate.at("outcome").get<std::string>()) return fail("search outcome differs");
    if (result.unknowns != certificate.at("unknowns").get<std::size_t>()) return fail("unknown count differs");
    if (result.found()) {
      Element r = algebra.parse_element(certificate.at("r").get<std::string>());
      if (!(a * r * a == a)) return fail("recorded r is not a witness");
    }
    return {true, "search outcome " + outcome + " reproduced"};
  }

  if (operation == "matricial_decomposition") {
    auto d = MatricialDecomposition::decompose(algebra, dimension_cap);
    std::size_t basis_size = enumerate_basis(algebra, dimension_cap).size();
    std::size_t sum = 0;
    const Json& blocks = certificate.at("blocks");
    if (blocks.size() != d.blocks().size()) return fail("block count differs");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      auto n = blocks[i].at("size").get<std::size_t>();
      if (g.vertex(blocks[i].at("vertex").get<std::string>()) != d.blocks()[i].vertex ||
          n != d.blocks()[i].paths.size()) {
        return fail("block " + std::to_string(i) + " differs");
      }
      sum += n * n;
    }
    auto dimension = certificate.at("dimension").get<std::size_t>();
    if (sum != dimension || basis_size != dimension) return fail("dimension differs from basis size");
    return {true, "dimension " + std::to_string(dimension)};
  }

  if (operation == "loop_counterexample") {
    const Json& recorded = certificate.at("certificate");
    auto seed = recorded.at("seed").get<std::uint64_t>();
    std::size_t samples = recorded.at("right_annihilator").at("samples").size() - 1;
    LoopCertificate cert = loop_counterexample_certificate(algebra, seed, samples);
    if (loop_certificate_json(cert) != recorded) return fail("recomputed loop certificate differs");
    return {cert.holds(), cert.holds() ? "both facts hold" : "certificate does not hold"};
  }

  return fail("unknown certificate operation '" + operation + "'");
}

CertificateCheck verify_report(const Algebra& algebra, const Json& report, std::size_t dimension_cap) {
  if (report.at("schema_version").get<int>() != kReportSchemaVersion) return fail("unsupported schema version");
  bool acyclic = algebra.graph().is_acyclic();
  std::string kind = report.at("classification").at("kind").get<std::string>();
  if ((kind == "acyclic") != acyclic) return fail("classification disagrees with the graph");
  for (const char* key : {"regular", "p_injective", "locally_matricial"}) {
    if (report.at(key).get<bool>() != acyclic) return fail(std::string(key) + " disagrees with the classification");
  }
  std::size_t index = 0;
  for (const auto& certificate : report.at("evidence")) {
    CertificateCheck check = verify_certificate(algebra, certificate, dimension_cap);
    if (!check.ok) return fail("evidence " + std::to_string(index) + ": " + check.detail);
    ++index;
  }
  return {true, std::to_string(index) + " certificates verified"};
}

}  // namespace lpa
