#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "lpa/checkers.hpp"
#include "lpa/structure.hpp"

namespace lpa {

inline constexpr int kReportSchemaVersion = 1;

using Json = nlohmann::json;

/// Echelon rows as arrays of coefficient strings.
Json matrix_json(const Matrix& m);
Matrix matrix_from_json(Field field, std::size_t cols, const Json& rows);
Json path_json(const Graph& g, const Path& p);
Json block_matrix_json(const Graph& g, const BlockMatrix& m);
Json laurent_json(const LaurentPoly& p);
Json loop_certificate_json(const LoopCertificate& cert);

/// A self-contained certificate; `operation` names the check and every
/// certificate is re-checked by the `verify` command.
Json evidence_json(const Algebra& algebra, const Evidence& evidence);

/// The versioned classification report.
Json verdict_json(const Algebra& algebra, const Verdict& verdict, const ClassifyOptions& options);

struct CertificateCheck {
  bool ok;
  std::string detail;
};

/// Re-runs the check named by a certificate's `operation` against `algebra`.
CertificateCheck verify_certificate(const Algebra& algebra, const Json& certificate,
                                    std::size_t dimension_cap = kDefaultDimensionCap);

/// Re-checks every certificate of a classification report, plus the
/// consistency of its booleans with the graph's acyclicity.
CertificateCheck verify_report(const Algebra& algebra, const Json& report,
                               std::size_t dimension_cap = kDefaultDimensionCap);

}  // namespace lpa
