#pragma once

// Independent replay of report certificates. Only the expression parser,
// a fresh Gröbner basis and normal forms are used here.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "poissym/errors.hpp"
#include "poissym/gbengine.hpp"
#include "poissym/polyring.hpp"

namespace poissym {

struct VerifyOutcome {
  /// 0 when every residual reduces to 0, 1 otherwise.
  int exit_code = 0;
  std::size_t certificates = 0;
  std::size_t residuals = 0;
  std::vector<std::string> failures;
  std::vector<std::string> warnings;
};

/// Re-reduces every evidence residual of `doc` modulo its certificate's
/// ideal. Throws InputError for a document that does not follow the
/// report schema.
inline VerifyOutcome verify_report(const nlohmann::ordered_json& doc) {
  VerifyOutcome out;
  auto malformed = [](const std::string& what) { return InputError("malformed report: " + what); };
  if (!doc.is_object()) throw malformed("not an object");
  if (!doc.contains("certificates")) {
    out.warnings.push_back("report has no certificates");
    return out;
  }
  const auto& certs = doc["certificates"];
  if (!certs.is_array()) throw malformed("'certificates' is not a list");
  if (certs.empty()) out.warnings.push_back("report has no certificates");

  for (std::size_t c = 0; c < certs.size(); ++c) {
    const auto& cert = certs[c];
    const std::string where = "certificate " + std::to_string(c);
    try {
      const std::string kind = cert.at("kind").get<std::string>();
      const VarRing ring(cert.at("ring").at("variables").get<std::vector<std::string>>(),
                         cert.at("ring").at("weights").get<std::vector<unsigned>>());
      std::vector<Poly> gens;
      for (const auto& g : cert.at("ideal")) gens.push_back(parse_poly(g.get<std::string>(), ring));
      const Ideal I = gens.empty() ? Ideal::zero(ring) : Ideal(ring, gens);
      std::size_t bad = 0;
      for (const auto& e : cert.at("evidence")) {
        ++out.residuals;
        const Poly r = parse_poly(e.at("residual").get<std::string>(), ring);
        if (!normal_form(r, I).is_zero()) {
          ++bad;
          out.failures.push_back(kind + ": " + e.at("label").get<std::string>() + " does not reduce to 0");
        }
      }
      const bool claimed = cert.at("passed").get<bool>();
      if (claimed && bad > 0) out.warnings.push_back(kind + " was reported as passing but does not replay");
      if (!claimed && bad == 0) out.warnings.push_back(kind + " was reported as failing but every residual replays to 0");
      ++out.certificates;
    } catch (const nlohmann::json::exception& e) {
      throw malformed(where + ": " + e.what());
    } catch (const ParseError& e) {
      throw malformed(where + ": " + e.what());
    }
  }
  out.exit_code = out.failures.empty() ? 0 : 1;
  return out;
}

}  // namespace poissym
