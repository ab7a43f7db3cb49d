#pragma once

// Reports: a structured document (JSON, keys in insertion order) and a
// plain-text rendering of the same document. Polynomials are always stored
// as canonical strings.
//
// Schema "poissym-report/1":
//   schema       string
//   command      string
//   status       "pass" | "fail"
//   exit_code    int
//   ring         { variables: [string], weights: [int] }
//   input        command-specific echo of the problem
//   results      command-specific values
//   certificates [ { kind, passed, ring, ideal: [poly], notes: [string],
//                    evidence: [ { label, tuple: [int], residual: poly } ],
//                    failing: [label] (failed certificates only) } ]
//   stopped_after  kind of the failing certificate (only when short-circuited)
//   timings      { stage: milliseconds }    (omitted with --no-timings)

#include <chrono>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "poissym/certificate.hpp"
#include "poissym/derham.hpp"
#include "poissym/gbengine.hpp"
#include "poissym/modvec.hpp"
#include "poissym/polyring.hpp"

namespace poissym {

using Json = nlohmann::ordered_json;

inline constexpr const char* report_schema = "poissym-report/1";

inline Json to_json(const VarRing& ring) {
  return Json{{"variables", ring.names()}, {"weights", ring.weights()}};
}

inline Json to_json(const Poly& f, const VarRing& ring) { return canonical_string(f, ring); }

inline Json to_json(std::span<const Poly> fs, const VarRing& ring) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(canonical_string(f, ring));
  return out;
}

inline Json to_json(const ModVec& v, const VarRing& ring) {
  Json out = Json::array();
  for (const auto& e : v.entries()) out.push_back(canonical_string(e, ring));
  return out;
}

inline Json to_json(const PolyMatrix& m, const VarRing& ring) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(canonical_string(m.at(i, j), ring));
    out.push_back(std::move(row));
  }
  return out;
}

inline Json to_json(const Certificate& c) {
  Json evidence = Json::array();
  for (const auto& e : c.evidence)
    evidence.push_back({{"label", e.label}, {"tuple", e.tuple}, {"residual", canonical_string(e.residual, c.ring)}});
  Json out{{"kind", c.kind},
           {"passed", c.passed},
           {"ring", to_json(c.ring)},
           {"ideal", to_json(c.ideal, c.ring)},
           {"notes", c.notes},
           {"evidence", std::move(evidence)}};
  if (!c.passed) {
    // labels whose residual survives reduction, for the text rendering
    const Ideal I = c.ideal.empty() ? Ideal::zero(c.ring) : Ideal(c.ring, c.ideal);
    Json failing = Json::array();
    for (const auto& e : c.evidence)
      if (!normal_form(e.residual, I).is_zero()) failing.push_back(e.label);
    out["failing"] = std::move(failing);
  }
  return out;
}

/// "c*(f)^k" for a determinant equal to c·f^k.
inline std::string power_form_string(const Rational& c, unsigned k, const Poly& f, const VarRing& ring) {
  if (k == 0) return c.get_str();
  std::string base = "(" + canonical_string(f, ring) + ")";
  if (k > 1) base += "^" + std::to_string(k);
  if (c == 1) return base;
  if (c == -1) return "-" + base;
  return c.get_str() + "*" + base;
}

inline Json determinant_json(const GramForm& w) {
  const auto& ring = w.presentation.ring();
  const GramDeterminant det = gram_determinant(w);
  Json out{{"raw", canonical_string(det.raw, ring)}, {"reduced", canonical_string(det.reduced, ring)}};
  if (det.power_form) {
    const auto gens = w.presentation.ideal.nonzero_generators();
    out["factored"] = power_form_string(det.power_form->first, det.power_form->second, gens.front(), ring);
  }
  return out;
}

/// Wall-clock stage timings in insertion order.
class StageTimer {
 public:
  template <class Fn>
  decltype(auto) run(const std::string& stage, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      StageTimer* self;
      std::string stage;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        self->stages_.emplace_back(stage, ms);
      }
    } record{this, stage, start};
    return fn();
  }

  Json to_json() const {
    Json out = Json::object();
    for (const auto& [stage, ms] : stages_) out[stage] = static_cast<double>(static_cast<long long>(ms * 1000)) / 1000;
    return out;
  }

 private:
  std::vector<std::pair<std::string, double>> stages_;
};

namespace detail {

inline std::string inline_value(const Json& x) {
  if (x.is_string()) return x.get<std::string>();
  if (!x.is_array()) return x.dump();
  std::string out = "[";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? ", " : "") + inline_value(x[i]);
  return out + "]";
}

/// An object whose values are scalars or lists of scalars.
inline bool flat(const Json& obj) {
  for (const auto& [key, x] : obj.items()) {
    if (x.is_object()) return false;
    if (x.is_array())
      for (const auto& y : x)
        if (y.is_structured()) return false;
  }
  return true;
}

inline void render_value(std::ostringstream& out, const Json& v, const std::string& indent) {
  if (v.is_array()) {
    for (const auto& item : v) {
      if (item.is_object() && flat(item)) {
        out << indent << "-";
        bool first = true;
        for (const auto& [key, x] : item.items()) {
          out << (first ? " " : ", ") << key << ": " << inline_value(x);
          first = false;
        }
        out << "\n";
      } else if (item.is_object()) {
        out << indent << "-\n";
        render_value(out, item, indent + "    ");
      } else if (item.is_array()) {
        out << indent << inline_value(item) << "\n";
      } else {
        out << indent << "- " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
      }
    }
    return;
  }
  for (const auto& [key, item] : v.items()) {
    if (item.is_structured() && !item.empty()) {
      out << indent << key << ":\n";
      render_value(out, item, indent + "  ");
    } else {
      out << indent << key << ": " << (item.is_string() ? item.get<std::string>() : item.dump()) << "\n";
    }
  }
}

}  // namespace detail

/// Plain-text rendering of a report document.
inline std::string render_text(const Json& doc) {
  std::ostringstream out;
  out << "poissym " << doc.value("command", std::string("?")) << ": "
      << (doc.value("status", std::string("fail")) == "pass" ? "PASS" : "FAIL") << "\n";
  if (doc.contains("ring")) {
    out << "ring: k[";
    bool first = true;
    for (const auto& v : doc["ring"]["variables"]) {
      out << (first ? "" : ", ") << v.get<std::string>();
      first = false;
    }
    out << "]\n";
  }
  if (doc.contains("input") && !doc["input"].empty()) {
    out << "\ninput\n";
    detail::render_value(out, doc["input"], "  ");
  }
  if (doc.contains("results") && !doc["results"].empty()) {
    out << "\nresults\n";
    detail::render_value(out, doc["results"], "  ");
  }
  if (doc.contains("certificates") && !doc["certificates"].empty()) {
    out << "\ncertificates\n";
    for (const auto& c : doc["certificates"]) {
      std::size_t nonzero = 0;
      for (const auto& e : c["evidence"])
        if (e["residual"] != "0") ++nonzero;
      out << "  [" << (c["passed"].get<bool>() ? "PASS" : "FAIL") << "] " << c["kind"].get<std::string>() << ": "
          << c["evidence"].size() << (c["evidence"].size() == 1 ? " residual, " : " residuals, ") << nonzero << " nonzero before reduction\n";
      for (const auto& n : c["notes"]) out << "      note: " << n.get<std::string>() << "\n";
      if (c.contains("failing"))
        for (const auto& label : c["failing"]) out << "      nonzero modulo the ideal: " << label.get<std::string>() << "\n";
    }
  }
  if (doc.contains("stopped_after")) out << "\nstopped after the failing " << doc["stopped_after"].get<std::string>() << " check\n";
  if (doc.contains("timings") && !doc["timings"].empty()) {
    out << "\ntimings (ms)\n";
    detail::render_value(out, doc["timings"], "  ");
  }
  return out.str();
}

inline std::string render_machine(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace poissym
