#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "poissym/polyring.hpp"

namespace poissym {

/// One checked quantity: the residual must lie in the certificate's ideal.
struct Evidence {
  std::string label;
  std::vector<std::size_t> tuple;
  Poly residual;
};

/// A self-contained claim "every residual lies in I". The ring and the
/// ideal generators travel with the evidence so that the claim can be
/// re-checked with nothing but a fresh Gröbner basis and normal forms.
struct Certificate {
  std::string kind;
  bool passed = false;
  VarRing ring;
  std::vector<Poly> ideal;
  std::vector<Evidence> evidence;
  std::vector<std::string> notes;

  std::size_t nonzero_residuals() const {
    return static_cast<std::size_t>(
        std::count_if(evidence.begin(), evidence.end(), [](const Evidence& e) { return !e.residual.is_zero(); }));
  }
};

}  // namespace poissym
