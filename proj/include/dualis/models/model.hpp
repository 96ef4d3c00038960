#pragma once

#include "dualis/hecke.hpp"

#include <random>

namespace dualis {

/// A built geometric family instance: complex, coefficients, a sampler of
/// elements of G and a constructor of Hecke data for commensurator elements.
struct Model {
  std::string family;
  std::string id;
  std::shared_ptr<const EquivariantPairComplex> complex;
  Representation rep;
  std::function<GroupElement(std::mt19937_64&)> sample;
  std::function<HeckeDatum(const GroupElement&)> hecke;
  std::vector<GroupElement> hecke_elements;
};

/// Rejection sampling of an element of a finite-index subgroup.
inline GroupElement sample_subgroup(const Model& model, const std::function<bool(const GroupElement&)>& contains,
                                    std::mt19937_64& rng, int attempts = 10000) {
  for (int i = 0; i < attempts; ++i) {
    GroupElement x = model.sample(rng);
    if (contains(x)) return x;
  }
  throw InvariantError("subgroup sampler found no element after " + std::to_string(attempts) + " attempts");
}

}  // namespace dualis
