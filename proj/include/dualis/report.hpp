#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dualis {

/// Outcome of one named verification, with human-readable exact witnesses.
struct CheckResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> witnesses;

  void fail(std::string witness) {
    pass = false;
    if (witnesses.size() < 50) witnesses.push_back(std::move(witness));
  }
  void note(std::string line) { witnesses.push_back(std::move(line)); }
  void absorb(const CheckResult& other) {
    if (!other.pass) pass = false;
    for (const auto& w : other.witnesses) witnesses.push_back(other.name + ": " + w);
  }
};

}  // namespace dualis
