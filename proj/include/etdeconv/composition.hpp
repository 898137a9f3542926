/*
Copyright 2026, the etdeconv authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace etdeconv {

class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Multiset of chemical elements with signed counts. A composition that
/// describes a real species must have all counts nonnegative and at least one
/// positive; deltas parsed from Hill strings like "H-1" may carry negative
/// counts until they are applied.
class ElementalComposition {
 public:
  ElementalComposition() = default;

  /// Parse Hill-notation formula with optional signed counts, e.g. "C2H3NO",
  /// "H-1", "C-2H4". Throws ParseError on malformed input.
  static ElementalComposition parse(const std::string& hill);

  int count(const std::string& element) const;
  void add(const std::string& element, int n);
  const std::map<std::string, int>& counts() const { return counts_; }

  bool is_valid_species() const;
  /// Throws ValidationError unless is_valid_species().
  void validate_species(const std::string& context) const;

  ElementalComposition& operator+=(const ElementalComposition& o);
  ElementalComposition operator+(const ElementalComposition& o) const;
  /// Subtraction underflow (any resulting count < 0) throws ValidationError.
  ElementalComposition operator-(const ElementalComposition& o) const;

  bool operator==(const ElementalComposition&) const = default;

  /// Hill order: C, H, then remaining elements alphabetically.
  std::string to_hill() const;

 private:
  std::map<std::string, int> counts_;  // zero entries are erased
};

}  // namespace etdeconv
