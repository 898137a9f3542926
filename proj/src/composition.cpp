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
#include "etdeconv/composition.hpp"

#include <cctype>
#include <sstream>

namespace etdeconv {

ElementalComposition ElementalComposition::parse(const std::string& hill) {
  ElementalComposition out;
  std::size_t i = 0;
  while (i < hill.size()) {
    if (!std::isupper(static_cast<unsigned char>(hill[i]))) {
      throw ParseError("bad formula '" + hill + "': expected element symbol at position " +
                       std::to_string(i));
    }
    std::string sym(1, hill[i++]);
    if (i < hill.size() && std::islower(static_cast<unsigned char>(hill[i]))) {
      sym += hill[i++];
    }
    int sign = 1;
    if (i < hill.size() && hill[i] == '-') {
      sign = -1;
      ++i;
    }
    int n = 1;
    if (i < hill.size() && std::isdigit(static_cast<unsigned char>(hill[i]))) {
      n = 0;
      while (i < hill.size() && std::isdigit(static_cast<unsigned char>(hill[i]))) {
        n = n * 10 + (hill[i++] - '0');
      }
    } else if (sign < 0 && (i >= hill.size() || !std::isdigit(static_cast<unsigned char>(hill[i])))) {
      // "H-" without digits
      throw ParseError("bad formula '" + hill + "': '-' must be followed by a count");
    }
    out.add(sym, sign * n);
  }
  return out;
}

int ElementalComposition::count(const std::string& element) const {
  auto it = counts_.find(element);
  return it == counts_.end() ? 0 : it->second;
}

void ElementalComposition::add(const std::string& element, int n) {
  int& c = counts_[element];
  c += n;
  if (c == 0) counts_.erase(element);
}

bool ElementalComposition::is_valid_species() const {
  if (counts_.empty()) return false;
  for (const auto& [el, n] : counts_) {
    if (n < 0) return false;
  }
  return true;
}

void ElementalComposition::validate_species(const std::string& context) const {
  if (!is_valid_species()) {
    throw ValidationError(context + ": composition " + to_hill() + " is not a valid species");
  }
}

ElementalComposition& ElementalComposition::operator+=(const ElementalComposition& o) {
  for (const auto& [el, n] : o.counts_) add(el, n);
  return *this;
}

ElementalComposition ElementalComposition::operator+(const ElementalComposition& o) const {
  ElementalComposition r = *this;
  r += o;
  return r;
}

ElementalComposition ElementalComposition::operator-(const ElementalComposition& o) const {
  ElementalComposition r = *this;
  for (const auto& [el, n] : o.counts_) {
    r.add(el, -n);
    if (r.count(el) < 0) {
      throw ValidationError("composition subtraction underflow on element " + el + " in " +
                            to_hill() + " - " + o.to_hill());
    }
  }
  return r;
}

std::string ElementalComposition::to_hill() const {
  std::ostringstream os;
  auto emit = [&os](const std::string& el, int n) {
    if (n == 0) return;
    os << el;
    if (n != 1) os << n;
  };
  emit("C", count("C"));
  emit("H", count("H"));
  for (const auto& [el, n] : counts_) {
    if (el == "C" || el == "H") continue;
    emit(el, n);
  }
  return os.str();
}

}  // namespace etdeconv
