#pragma once

#include <string_view>

namespace formring {

// Three-valued verdict. `inconclusive` whenever the answer depends on an
// entry that did not stabilize or on data outside the computed window.
enum class Truth { yes, no, inconclusive };

constexpr std::string_view to_string(Truth t) {
  switch (t) {
    case Truth::yes: return "yes";
    case Truth::no: return "no";
    case Truth::inconclusive: return "inconclusive";
  }
  return "?";
}

constexpr Truth truth_of(bool b) { return b ? Truth::yes : Truth::no; }

}  // namespace formring
