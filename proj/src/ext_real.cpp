#include "distfree/ext_real.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <system_error>

namespace distfree {

std::string ExtReal::to_string() const {
  if (is_pos_inf()) return "inf";
  if (is_neg_inf()) return "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v_);
  return std::string(buf, end);
}

ExtReal ExtReal::parse(const std::string& text) {
  std::string t;
  t.reserve(text.size());
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) {
      t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") return pos_inf();
  if (t == "-inf" || t == "-infinity") return neg_inf();
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || t.empty()) {
    throw InputError("not an extended real: '" + text + "'");
  }
  return ExtReal(v);
}

}  // namespace distfree
