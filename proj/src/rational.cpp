#include "splinedim/rational.hpp"

#include <cctype>

namespace splinedim {

namespace {

bool all_digits(const std::string& s, size_t begin, size_t end) {
  if (begin >= end) return false;
  for (size_t i = begin; i < end; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  const auto fail = [&]() -> Rat {
    throw std::invalid_argument("malformed rational literal: \"" + text + "\"");
  };

  size_t pos = 0;
  if (pos < text.size() && text[pos] == '-') ++pos;
  const size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!all_digits(text, pos, text.size())) return fail();
  } else {
    if (!all_digits(text, pos, slash)) return fail();
    if (!all_digits(text, slash + 1, text.size())) return fail();
  }

  Rat value;
  if (value.set_str(text, 10) != 0) return fail();
  if (sgn(value.get_den()) == 0) {
    throw std::invalid_argument("zero denominator in rational literal: \"" + text + "\"");
  }
  value.canonicalize();
  return value;
}

std::string rational_to_string(const Rat& value) {
  Rat reduced = value;
  reduced.canonicalize();
  if (reduced.get_den() == 1) return reduced.get_num().get_str();
  return reduced.get_num().get_str() + "/" + reduced.get_den().get_str();
}

}  // namespace splinedim
