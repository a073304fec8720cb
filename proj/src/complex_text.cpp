#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "multipole/errors.hpp"
#include "multipole/text.hpp"

namespace multipole {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_complex(cdouble z) {
  const double im = z.imag();
  const bool negative = std::signbit(im);
  return format_real(z.real()) + (negative ? "-" : "+") + format_real(std::abs(im)) + "j";
}

double parse_real(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError("not a real number: '" + std::string(text) + "'");
  }
  return value;
}

int parse_int(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InputError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

cdouble parse_complex(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InputError("empty complex number");
  if (text.back() != 'j' && text.back() != 'i') return {parse_real(text), 0.0};

  const std::string_view body = text.substr(0, text.size() - 1);
  // Split at the last sign that is neither leading nor part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imaginary = [](std::string_view s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (split == std::string_view::npos) return {0.0, imaginary(body)};
  return {parse_real(body.substr(0, split)), imaginary(body.substr(split))};
}

}  // namespace multipole
