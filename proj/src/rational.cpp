#include "zagreb/rational.hpp"

#include <cstdio>

#include "zagreb/errors.hpp"

namespace zagreb {

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_fraction(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) {
    throw DomainError("not a rational number: '" + text + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_decimal_string(const mpf_class& value, int digits) {
  char* buffer = nullptr;
  const int length = gmp_asprintf(&buffer, "%.*Fg", digits, value.get_mpf_t());
  std::string out(buffer, static_cast<std::size_t>(length));
  void (*free_fn)(void*, std::size_t) = nullptr;
  mp_get_memory_functions(nullptr, nullptr, &free_fn);
  free_fn(buffer, static_cast<std::size_t>(length) + 1);
  return out;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace zagreb
