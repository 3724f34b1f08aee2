#include "seqauction/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace seqauction {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat rat_parse(const std::string& text) {
  std::string s = strip(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::string num = s;
  std::string den = "1";
  size_t slash = s.find('/');
  if (slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  std::string num_digits = num;
  if (!num_digits.empty() && (num_digits[0] == '-' || num_digits[0] == '+')) {
    num_digits = num_digits.substr(1);
  }
  if (!all_digits(num_digits) || !all_digits(den)) {
    throw std::invalid_argument("bad rational literal '" + text +
                                "' (expected \"p\" or \"p/q\")");
  }
  mpz_class n(num), d(den);
  if (d == 0) {
    throw std::invalid_argument("bad rational literal '" + text +
                                "' (zero denominator)");
  }
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string rat_decimal(const Rat& value, int digits) {
  mpz_class num = value.get_num();
  mpz_class den = value.get_den();
  bool negative = num < 0;
  if (negative) num = -num;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // round half away from zero on the scaled numerator
  mpz_class scaled = num * scale;
  mpz_class q = (2 * scaled + den) / (2 * den);
  mpz_class ipart = q / scale;
  mpz_class fpart = q % scale;
  std::string out = negative && q != 0 ? "-" : "";
  out += ipart.get_str();
  if (digits > 0) {
    std::string frac = fpart.get_str();
    frac.insert(0, static_cast<size_t>(digits) - frac.size(), '0');
    out += "." + frac;
  }
  return out;
}

long rat_floor(const Rat& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(),
             value.get_den().get_mpz_t());
  return q.get_si();
}

long rat_ceil(const Rat& value) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(),
             value.get_den().get_mpz_t());
  return q.get_si();
}

}  // namespace seqauction
