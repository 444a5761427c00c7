#include "ltnn/rational.hpp"

#include <cctype>

#include "ltnn/errors.hpp"

namespace ltnn {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw ParseError("", "malformed rational \"" + std::string(whole) + "\"");
  Integer z(std::string(s), 10);
  return negative ? Integer(-z) : z;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw ParseError("", "empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("", "malformed rational \"" + std::string(text) + "\"");
    Integer den(std::string(den_text), 10);
    if (den == 0) throw ParseError("", "zero denominator in \"" + std::string(text) + "\"");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  // Decimal with optional fraction and exponent.
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = s.substr(e + 1);
    Integer ez = parse_integer(exp_text, text);
    if (!ez.fits_slong_p() || abs(ez) > 100000) throw ParseError("", "exponent out of range in \"" + std::string(text) + "\"");
    exponent = ez.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot_pos = s.find('.'); dot_pos != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot_pos);
    std::string_view fp = s.substr(dot_pos + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp))) {
      throw ParseError("", "malformed rational \"" + std::string(text) + "\"");
    }
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(s)) throw ParseError("", "malformed rational \"" + std::string(text) + "\"");
    digits = std::string(s);
  }
  Rational q{Integer(digits, 10)};
  if (exponent > 0) q *= Rational(pow10(static_cast<unsigned long>(exponent)));
  if (exponent < 0) q /= Rational(pow10(static_cast<unsigned long>(-exponent)));
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec primitive_integer(const Vec& v) {
  Integer l = 1;
  bool any = false;
  for (const auto& x : v) {
    if (x == 0) continue;
    any = true;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  if (!any) return v;
  Integer g = 0;
  for (const auto& x : v) {
    if (x == 0) continue;
    Integer num = x.get_num() * (l / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (x == 0) {
      out.emplace_back(0);
    } else {
      out.emplace_back(Integer(x.get_num() * (l / x.get_den()) / g));
    }
  }
  return out;
}

std::string to_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace ltnn
