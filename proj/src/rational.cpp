#include "tropconv/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>

#include "tropconv/errors.hpp"

namespace tropconv {

namespace {

using boost::multiprecision::cpp_int;

Rational from_big(cpp_int num, cpp_int den, std::string_view text) {
  const cpp_int g = gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num >= Rational::kLimit || den >= Rational::kLimit) {
    throw ParseError("rational '" + std::string(text) + "': numerator or denominator too large");
  }
  return Rational(static_cast<std::uint64_t>(num), static_cast<std::uint64_t>(den));
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

Rational::Rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (num_ >= kLimit || den_ >= kLimit) throw DomainError("rational: reduced terms must stay below 2^32");
}

Rational Rational::parse(std::string_view text) {
  const auto bad = [&](const char* why) { return ParseError("rational '" + std::string(text) + "': " + why); };
  if (text.empty()) throw bad("empty");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const std::string_view a = text.substr(0, slash), b = text.substr(slash + 1);
    if (a.empty() || b.empty()) throw bad("expected a/b");
    cpp_int num = 0, den = 0;
    for (char c : a) {
      if (!is_digit(c)) throw bad("non-digit in numerator");
      num = num * 10 + (c - '0');
    }
    for (char c : b) {
      if (!is_digit(c)) throw bad("non-digit in denominator");
      den = den * 10 + (c - '0');
    }
    if (den == 0) throw bad("zero denominator");
    return from_big(num, den, text);
  }
  cpp_int num = 0, den = 1;
  std::size_t i = 0;
  bool any_digit = false;
  for (; i < text.size() && is_digit(text[i]); ++i) {
    num = num * 10 + (text[i] - '0');
    any_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    for (++i; i < text.size() && is_digit(text[i]); ++i) {
      num = num * 10 + (text[i] - '0');
      den *= 10;
      any_digit = true;
    }
  }
  if (!any_digit) throw bad("no digits");
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) negative = text[i++] == '-';
    int e = 0;
    bool exp_digit = false;
    for (; i < text.size() && is_digit(text[i]); ++i) {
      e = e * 10 + (text[i] - '0');
      exp_digit = true;
      if (e > 40) throw bad("exponent out of range");
    }
    if (!exp_digit) throw bad("missing exponent");
    const cpp_int p = boost::multiprecision::pow(cpp_int(10), e);
    if (negative) den *= p;
    else num *= p;
  }
  if (i != text.size()) throw bad("trailing characters");
  return from_big(num, den, text);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::uint64_t Rational::ceil_inverse_times(std::uint64_t c) const {
  if (num_ == 0) throw DomainError("ceil_inverse_times: zero rational");
  const unsigned __int128 p = static_cast<unsigned __int128>(c) * den_;
  return static_cast<std::uint64_t>((p + num_ - 1) / num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const unsigned __int128 l = static_cast<unsigned __int128>(a.num_) * b.den_;
  const unsigned __int128 r = static_cast<unsigned __int128>(b.num_) * a.den_;
  return l <=> r;
}

void require_epsilon(const Rational& eps, bool allow_one) {
  const Rational one(1, 1);
  if (eps.is_zero() || eps > one || (!allow_one && eps == one)) {
    throw DomainError("epsilon must satisfy 0 < eps " + std::string(allow_one ? "<=" : "<") + " 1, got " +
                      eps.to_string());
  }
}

Rational root_step(const Rational& eps, unsigned k, std::uint64_t den) {
  if (k == 0) throw DomainError("root_step: k must be positive");
  if (k == 1) return eps;
  // (den + p)^k * b <= (a + b) * den^k
  const cpp_int a = eps.num(), b = eps.den();
  const cpp_int rhs = (a + b) * boost::multiprecision::pow(cpp_int(den), k);
  const auto fits = [&](std::uint64_t p) { return boost::multiprecision::pow(cpp_int(den + p), k) * b <= rhs; };
  std::uint64_t lo = 0, hi = den;  // eps <= 1 so the root step is below 1
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (fits(mid)) lo = mid;
    else hi = mid - 1;
  }
  if (lo == 0) throw DomainError("root_step: epsilon too small for the requested resolution");
  return Rational(lo, den);
}

}  // namespace tropconv
