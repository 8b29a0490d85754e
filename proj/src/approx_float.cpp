#include "tropconv/approx_float.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

#include "tropconv/errors.hpp"

namespace tropconv {

namespace {

using u128 = unsigned __int128;

int bit_length(u128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi != 0) return 128 - std::countl_zero(hi);
  const auto lo = static_cast<std::uint64_t>(v);
  return 64 - std::countl_zero(lo);
}

}  // namespace

// value = (v + sticky * tiny) * 2^e2, rounded to a 64-bit significand. Callers
// guarantee v carries at least two bits beyond the significand whenever sticky
// may be set, so nearest rounding stays correct.
static ApproxFloat round_pack(u128 v, std::int64_t e2, bool sticky, Rounding mode) {
  if (v == 0) return ApproxFloat::zero();
  const int len = bit_length(v);
  if (len <= 64) {
    const auto m = static_cast<std::uint64_t>(v) << (64 - len);
    ApproxFloat r = ApproxFloat::from_parts(m, e2 - (64 - len));
    if (sticky && mode == Rounding::up) {
      // unreachable for current callers; keep the result an upper bound anyway
      return r.add(ApproxFloat::from_parts(1, e2 - (64 - len)), Rounding::up);
    }
    return r;
  }
  const int shift = len - 64;
  auto m = static_cast<std::uint64_t>(v >> shift);
  const u128 rem = v & ((u128{1} << shift) - 1);
  const u128 half = u128{1} << (shift - 1);
  bool inc = false;
  switch (mode) {
    case Rounding::nearest:
      inc = rem > half || (rem == half && (sticky || (m & 1U)));
      break;
    case Rounding::up:
      inc = rem != 0 || sticky;
      break;
    case Rounding::down:
      break;
  }
  std::int64_t scale = e2 + shift;
  if (inc) {
    ++m;
    if (m == 0) {
      m = std::uint64_t{1} << 63;
      ++scale;
    }
  }
  return ApproxFloat::from_parts(m, scale);
}

ApproxFloat ApproxFloat::from_parts(std::uint64_t mantissa, std::int64_t scale_exponent) {
  ApproxFloat r;
  if (mantissa == 0) return r;
  const int lz = std::countl_zero(mantissa);
  r.mant_ = mantissa << lz;
  r.exp_ = scale_exponent + (63 - lz);
  return r;
}

ApproxFloat ApproxFloat::from_uint(std::uint64_t v) { return from_parts(v, 0); }

ApproxFloat ApproxFloat::from_u128(unsigned __int128 v, Rounding mode) { return round_pack(v, 0, false, mode); }

ApproxFloat ApproxFloat::pow2(std::int64_t e) {
  ApproxFloat r;
  r.mant_ = std::uint64_t{1} << 63;
  r.exp_ = e;
  return r;
}

ApproxFloat ApproxFloat::from_double(double v) {
  if (!(v >= 0.0) || std::isinf(v)) throw DomainError("ApproxFloat: expected a finite nonnegative number");
  if (v == 0.0) return zero();
  int e = 0;
  const double frac = std::frexp(v, &e);  // v = frac * 2^e, frac in [0.5, 1)
  const auto m = static_cast<std::uint64_t>(std::ldexp(frac, 64));
  return from_parts(m, static_cast<std::int64_t>(e) - 64);
}

ApproxFloat ApproxFloat::add(const ApproxFloat& other, Rounding mode) const {
  if (inf_ || other.inf_) return infinity();
  if (is_zero()) return other;
  if (other.is_zero()) return *this;
  const ApproxFloat& big = (exp_ >= other.exp_) ? *this : other;
  const ApproxFloat& small = (exp_ >= other.exp_) ? other : *this;
  const std::int64_t d = big.exp_ - small.exp_;
  const u128 x = u128{big.mant_} << 63;
  const u128 y_full = u128{small.mant_} << 63;
  u128 y = 0;
  bool sticky = false;
  if (d <= 126) {
    y = y_full >> d;
    sticky = d > 0 && (y_full & ((u128{1} << d) - 1)) != 0;
  } else {
    sticky = true;
  }
  return round_pack(x + y, big.exp_ - 126, sticky, mode);
}

ApproxFloat ApproxFloat::mul_ratio(std::uint64_t num, std::uint64_t den, Rounding mode) const {
  if (den == 0 || den >= (std::uint64_t{1} << 62)) throw DomainError("ApproxFloat::mul_ratio: denominator out of range");
  if (inf_) return num == 0 ? zero() : infinity();
  if (is_zero() || num == 0) return zero();
  u128 p = u128{mant_} * num;
  const int s = 128 - bit_length(p);
  p <<= s;
  const u128 q = p / den;
  const bool sticky = (p % den) != 0;
  return round_pack(q, exp_ - 63 - s, sticky, mode);
}

ApproxFloat ApproxFloat::scale_pow2(std::int64_t k) const {
  if (inf_ || is_zero()) return *this;
  ApproxFloat r = *this;
  r.exp_ += k;
  return r;
}

bool ApproxFloat::is_integer() const {
  if (inf_) return false;
  if (is_zero()) return true;
  if (exp_ < 0) return false;
  if (exp_ >= 63) return true;
  const std::uint64_t frac_mask = (std::uint64_t{1} << (63 - exp_)) - 1;
  return (mant_ & frac_mask) == 0;
}

std::optional<std::uint64_t> ApproxFloat::to_uint() const {
  if (!is_integer() || exp_ > 63) return std::nullopt;
  if (is_zero()) return 0;
  return mant_ >> (63 - exp_);
}

double ApproxFloat::to_double() const {
  if (inf_) return std::numeric_limits<double>::infinity();
  if (is_zero()) return 0.0;
  if (exp_ > 2000) return std::numeric_limits<double>::infinity();
  if (exp_ < -2000) return 0.0;
  return std::ldexp(static_cast<double>(mant_), static_cast<int>(exp_ - 63));
}

std::string ApproxFloat::to_string() const {
  if (inf_) return "inf";
  if (auto u = to_uint()) return std::to_string(*u);
  const double d = to_double();
  if (std::isfinite(d) && d > 0.0 && from_double(d) == *this) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, d);
    if (ec == std::errc{}) return std::string(buf, ptr);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "0x%016llxp%lld", static_cast<unsigned long long>(mant_),
                static_cast<long long>(exp_ - 63));
  return buf;
}

std::optional<ApproxFloat> ApproxFloat::parse(std::string_view text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return infinity();
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    const auto p = text.find_first_of("pP");
    if (p == std::string_view::npos) return std::nullopt;
    std::uint64_t m = 0;
    std::int64_t e = 0;
    auto r1 = std::from_chars(text.data() + 2, text.data() + p, m, 16);
    if (r1.ec != std::errc{} || r1.ptr != text.data() + p) return std::nullopt;
    auto r2 = std::from_chars(text.data() + p + 1, text.data() + text.size(), e);
    if (r2.ec != std::errc{} || r2.ptr != text.data() + text.size()) return std::nullopt;
    return from_parts(m, e);
  }
  std::uint64_t u = 0;
  auto ru = std::from_chars(text.data(), text.data() + text.size(), u);
  if (ru.ec == std::errc{} && ru.ptr == text.data() + text.size()) return from_uint(u);
  double d = 0.0;
  auto rd = std::from_chars(text.data(), text.data() + text.size(), d);
  if (rd.ec != std::errc{} || rd.ptr != text.data() + text.size()) return std::nullopt;
  if (!(d >= 0.0) || std::isinf(d)) return std::nullopt;
  return from_double(d);
}

std::strong_ordering operator<=>(const ApproxFloat& a, const ApproxFloat& b) {
  if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
  const bool az = a.is_zero(), bz = b.is_zero();
  if (az || bz) return bz <=> az;
  if (a.exp_ != b.exp_) return a.exp_ <=> b.exp_;
  return a.mant_ <=> b.mant_;
}

int compare_scaled(const ApproxFloat& x, std::uint64_t p, const ApproxFloat& y, std::uint64_t q) {
  const bool xi = x.is_infinite() && p != 0;
  const bool yi = y.is_infinite() && q != 0;
  if (xi || yi) return xi == yi ? 0 : (xi ? 1 : -1);
  const u128 a = u128{x.mantissa()} * p;
  const u128 b = u128{y.mantissa()} * q;
  if (a == 0 || b == 0) return (a != 0) - (b != 0);
  const std::int64_t ea = x.exponent() - 63, eb = y.exponent() - 63;
  const std::int64_t la = bit_length(a) + ea, lb = bit_length(b) + eb;
  if (la != lb) return la < lb ? -1 : 1;
  u128 aa = a, bb = b;
  if (ea > eb) aa <<= (ea - eb);
  else if (eb > ea) bb <<= (eb - ea);
  return aa == bb ? 0 : (aa < bb ? -1 : 1);
}

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

// floor and exactness of x * num * 2^shift / den
std::pair<std::uint64_t, bool> scaled_quotient(const ApproxFloat& x, std::uint64_t num, std::uint64_t den,
                                               std::int64_t shift) {
  if (den == 0) throw DomainError("scaled quotient: zero denominator");
  if (x.is_infinite()) return {kSat, false};
  const u128 p = u128{x.mantissa()} * num;
  if (p == 0) return {0, true};
  const std::int64_t s = x.exponent() - 63 + shift;
  if (s >= 0) {
    if (bit_length(p) + s > 127) return {kSat, false};
    const u128 v = p << s;
    const u128 q = v / den;
    if (q > kSat) return {kSat, false};
    return {static_cast<std::uint64_t>(q), v % den == 0};
  }
  const std::int64_t t = -s;
  if (t >= 128) return {0, false};
  const u128 pq = p >> t;
  const bool low_zero = (p & ((u128{1} << t) - 1)) == 0;
  const u128 q = pq / den;
  if (q > kSat) return {kSat, false};
  return {static_cast<std::uint64_t>(q), low_zero && pq % den == 0};
}

}  // namespace

std::uint64_t ceil_scaled(const ApproxFloat& x, std::uint64_t num, std::uint64_t den, std::int64_t shift) {
  auto [q, exact] = scaled_quotient(x, num, den, shift);
  if (q == kSat) return kSat;
  return exact ? q : q + 1;
}

std::uint64_t floor_scaled(const ApproxFloat& x, std::uint64_t num, std::uint64_t den, std::int64_t shift) {
  return scaled_quotient(x, num, den, shift).first;
}

}  // namespace tropconv
