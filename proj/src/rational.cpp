// SPDX-License-Identifier: MIT
#include "wildkz/rational.hpp"

#include <cctype>

#include "wildkz/errors.hpp"

namespace wildkz {

Q parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail(ErrorKind::Schema, "empty rational literal");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i >= part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    fail(ErrorKind::Schema, "malformed rational literal '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) fail(ErrorKind::Schema, "zero denominator in '" + text + "'");
  Q out(n, d);
  out.canonicalize();
  return out;
}

std::string to_string(const Q& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Q binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return Q(0);
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Q(r);
}

Q power(const Q& x, long e) {
  if (e < 0) {
    if (is_zero(x)) fail(ErrorKind::InvalidArgument, "negative power of zero");
    Q inv = 1 / x;
    return power(inv, -e);
  }
  Q out(1), base = x;
  unsigned long n = static_cast<unsigned long>(e);
  while (n) {
    if (n & 1UL) out *= base;
    base *= base;
    n >>= 1;
  }
  return out;
}

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::CriticalLevel: return "CriticalLevel";
    case ErrorKind::CoincidentTimes: return "CoincidentTimes";
    case ErrorKind::TruncationExceeded: return "TruncationExceeded";
    case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorKind::NonInvariant: return "NonInvariant";
    case ErrorKind::ZeroTime: return "ZeroTime";
    case ErrorKind::NotFiniteType: return "NotFiniteType";
    case ErrorKind::CoalescencePenalty: return "CoalescencePenalty";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

int error_exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Schema: return 2;
    case ErrorKind::CriticalLevel: return 3;
    case ErrorKind::CoincidentTimes: return 4;
    case ErrorKind::TruncationExceeded: return 5;
    case ErrorKind::CutoffTooSmall: return 6;
    case ErrorKind::NonInvariant: return 7;
    case ErrorKind::ZeroTime: return 8;
    case ErrorKind::NotFiniteType: return 9;
    case ErrorKind::CoalescencePenalty: return 10;
    case ErrorKind::StepUnderflow: return 11;
    case ErrorKind::InvalidArgument: return 12;
  }
  return 13;
}

}  // namespace wildkz
