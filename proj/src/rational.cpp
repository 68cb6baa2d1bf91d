#include "convolab/rational.hpp"

#include <cmath>
#include <limits>

#include "convolab/error.hpp"

namespace convolab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::TableInvalid: return "TableInvalid";
    case ErrorCode::SpecOutOfRange: return "SpecOutOfRange";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::CoefficientsInvalid: return "CoefficientsInvalid";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotAGeneralizedInverse: return "NotAGeneralizedInverse";
    case ErrorCode::ClosureBudgetExceeded: return "ClosureBudgetExceeded";
    case ErrorCode::SupportNotClosed: return "SupportNotClosed";
    case ErrorCode::GroupNotInvolutive: return "GroupNotInvolutive";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::RationalizationFailed: return "RationalizationFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
      den.front() == '+') {
    throw Error(ErrorCode::ParseError, "not a rational: '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num.front() == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_str();
}

Rational rationalize(double value, long max_den) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::RationalizationFailed, "non-finite value");
  }
  // Convergents h/k of the continued fraction; stop before the denominator cap.
  long double x = value;
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  long double frac = x - std::floor(x);
  for (int iter = 0; iter < 64 && frac > 1e-15L; ++iter) {
    x = 1.0L / frac;
    const long a = static_cast<long>(std::floor(x));
    frac = x - std::floor(x);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  Rational q(h, k);
  q.canonicalize();
  return q;
}

}  // namespace convolab
