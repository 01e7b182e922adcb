#include "ogt/rational.hpp"

#include <algorithm>
#include <cctype>

#include "ogt/model.hpp"

namespace ogt {

namespace {

std::string_view trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Int parse_int(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw Error(Errc::Parse, "malformed number");
  Int value{std::string(s)};
  return negative ? -value : value;
}

}  // namespace

Rat rat_from_string(std::string_view text) {
  std::string_view s = trimmed(text);
  if (s.empty()) throw Error(Errc::Parse, "empty number");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Int num = parse_int(s.substr(0, slash));
    std::string_view den_text = s.substr(slash + 1);
    if (!all_digits(den_text)) throw Error(Errc::Parse, "malformed denominator in '" + std::string(text) + "'");
    Int den{std::string(den_text)};
    if (den == 0) throw Error(Errc::Parse, "zero denominator in '" + std::string(text) + "'");
    return Rat(num, den);
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
      negative = s.front() == '-';
      s.remove_prefix(1);
      --dot;
    }
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw Error(Errc::Parse, "malformed decimal");
    if (!int_part.empty() && !all_digits(int_part)) throw Error(Errc::Parse, "malformed decimal");
    if (!frac_part.empty() && !all_digits(frac_part)) throw Error(Errc::Parse, "malformed decimal");
    Int num = int_part.empty() ? Int(0) : Int{std::string(int_part)};
    Int den(1);
    for (char c : frac_part) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    Rat value(num, den);
    return negative ? Rat(-value) : value;
  }

  return Rat(parse_int(s));
}

std::string rat_to_string(const Rat& value) {
  const Int& num = boost::multiprecision::numerator(value);
  const Int& den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace ogt
