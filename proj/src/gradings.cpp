#include "hfcone/gradings.hpp"

#include <charconv>
#include <cstdlib>
#include <optional>
#include <stdexcept>

namespace hfcone {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(std::string_view text) {
  auto parse = [&](std::string_view part) {
    std::int64_t v = 0;
    const char* end = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(part.data(), end, v);
    if (part.empty() || ec != std::errc() || ptr != end)
      throw std::invalid_argument("bad rational '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse(text));
  const std::int64_t den = parse(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(parse(text.substr(0, slash)), den);
}

int residue(long long s, int n) {
  if (n == 0) throw std::invalid_argument("residue modulo zero");
  const long long m = std::llabs(n);
  return static_cast<int>(((s % m) + m) % m);
}

Rational d_lens_window(int n, int i, int span) {
  if (n == 0) throw std::invalid_argument("d(n,i) needs n != 0");
  const int m = std::abs(n);
  if (i < 0 || i >= m) throw std::invalid_argument("spin^c residue out of range");
  std::optional<Rational> best;
  for (long long s = -static_cast<long long>(span) * m; s <= static_cast<long long>(span) * m; ++s) {
    if (residue(s, m) != i) continue;
    const std::int64_t t = m + 2 * s;
    const Rational q = Rational(m - t * t, 4 * static_cast<std::int64_t>(m));
    if (!best || q > *best) best = q;
  }
  const Rational d = -*best;
  return n > 0 ? d : -d;
}

Rational d_lens(int n, int i) { return d_lens_window(n, i, 1); }

}  // namespace hfcone
