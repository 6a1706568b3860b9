#include "hfcone/knotcx.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <map>
#include <set>
#include <tuple>
#include <utility>

namespace hfcone {

using nlohmann::json;

namespace {

std::string arrow_text(const KnotComplex& c, const Arrow& a) {
  return "d(" + c.generators()[a.from].id + ") -> U^" + std::to_string(a.u_power) + " " +
         c.generators()[a.to].id;
}

// Parity-reduced multiset of (generator, U power) terms.
using Terms = std::map<std::pair<int, int>, int>;

void add_term(Terms& t, int gen, int power) { t[{gen, power}] ^= 1; }

bool terms_zero(const Terms& t) {
  return std::all_of(t.begin(), t.end(), [](const auto& kv) { return kv.second == 0; });
}

void require_keys(const json& obj, std::initializer_list<const char*> keys, const char* where) {
  if (!obj.is_object()) throw ParseError(std::string(where) + " must be an object");
  for (const auto& [k, v] : obj.items()) {
    if (std::find_if(keys.begin(), keys.end(), [&](const char* key) { return k == key; }) == keys.end())
      throw ParseError("unknown field '" + k + "' in " + where);
  }
  for (const char* key : keys)
    if (!obj.contains(key)) throw ParseError(std::string("missing field '") + key + "' in " + where);
}

template <typename T>
T get_field(const json& obj, const char* key, const char* where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' in " + where + " has the wrong type");
  }
}

}  // namespace

KnotComplex::KnotComplex(std::string name, std::vector<Generator> generators,
                         std::vector<DifferentialEntry> differential, std::vector<FlipEntry> flip)
    : name_(std::move(name)),
      generators_(std::move(generators)),
      differential_(std::move(differential)),
      flip_(std::move(flip)),
      arrows_from_(generators_.size()),
      flips_from_(generators_.size()) {
  std::set<std::string> seen;
  for (const auto& g : generators_)
    if (!seen.insert(g.id).second) throw ValidationError("duplicate generator id '" + g.id + "'");
  for (const auto& d : differential_)
    arrows_from_[index_of(d.from)].push_back({index_of(d.from), index_of(d.to), d.u_power});
  for (const auto& f : flip_) flips_from_[index_of(f.from)].push_back({index_of(f.from), index_of(f.to), 0});
}

int KnotComplex::index_of(std::string_view id) const {
  for (std::size_t k = 0; k < generators_.size(); ++k)
    if (generators_[k].id == id) return static_cast<int>(k);
  throw ValidationError("unknown generator id '" + std::string(id) + "'");
}

int KnotComplex::max_abs_alexander() const {
  int m = 0;
  for (const auto& g : generators_) m = std::max(m, std::abs(g.alexander));
  return m;
}

int KnotComplex::min_maslov() const {
  int m = 0;
  for (std::size_t k = 0; k < generators_.size(); ++k)
    m = k == 0 ? generators_[k].maslov : std::min(m, generators_[k].maslov);
  return m;
}

int KnotComplex::max_maslov() const {
  int m = 0;
  for (std::size_t k = 0; k < generators_.size(); ++k)
    m = k == 0 ? generators_[k].maslov : std::max(m, generators_[k].maslov);
  return m;
}

bool KnotComplex::operator==(const KnotComplex& other) const {
  return name_ == other.name_ && generators_ == other.generators_ && differential_ == other.differential_ &&
         flip_ == other.flip_;
}

ValidationReport validate(const KnotComplex& c) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.failures.push_back(std::move(msg)); };

  for (const auto& arrows : c.arrows_from()) {
    for (const Arrow& a : arrows) {
      if (a.u_power < 0) {
        fail("negative U power: " + arrow_text(c, a));
        continue;
      }
      if (c.alexander(a.to) - a.u_power > c.alexander(a.from)) fail("filtration violated: " + arrow_text(c, a));
      if (c.maslov(a.to) - 2 * a.u_power != c.maslov(a.from) - 1) fail("Maslov drop ≠ 1: " + arrow_text(c, a));
    }
  }

  for (int g = 0; g < c.size(); ++g) {
    Terms dd;
    for (const Arrow& a : c.arrows_from()[g])
      for (const Arrow& b : c.arrows_from()[a.to]) add_term(dd, b.to, a.u_power + b.u_power);
    if (!terms_zero(dd)) fail("∂² ≠ 0 at generator " + c.generators()[g].id);
  }

  if (!c.has_flip()) {
    fail("flip required");
    return report;
  }
  for (const auto& f : c.flip()) {
    const int from = c.index_of(f.from);
    const int to = c.index_of(f.to);
    if (c.alexander(to) != -c.alexander(from)) fail("flip Alexander mismatch: " + f.from + " -> " + f.to);
    if (c.maslov(to) != c.maslov(from) - 2 * c.alexander(from))
      fail("flip Maslov mismatch: " + f.from + " -> " + f.to);
  }
  // flip(g) = sum U^{-A(g)} to; compare flip(d g) with d(flip g) over F2[U, U^-1].
  for (int g = 0; g < c.size(); ++g) {
    Terms diff;
    for (const Arrow& a : c.arrows_from()[g])
      for (const Arrow& f : c.flips_from()[a.to]) add_term(diff, f.to, a.u_power - c.alexander(a.to));
    for (const Arrow& f : c.flips_from()[g])
      for (const Arrow& a : c.arrows_from()[f.to]) add_term(diff, a.to, a.u_power - c.alexander(g));
    if (!terms_zero(diff)) fail("flip not a chain map at generator " + c.generators()[g].id);
  }
  return report;
}

KnotComplex complex_from_json(const json& doc) {
  require_keys(doc, {"name", "generators", "differential", "flip"}, "complex");
  for (const char* key : {"generators", "differential", "flip"})
    if (!doc.at(key).is_array()) throw ParseError(std::string("field '") + key + "' must be an array");

  std::vector<Generator> gens;
  for (const auto& g : doc.at("generators")) {
    require_keys(g, {"id", "alexander", "maslov"}, "generator");
    gens.push_back({get_field<std::string>(g, "id", "generator"), get_field<int>(g, "alexander", "generator"),
                    get_field<int>(g, "maslov", "generator")});
  }
  std::vector<DifferentialEntry> diff;
  for (const auto& d : doc.at("differential")) {
    require_keys(d, {"from", "to", "u_power"}, "differential entry");
    diff.push_back({get_field<std::string>(d, "from", "differential entry"),
                    get_field<std::string>(d, "to", "differential entry"),
                    get_field<int>(d, "u_power", "differential entry")});
  }
  std::vector<FlipEntry> flip;
  for (const auto& f : doc.at("flip")) {
    require_keys(f, {"from", "to"}, "flip entry");
    flip.push_back({get_field<std::string>(f, "from", "flip entry"), get_field<std::string>(f, "to", "flip entry")});
  }

  KnotComplex c(get_field<std::string>(doc, "name", "complex"), std::move(gens), std::move(diff), std::move(flip));
  const ValidationReport report = validate(c);
  if (!report.ok()) {
    std::string msg = report.failures.front();
    for (std::size_t k = 1; k < report.failures.size(); ++k) msg += "; " + report.failures[k];
    throw ValidationError(msg);
  }
  return c;
}

KnotComplex parse_complex(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
  return complex_from_json(doc);
}

json to_json(const KnotComplex& c) {
  json gens = json::array();
  for (const auto& g : c.generators()) gens.push_back({{"id", g.id}, {"alexander", g.alexander}, {"maslov", g.maslov}});
  json diff = json::array();
  for (const auto& d : c.differential()) diff.push_back({{"from", d.from}, {"to", d.to}, {"u_power", d.u_power}});
  json flip = json::array();
  for (const auto& f : c.flip()) flip.push_back({{"from", f.from}, {"to", f.to}});
  return {{"name", c.name()}, {"generators", gens}, {"differential", diff}, {"flip", flip}};
}

std::string serialize(const KnotComplex& c) { return to_json(c).dump(2); }

KnotComplex builtin_unknot() {
  return KnotComplex("unknot", {{"x", 0, 0}}, {}, {{"x", "x"}});
}

KnotComplex builtin_t34() {
  std::vector<Generator> gens = {{"x1", 3, 0}, {"x2", 2, -1}, {"x3", 0, -2}, {"x4", -2, -5}, {"x5", -3, -6}};
  std::vector<DifferentialEntry> diff = {{"x2", "x1", 1}, {"x2", "x3", 0}, {"x4", "x3", 2}, {"x4", "x5", 0}};
  std::vector<FlipEntry> flip = {{"x1", "x5"}, {"x2", "x4"}, {"x3", "x3"}, {"x4", "x2"}, {"x5", "x1"}};
  return KnotComplex("t34", std::move(gens), std::move(diff), std::move(flip));
}

KnotComplex builtin_staircase(const std::vector<int>& steps) {
  if (steps.size() % 2 != 0) throw ValidationError("staircase needs an even number of steps");
  if (!std::equal(steps.begin(), steps.end(), steps.rbegin())) throw ValidationError("staircase steps must be palindromic");
  if (std::any_of(steps.begin(), steps.end(), [](int s) { return s <= 0; }))
    throw ValidationError("staircase steps must be positive");

  int total = 0;
  for (int s : steps) total += s;
  const int count = static_cast<int>(steps.size()) + 1;
  auto id = [](int k) { return "y" + std::to_string(k); };

  std::vector<Generator> gens;
  int a = total / 2;
  int m = 0;
  gens.push_back({id(0), a, m});
  for (std::size_t k = 0; k < steps.size(); ++k) {
    // Odd generators are inner corners: horizontal arrow back, vertical arrow forward.
    if (k % 2 == 0) {
      a -= steps[k];
      m += 1 - 2 * steps[k];
    } else {
      a -= steps[k];
      m -= 1;
    }
    gens.push_back({id(static_cast<int>(k) + 1), a, m});
  }
  std::vector<DifferentialEntry> diff;
  for (int k = 1; k < count; k += 2) {
    diff.push_back({id(k), id(k - 1), steps[k - 1]});
    diff.push_back({id(k), id(k + 1), 0});
  }
  std::vector<FlipEntry> flip;
  for (int k = 0; k < count; ++k) flip.push_back({id(k), id(count - 1 - k)});

  std::string name = "staircase";
  for (std::size_t k = 0; k < steps.size(); ++k) name += (k == 0 ? ":" : ",") + std::to_string(steps[k]);
  return KnotComplex(name, std::move(gens), std::move(diff), std::move(flip));
}

KnotComplex builtin_borromean(int genus) {
  if (genus < 1) throw ValidationError("borromean genus must be positive");
  if (genus > 8) throw ValidationError("borromean genus too large");
  const int rank = 2 * genus;
  const unsigned full = (1U << rank) - 1;
  auto id = [&](unsigned mask) {
    if (mask == 0) return std::string("1");
    std::string s;
    for (int b = 0; b < rank; ++b)
      if (mask & (1U << b)) s += (b < genus ? "a" : "b") + std::to_string(b % genus + 1);
    return s;
  };

  std::vector<Generator> gens;
  std::vector<FlipEntry> flip;
  for (unsigned mask = 0; mask <= full; ++mask) {
    const int k = std::popcount(mask);
    gens.push_back({id(mask), k - genus, k - genus});
    flip.push_back({id(mask), id(full ^ mask)});
  }
  return KnotComplex("borromean:" + std::to_string(genus), std::move(gens), {}, std::move(flip));
}

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ParseError("bad integer '" + std::string(text) + "' in " + std::string(what));
  return value;
}

}  // namespace

KnotComplex builtin_by_name(std::string_view name) {
  if (name == "unknot") return builtin_unknot();
  if (name == "t34") return builtin_t34();
  const auto colon = name.find(':');
  const std::string_view head = name.substr(0, colon);
  std::string_view tail = colon == std::string_view::npos ? std::string_view{} : name.substr(colon + 1);
  if (head == "staircase") {
    std::vector<int> steps;
    while (!tail.empty()) {
      const auto comma = tail.find(',');
      steps.push_back(parse_int(tail.substr(0, comma), "staircase steps"));
      if (comma == std::string_view::npos) break;
      tail = tail.substr(comma + 1);
    }
    return builtin_staircase(steps);
  }
  if (head == "borromean" && colon != std::string_view::npos) return builtin_borromean(parse_int(tail, "borromean genus"));
  throw ParseError("unknown builtin '" + std::string(name) + "'");
}

bool isomorphic_by_order(const KnotComplex& a, const KnotComplex& b) {
  if (a.size() != b.size()) return false;
  for (int g = 0; g < a.size(); ++g)
    if (a.alexander(g) != b.alexander(g) || a.maslov(g) != b.maslov(g)) return false;
  auto arrow_set = [](const std::vector<std::vector<Arrow>>& by_source) {
    std::multiset<std::tuple<int, int, int>> out;
    for (const auto& list : by_source)
      for (const Arrow& x : list) out.insert({x.from, x.to, x.u_power});
    return out;
  };
  return arrow_set(a.arrows_from()) == arrow_set(b.arrows_from()) &&
         arrow_set(a.flips_from()) == arrow_set(b.flips_from());
}

}  // namespace hfcone
