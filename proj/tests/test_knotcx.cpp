#include <algorithm>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "hfcone/knotcx.hpp"

using namespace hfcone;

namespace {

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(HFCONE_TEST_DATA) + "/" + name);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string validation_message(const std::string& text) {
  try {
    parse_complex(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

bool has_failure(const ValidationReport& r, const std::string& needle) {
  for (const auto& f : r.failures)
    if (f.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("parse the unknot and T(3,4) documents") {
  const KnotComplex u = parse_complex(fixture("unknot.json"));
  CHECK(u.size() == 1);
  CHECK(u == builtin_unknot());

  const KnotComplex t = parse_complex(fixture("t34.json"));
  CHECK(t.size() == 5);
  CHECK(t.differential().size() == 4);
  CHECK(t == builtin_t34());
}

TEST_CASE("malformed documents raise parse errors") {
  CHECK_THROWS_AS(parse_complex(fixture("malformed.json")), ParseError);
  CHECK_THROWS_AS(parse_complex(fixture("t34_unknown_field.json")), ParseError);
  CHECK_THROWS_AS(parse_complex(R"({"name": "x", "generators": [], "differential": []})"), ParseError);
  CHECK_THROWS_AS(parse_complex(R"({"name": "x", "generators": [{"id": "a", "alexander": "0", "maslov": 0}],
                                   "differential": [], "flip": []})"),
                  ParseError);
}

TEST_CASE("validation names the violated invariant") {
  CHECK(validation_message(fixture("t34_bad_maslov.json")).find("Maslov drop ≠ 1") != std::string::npos);
  const std::string corrupt = validation_message(fixture("t34_bad_differential.json"));
  CHECK(corrupt.find("filtration violated") != std::string::npos);
  CHECK(validation_message(fixture("t34_no_flip.json")).find("flip required") != std::string::npos);

  CHECK_THROWS_AS(KnotComplex("dup", {{"a", 0, 0}, {"a", 0, 0}}, {}, {}), ValidationError);
  CHECK_THROWS_AS(KnotComplex("ghost", {{"a", 0, 0}}, {{"a", "b", 0}}, {}), ValidationError);
}

TEST_CASE("d squared must vanish") {
  const KnotComplex c("chain", {{"a", 0, 1}, {"b", 0, 0}, {"c", 0, -1}}, {{"a", "b", 0}, {"b", "c", 0}},
                      {{"a", "a"}, {"b", "b"}, {"c", "c"}});
  const ValidationReport r = validate(c);
  CHECK(has_failure(r, "∂² ≠ 0 at generator a"));
}

TEST_CASE("negative powers and flip defects") {
  const KnotComplex neg("neg", {{"a", 0, -1}, {"b", 0, 0}}, {{"b", "a", -1}}, {{"a", "a"}, {"b", "b"}});
  CHECK(has_failure(validate(neg), "negative U power"));

  const KnotComplex bad_flip("badflip", {{"a", 1, 0}, {"b", -1, -2}}, {}, {{"a", "a"}, {"b", "a"}});
  CHECK(has_failure(validate(bad_flip), "flip Alexander mismatch: a -> a"));
  CHECK(has_failure(validate(bad_flip), "flip Maslov mismatch"));

  // T(3,4) with x3 fixed but x2 and x4 not exchanged: gradings fine, not a chain map.
  KnotComplex t = builtin_t34();
  std::vector<FlipEntry> flip = {{"x1", "x5"}, {"x3", "x3"}, {"x5", "x1"}};
  const KnotComplex partial("partial", t.generators(), t.differential(), flip);
  CHECK(has_failure(validate(partial), "flip not a chain map"));
}

TEST_CASE("builtin unknot") {
  const KnotComplex u = builtin_unknot();
  REQUIRE(u.size() == 1);
  CHECK(u.alexander(0) == 0);
  CHECK(u.maslov(0) == 0);
  CHECK(validate(u).ok());
}

TEST_CASE("builtin T(3,4)") {
  const KnotComplex t = builtin_t34();
  std::vector<int> a, m;
  for (const auto& g : t.generators()) {
    a.push_back(g.alexander);
    m.push_back(g.maslov);
  }
  CHECK(a == std::vector<int>{3, 2, 0, -2, -3});
  CHECK(m == std::vector<int>{0, -1, -2, -5, -6});
  const auto& from_x2 = t.arrows_from()[t.index_of("x2")];
  REQUIRE(from_x2.size() == 2);
  std::vector<std::pair<std::string, int>> entries;
  for (const auto& arrow : from_x2) entries.push_back({t.generators()[arrow.to].id, arrow.u_power});
  std::sort(entries.begin(), entries.end());
  CHECK(entries == std::vector<std::pair<std::string, int>>{{"x1", 1}, {"x3", 0}});
  CHECK(validate(t).ok());
  CHECK(t.max_abs_alexander() == 3);
  CHECK(t.min_maslov() == -6);
  CHECK(t.max_maslov() == 0);
}

TEST_CASE("staircases") {
  CHECK(isomorphic_by_order(builtin_staircase({1, 2, 2, 1}), builtin_t34()));
  CHECK_FALSE(isomorphic_by_order(builtin_staircase({1, 1, 1, 1}), builtin_t34()));

  const KnotComplex empty = builtin_staircase({});
  CHECK(empty.size() == 1);
  CHECK(validate(empty).ok());
  CHECK(isomorphic_by_order(empty, builtin_unknot()));

  const KnotComplex s = builtin_staircase({1, 1, 1, 1});
  std::vector<int> a;
  for (const auto& g : s.generators()) a.push_back(g.alexander);
  CHECK(a == std::vector<int>{2, 1, 0, -1, -2});
  CHECK(validate(s).ok());

  // Trefoil: three generators at A = 1, 0, -1 and M = 0, -1, -2.
  const KnotComplex trefoil = builtin_staircase({1, 1});
  std::vector<int> m;
  for (const auto& g : trefoil.generators()) m.push_back(g.maslov);
  CHECK(m == std::vector<int>{0, -1, -2});

  CHECK_THROWS_AS(builtin_staircase({1, 2}), ValidationError);
  CHECK_THROWS_AS(builtin_staircase({1}), ValidationError);
  CHECK_THROWS_AS(builtin_staircase({0, 0}), ValidationError);
  for (const auto& steps : std::vector<std::vector<int>>{{2, 2}, {1, 3, 3, 1}, {2, 1, 1, 2}, {1, 1, 2, 2, 1, 1}})
    CHECK(validate(builtin_staircase(steps)).ok());
}

TEST_CASE("borromean complexes") {
  const KnotComplex b1 = builtin_borromean(1);
  CHECK(b1.size() == 4);
  std::vector<std::pair<int, int>> grades;
  for (const auto& g : b1.generators()) grades.push_back({g.alexander, g.maslov});
  std::sort(grades.begin(), grades.end());
  CHECK(grades == std::vector<std::pair<int, int>>{{-1, -1}, {0, 0}, {0, 0}, {1, 1}});

  const KnotComplex b2 = builtin_borromean(2);
  CHECK(b2.size() == 16);
  std::vector<int> by_rank(5, 0);
  for (const auto& g : b2.generators()) ++by_rank[g.alexander + 2];
  CHECK(by_rank == std::vector<int>{1, 4, 6, 4, 1});
  CHECK(b2.differential().empty());
  for (int g = 1; g <= 4; ++g) CHECK(validate(builtin_borromean(g)).ok());
  CHECK_THROWS_AS(builtin_borromean(0), ValidationError);
}

TEST_CASE("builtin names") {
  CHECK(builtin_by_name("unknot") == builtin_unknot());
  CHECK(builtin_by_name("t34") == builtin_t34());
  CHECK(builtin_by_name("staircase:1,2,2,1") == builtin_staircase({1, 2, 2, 1}));
  CHECK(builtin_by_name("borromean:3") == builtin_borromean(3));
  CHECK_THROWS_AS(builtin_by_name("trefoil"), ParseError);
  CHECK_THROWS_AS(builtin_by_name("borromean:x"), ParseError);
  CHECK_THROWS_AS(builtin_by_name("staircase:1,,1"), ParseError);
}

TEST_CASE("serialization round-trips every builtin") {
  for (const auto& c : {builtin_unknot(), builtin_t34(), builtin_staircase({1, 1, 1, 1}), builtin_staircase({2, 1, 1, 2}),
                        builtin_borromean(1), builtin_borromean(3)}) {
    const KnotComplex back = parse_complex(serialize(c));
    CHECK(back == c);
    CHECK(to_json(back) == to_json(c));
  }
}
