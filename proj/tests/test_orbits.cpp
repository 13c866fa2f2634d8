#include "oracles.hpp"

#include "hmpzeta/error.hpp"
#include "hmpzeta/orbits.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace hmpz;

namespace {

std::vector<int> letters_of(const std::string& w) {
  std::vector<int> out;
  for (char c : w) out.push_back(c - '0');
  return out;
}

std::set<std::vector<int>> canonical_set(const std::vector<std::string>& words) {
  std::set<std::vector<int>> s;
  for (const auto& w : words) s.insert(canonical_rotation(letters_of(w)));
  return s;
}

std::set<std::vector<int>> enumerated(int M, int p) {
  std::set<std::vector<int>> s;
  const auto set = enumerate_orbits(M, p);  // keep alive across the loop
  for (const auto& o : set.of_length(p)) s.insert(o.letters);
  return s;
}

// Brute-force count: words of length p with no rotational symmetry, divided by p.
std::uint64_t brute_count(int M, int p) {
  std::uint64_t aperiodic = 0;
  for (const auto& w : oracle::all_words(M, p)) aperiodic += is_aperiodic(w) ? 1 : 0;
  return aperiodic / static_cast<std::uint64_t>(p);
}

}  // namespace

TEST_SUITE("orbits") {

TEST_CASE("binary counts for lengths 1..6") {
  const auto set = enumerate_orbits(2, 6);
  const std::size_t want[] = {2, 1, 2, 3, 6, 9};
  for (int p = 1; p <= 6; ++p) CHECK(set.of_length(p).size() == want[p - 1]);
}

TEST_CASE("binary listing matches the reference listing modulo rotation") {
  CHECK(enumerated(2, 1) == canonical_set({"1", "2"}));
  CHECK(enumerated(2, 2) == canonical_set({"12"}));
  CHECK(enumerated(2, 3) == canonical_set({"112", "122"}));
  CHECK(enumerated(2, 4) == canonical_set({"1222", "2111", "1122"}));
  CHECK(enumerated(2, 5) == canonical_set({"12222", "21111", "11222", "22111", "12121", "21212"}));
  CHECK(enumerated(2, 6) == canonical_set({"122222", "112222", "111222", "111122", "111112", "112212", "221121",
                                           "111212", "222121"}));
  CHECK_FALSE(enumerated(2, 4).count({1, 2, 1, 2}));
}

TEST_CASE("ternary listing matches the reference listing modulo rotation") {
  CHECK(enumerated(3, 1) == canonical_set({"1", "2", "3"}));
  CHECK(enumerated(3, 2) == canonical_set({"12", "13", "23"}));
  CHECK(enumerated(3, 3) == canonical_set({"122", "211", "233", "322", "133", "311", "123", "132"}));
  CHECK(enumerated(3, 4) == canonical_set({"1222", "2111", "1122", "2333", "3222", "2233", "1333", "3111", "1133",
                                           "1123", "1132", "1213", "2213", "2231", "2321", "3312", "3321", "3231"}));
}

TEST_CASE("Moebius counts for M in {2,3,4} and p <= 12") {
  for (int M : {2, 3, 4}) {
    const auto set = enumerate_orbits(M, 12);
    for (int p = 1; p <= 12; ++p) CHECK(set.of_length(p).size() == necklace_count(M, p));
  }
  CHECK(necklace_count(4, 12) == 1397740);
}

TEST_CASE("Moebius formula against brute-force aperiodic words") {
  for (int M : {2, 3})
    for (int p = 1; p <= 8; ++p) CHECK(necklace_count(M, p) == brute_count(M, p));
  CHECK(moebius(1) == 1);
  CHECK(moebius(6) == 1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(30) == -1);
}

TEST_CASE("stored orbits are canonical, aperiodic and pairwise non-rotational") {
  const auto set = enumerate_orbits(3, 7);
  std::set<std::vector<int>> seen;
  for (const auto& o : set.all()) {
    CHECK(is_aperiodic(o.letters));
    CHECK(canonical_rotation(o.letters) == o.letters);
    CHECK(seen.insert(o.letters).second);
  }
}

TEST_CASE("ordering is by length then lexicographic, and repeatable") {
  const auto a = enumerate_orbits(2, 10);
  const auto b = enumerate_orbits(2, 10);
  CHECK(a.all() == b.all());
  for (std::size_t i = 1; i < a.all().size(); ++i) {
    const auto& x = a.all()[i - 1];
    const auto& y = a.all()[i];
    CHECK((x.length() < y.length() || (x.length() == y.length() && x.letters < y.letters)));
  }
  CHECK(a.all().front().word() == "1");
}

TEST_CASE("canonical rotation and aperiodicity helpers") {
  CHECK(canonical_rotation(letters_of("211")) == letters_of("112"));
  CHECK(canonical_rotation(letters_of("2121")) == letters_of("1212"));
  CHECK_FALSE(is_aperiodic(letters_of("1212")));
  CHECK(is_aperiodic(letters_of("1122")));
}

TEST_CASE("resource cap") {
  CHECK_THROWS_AS(enumerate_orbits(2, 30), ResourceError);
  CHECK_THROWS_AS(enumerate_orbits(3, 10, 1000), ResourceError);
}

TEST_CASE("word-sum and orbit-sum identity") {
  for (int m = 1; m <= 8; ++m) CHECK(zm_consistency(2, m, 31).pass);
  CHECK(zm_consistency(3, 5, 7, 3).pass);
  const auto r = zm_consistency(2, 4, 1);
  CHECK(r.relative_error < 1e-9);

  // Commuting diagonal factors: exact agreement.
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  a.diagonal() << 0.7, 0.2;
  b.diagonal() << 0.4, 0.9;
  for (int m = 1; m <= 6; ++m) CHECK(zm_consistency(std::vector<Matrix>{a, b}, m).relative_error < 1e-13);

  // m = 1: both sides are the sum of the single-letter radii.
  const auto one = zm_consistency(std::vector<Matrix>{a, b}, 1);
  CHECK(one.all_words == doctest::Approx(0.7 + 0.9));
  CHECK(one.orbit_sum == doctest::Approx(0.7 + 0.9));
}

}
