#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "ncinterp/errors.hpp"
#include "ncinterp/words.hpp"

using namespace ncinterp;

namespace {

// all words over n letters of length <= len, built independently of lambda_m
std::vector<Word> enumerate(int n, int len) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (int l = 1; l <= len; ++l) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (int k = 1; k <= n; ++k) {
        std::vector<int> letters = w.letters();
        letters.push_back(k);
        next.emplace_back(letters);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

const WordSet kPair{Word{}, Word{1}, Word{2}, Word{1, 2}, Word{2, 1}};

}  // namespace

TEST_CASE("concat") {
  CHECK(concat(Word{1}, Word{2}) == Word{1, 2});
  CHECK(concat(Word{}, Word{2, 1}) == Word{2, 1});
  CHECK(concat(Word{1, 2}, Word{2}) == Word{1, 2, 2});
  CHECK(Word{1} * Word{2} != Word{2} * Word{1});
}

TEST_CASE("concat is associative with the empty word as identity") {
  const auto words = enumerate(2, 3);
  for (const Word& a : words) {
    CHECK(concat(a, Word{}) == a);
    CHECK(concat(Word{}, a) == a);
    for (const Word& b : words) {
      for (const Word& c : words) {
        if (a.length() + b.length() + c.length() > 5) continue;
        CHECK(concat(concat(a, b), c) == concat(a, concat(b, c)));
      }
    }
  }
}

TEST_CASE("parse and print") {
  CHECK(Word::parse("") == Word{});
  CHECK(Word::parse("1.2") == Word{1, 2});
  CHECK(Word::parse("12.3").letters() == std::vector<int>{12, 3});
  CHECK(Word{2, 1, 1}.to_string() == "2.1.1");
  CHECK_THROWS_AS(Word::parse("1..2"), InvalidInput);
  CHECK_THROWS_AS(Word::parse("0"), InvalidInput);
  CHECK_THROWS_AS(Word::parse("a"), InvalidInput);
  CHECK_THROWS_AS(Word({1, -1}), InvalidInput);
}

TEST_CASE("canonical order: length first, then lexicographic") {
  WordSet ws{Word{2, 1}, Word{1}, Word{}, Word{1, 2}, Word{2}, Word{1, 1, 1}};
  std::vector<Word> sorted(ws.begin(), ws.end());
  CHECK(sorted == std::vector<Word>{Word{}, Word{1}, Word{2}, Word{1, 2}, Word{2, 1}, Word{1, 1, 1}});
}

TEST_CASE("validate_admissible") {
  CHECK(validate_admissible(2, kPair).ok);
  const auto bad = validate_admissible(2, {Word{}, Word{1, 2}});
  CHECK_FALSE(bad.ok);
  CHECK(bad.diagnostic.find("1.2") != std::string::npos);
  CHECK(validate_admissible(2, lambda_m(2, 2).words()).ok);
  CHECK_FALSE(validate_admissible(2, {Word{1}}).ok);
  CHECK_FALSE(validate_admissible(1, {Word{}, Word{2}}).ok);
  CHECK(validate_admissible(3, {}).ok);
  // closed under dropping the last letter but not the first
  CHECK_FALSE(validate_admissible(2, {Word{}, Word{1}, Word{1, 2}}).ok);
  CHECK_THROWS_AS(AdmissibleSet(2, {Word{}, Word{1, 2}}), InvalidInput);
}

TEST_CASE("lambda_m") {
  CHECK(lambda_m(2, 1).words() == WordSet{Word{}, Word{1}, Word{2}});
  CHECK(lambda_m(1, 3).words() == WordSet{Word{}, Word{1}, Word{1, 1}, Word{1, 1, 1}});
  CHECK(lambda_m(2, 2).size() == 7);
  for (int n = 1; n <= 3; ++n) {
    for (int m = 0; m <= 4; ++m) {
      const auto lam = lambda_m(n, m);
      CHECK(lam.size() == enumerate(n, m).size());
      CHECK(validate_admissible(n, lam.words()).ok);
      CHECK(lam.max_length() == static_cast<std::size_t>(m));
    }
  }
  CHECK_THROWS_AS(lambda_m(4, 12), ResourceError);
}

TEST_CASE("boundary: small cases") {
  CHECK(boundary(AdmissibleSet(1, {Word{}})) == WordSet{Word{1}});
  CHECK(boundary(lambda_m(1, 3)) == WordSet{Word{1, 1, 1, 1}});

  // oracle: {g_k w : w in Λ} \ Λ by direct enumeration
  WordSet expected;
  for (const Word& w : kPair) {
    for (int k = 1; k <= 2; ++k) {
      Word gw = concat(Word{k}, w);
      if (!kPair.count(gw)) expected.insert(gw);
    }
  }
  const WordSet b = boundary(AdmissibleSet(2, kPair));
  CHECK(b == expected);
  CHECK(b.size() == 6);
  CHECK(b == WordSet{Word{1, 1}, Word{2, 2}, Word{1, 1, 2}, Word{2, 1, 2}, Word{1, 2, 1}, Word{2, 2, 1}});
}

TEST_CASE("every word outside an admissible set factors through the boundary") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 3;
    const AdmissibleSet lam = random_admissible(n, 1 + static_cast<std::size_t>(trial % 12), rng);
    REQUIRE(validate_admissible(n, lam.words()).ok);
    const WordSet b = boundary(lam);
    const int len = static_cast<int>(lam.max_length()) + 2;
    for (const Word& w : enumerate(n, len)) {
      if (lam.contains(w)) continue;
      bool found = false;
      for (std::size_t cut = 0; cut < w.length() && !found; ++cut) {
        std::vector<int> tail(w.letters().begin() + static_cast<long>(cut), w.letters().end());
        found = b.count(Word(tail)) != 0;
      }
      CHECK_MESSAGE(found, "no boundary suffix for ", w.to_string());
    }
  }
}

TEST_CASE("AdmissibleSet queries") {
  const AdmissibleSet lam(2, kPair);
  CHECK(lam.index_of(Word{}) == 0u);
  CHECK(lam.index_of(Word{2, 1}) == 4u);
  CHECK_FALSE(lam.index_of(Word{1, 1}).has_value());
  CHECK(lam.is_subset_of(lambda_m(2, 2)));
  CHECK_FALSE(lambda_m(2, 2).is_subset_of(lam));
}
