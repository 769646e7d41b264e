#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncinterp/linalg.hpp"

namespace ncinterp {

/// Element of the free semigroup on N generators: a finite sequence of
/// 1-based letters. The empty sequence is the neutral element.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int> letters);
  Word(std::initializer_list<int> letters);

  static Word empty() { return Word{}; }
  static Word letter(int k) { return Word{k}; }

  /// Parses the dot-separated form ("1.2" = g1 g2, "" = empty word).
  static Word parse(std::string_view text);

  std::size_t length() const { return letters_.size(); }
  bool is_empty() const { return letters_.empty(); }
  const std::vector<int>& letters() const { return letters_; }
  int operator[](std::size_t i) const { return letters_[i]; }
  int max_letter() const;

  Word drop_first() const;
  Word drop_last() const;
  Word reversed() const;

  std::string to_string() const;

  /// Canonical order: shorter words first, then lexicographic.
  std::strong_ordering operator<=>(const Word& other) const;
  bool operator==(const Word& other) const = default;

 private:
  std::vector<int> letters_;
};

/// Concatenation w1 w2.
Word concat(const Word& w1, const Word& w2);
inline Word operator*(const Word& w1, const Word& w2) { return concat(w1, w2); }

using WordSet = std::set<Word>;

struct AdmissibilityCheck {
  bool ok = true;
  std::string diagnostic;
};

/// True iff `words` is admissible over `n_vars` letters: letters in range,
/// contains the empty word when non-empty, and closed under deleting the first
/// or the last letter. On failure the diagnostic names the first offending
/// word in canonical order.
AdmissibilityCheck validate_admissible(int n_vars, const WordSet& words);

/// Finite word set closed under deletion of first/last letters. Immutable.
class AdmissibleSet {
 public:
  /// Throws InvalidInput when the set is not admissible.
  AdmissibleSet(int n_vars, WordSet words);

  int n_vars() const { return n_vars_; }
  const WordSet& words() const& { return words_; }
  WordSet words() && { return std::move(words_); }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  bool contains(const Word& w) const { return words_.count(w) != 0; }
  std::size_t max_length() const;

  /// Position of `w` in canonical order; nullopt when absent.
  std::optional<std::size_t> index_of(const Word& w) const;
  std::vector<Word> sorted() const { return {words_.begin(), words_.end()}; }

  bool is_subset_of(const AdmissibleSet& other) const;
  bool operator==(const AdmissibleSet& other) const = default;

 private:
  int n_vars_;
  WordSet words_;
};

/// Default cap on the number of words lambda_m may produce.
inline constexpr std::size_t kMaxLambdaWords = 1u << 16;

/// All words of length at most m. Throws ResourceError past `cap` words.
AdmissibleSet lambda_m(int n_vars, int m, std::size_t cap = kMaxLambdaWords);

/// Words g_k w with w in the set and g_k w outside it. A tuple is
/// jointly nilpotent with respect to the set iff it vanishes on every
/// boundary word.
WordSet boundary(const AdmissibleSet& lambda);

/// Random admissible set with at most `max_words` words, grown from {∅} by
/// adding words whose both one-letter deletions are already present.
AdmissibleSet random_admissible(int n_vars, std::size_t max_words, Rng& rng);

}  // namespace ncinterp
