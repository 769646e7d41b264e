#include "ncinterp/words.hpp"

#include "ncinterp/errors.hpp"

#include <algorithm>
#include <charconv>

namespace ncinterp {

Word::Word(std::vector<int> letters) : letters_(std::move(letters)) {
  for (int k : letters_) {
    if (k < 1) throw InvalidInput("word letters are 1-based, got " + std::to_string(k));
  }
}

Word::Word(std::initializer_list<int> letters) : Word(std::vector<int>(letters)) {}

Word Word::parse(std::string_view text) {
  std::vector<int> letters;
  if (text.empty()) return Word{};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t dot = std::min(text.find('.', pos), text.size());
    const std::string_view part = text.substr(pos, dot - pos);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || value < 1) {
      throw InvalidInput("malformed word \"" + std::string(text) + "\"");
    }
    letters.push_back(value);
    pos = dot + 1;
  }
  return Word(std::move(letters));
}

int Word::max_letter() const {
  return letters_.empty() ? 0 : *std::max_element(letters_.begin(), letters_.end());
}

Word Word::drop_first() const {
  if (letters_.empty()) return *this;
  return Word(std::vector<int>(letters_.begin() + 1, letters_.end()));
}

Word Word::drop_last() const {
  if (letters_.empty()) return *this;
  return Word(std::vector<int>(letters_.begin(), letters_.end() - 1));
}

Word Word::reversed() const { return Word(std::vector<int>(letters_.rbegin(), letters_.rend())); }

std::string Word::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(letters_[i]);
  }
  return out;
}

std::strong_ordering Word::operator<=>(const Word& other) const {
  if (auto c = letters_.size() <=> other.letters_.size(); c != 0) return c;
  return letters_ <=> other.letters_;
}

Word concat(const Word& w1, const Word& w2) {
  std::vector<int> letters = w1.letters();
  letters.insert(letters.end(), w2.letters().begin(), w2.letters().end());
  return Word(std::move(letters));
}

AdmissibilityCheck validate_admissible(int n_vars, const WordSet& words) {
  if (n_vars < 1) return {false, "n_vars must be at least 1"};
  if (words.empty()) return {};
  if (!words.count(Word{})) return {false, "empty word missing from a non-empty set"};
  for (const Word& w : words) {
    if (w.max_letter() > n_vars) {
      return {false, "word \"" + w.to_string() + "\" uses a letter above n_vars"};
    }
    if (w.is_empty()) continue;
    if (!words.count(w.drop_first())) {
      return {false, "word \"" + w.to_string() + "\" present but \"" + w.drop_first().to_string() +
                         "\" (first letter removed) missing"};
    }
    if (!words.count(w.drop_last())) {
      return {false, "word \"" + w.to_string() + "\" present but \"" + w.drop_last().to_string() +
                         "\" (last letter removed) missing"};
    }
  }
  return {};
}

AdmissibleSet::AdmissibleSet(int n_vars, WordSet words) : n_vars_(n_vars), words_(std::move(words)) {
  if (auto check = validate_admissible(n_vars_, words_); !check.ok) {
    throw InvalidInput("inadmissible word set: " + check.diagnostic);
  }
}

std::size_t AdmissibleSet::max_length() const {
  return words_.empty() ? 0 : words_.rbegin()->length();
}

std::optional<std::size_t> AdmissibleSet::index_of(const Word& w) const {
  auto it = words_.find(w);
  if (it == words_.end()) return std::nullopt;
  return static_cast<std::size_t>(std::distance(words_.begin(), it));
}

bool AdmissibleSet::is_subset_of(const AdmissibleSet& other) const {
  return n_vars_ == other.n_vars_ &&
         std::includes(other.words_.begin(), other.words_.end(), words_.begin(), words_.end());
}

AdmissibleSet lambda_m(int n_vars, int m, std::size_t cap) {
  if (n_vars < 1) throw InvalidInput("n_vars must be at least 1");
  if (m < 0) throw InvalidInput("m must be non-negative");
  WordSet words{Word{}};
  std::vector<Word> layer{Word{}};
  for (int len = 1; len <= m; ++len) {
    std::vector<Word> next;
    for (const Word& w : layer) {
      for (int k = 1; k <= n_vars; ++k) {
        next.push_back(concat(w, Word::letter(k)));
        if (words.size() + next.size() > cap) {
          throw ResourceError("lambda_m(" + std::to_string(n_vars) + ", " + std::to_string(m) +
                              ") exceeds the cap of " + std::to_string(cap) + " words");
        }
      }
    }
    words.insert(next.begin(), next.end());
    layer = std::move(next);
  }
  return AdmissibleSet(n_vars, std::move(words));
}

WordSet boundary(const AdmissibleSet& lambda) {
  WordSet out;
  for (const Word& w : lambda.words()) {
    for (int k = 1; k <= lambda.n_vars(); ++k) {
      Word b = concat(Word::letter(k), w);
      if (!lambda.contains(b)) out.insert(std::move(b));
    }
  }
  return out;
}

AdmissibleSet random_admissible(int n_vars, std::size_t max_words, Rng& rng) {
  WordSet words{Word{}};
  if (max_words <= 1) return AdmissibleSet(n_vars, std::move(words));
  std::uniform_int_distribution<std::size_t> target_dist(1, max_words);
  const std::size_t target = target_dist(rng);
  while (words.size() < target) {
    std::vector<Word> candidates;
    for (const Word& w : words) {
      for (int k = 1; k <= n_vars; ++k) {
        Word c = concat(w, Word::letter(k));
        if (!words.count(c) && words.count(c.drop_first())) candidates.push_back(std::move(c));
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    words.insert(candidates[pick(rng)]);
  }
  return AdmissibleSet(n_vars, std::move(words));
}

}  // namespace ncinterp
