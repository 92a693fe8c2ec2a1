#ifndef NIELSEN_WORD_HPP
#define NIELSEN_WORD_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "hashing.hpp"

namespace nielsen {

/// One signed occurrence of a generator: sign +1 encodes x_i, sign -1
/// encodes x_i^{-1}.
struct Letter {
  int index;
  int sign;

  friend bool operator==(const Letter&, const Letter&) = default;
};

constexpr Letter inverse_of(Letter l) { return Letter{l.index, -l.sign}; }

/// Freely reduced word over the ordered basis x_1,...,x_rank of a free
/// group. The rank travels with the word so that arity mismatches in
/// homomorphisms fail structurally instead of silently. Instances are
/// immutable; every operation returns a new value, so words are safe to
/// share across threads.
class Word {
 public:
  Word() = default;

  static Word identity(int rank) {
    check_rank(rank);
    return Word(std::vector<Letter>{}, rank);
  }

  static Word generator(int index, int rank) {
    check_rank(rank);
    if (index < 0 || index >= rank) {
      throw std::invalid_argument("generator index out of range");
    }
    return Word({Letter{index, +1}}, rank);
  }

  /// Free reduction of a raw letter sequence, single stack pass.
  static Word reduce(const std::vector<Letter>& raw, int rank) {
    check_rank(rank);
    std::vector<Letter> out;
    out.reserve(raw.size());
    for (const Letter& l : raw) {
      if (l.index < 0 || l.index >= rank) {
        throw std::invalid_argument("letter index out of range");
      }
      if (l.sign != 1 && l.sign != -1) {
        throw std::invalid_argument("letter sign must be +1 or -1");
      }
      if (!out.empty() && out.back() == inverse_of(l)) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    out.shrink_to_fit();
    return Word(std::move(out), rank);
  }

  int rank() const { return rank_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  Word(std::vector<Letter> letters, int rank)
      : letters_(std::move(letters)), rank_(rank) {}

  static void check_rank(int rank) {
    if (rank < 0) throw std::invalid_argument("rank must be non-negative");
  }

  std::vector<Letter> letters_;
  int rank_ = 0;
};

inline Word multiply(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) {
    throw std::invalid_argument("multiply: rank mismatch");
  }
  std::vector<Letter> letters = u.letters();
  letters.reserve(letters.size() + v.length());
  for (const Letter& l : v.letters()) {
    if (!letters.empty() && letters.back() == inverse_of(l)) {
      letters.pop_back();
    } else {
      letters.push_back(l);
    }
  }
  return Word::reduce(letters, u.rank());
}

inline Word invert(const Word& w) {
  std::vector<Letter> letters;
  letters.reserve(w.length());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    letters.push_back(inverse_of(*it));
  }
  return Word::reduce(letters, w.rank());
}

inline Word pow(const Word& w, long long exponent) {
  const Word base = exponent < 0 ? invert(w) : w;
  Word result = Word::identity(w.rank());
  for (long long k = 0; k < std::llabs(exponent); ++k) {
    result = multiply(result, base);
  }
  return result;
}

/// Image of w under the free-group homomorphism x_i -> images[i].
/// Homomorphic: substitute(uv) = substitute(u) * substitute(v).
inline Word substitute(const Word& w, const std::vector<Word>& images) {
  if (static_cast<int>(images.size()) != w.rank()) {
    throw std::invalid_argument("substitute: one image per generator required");
  }
  int target_rank = 0;
  if (!images.empty()) {
    target_rank = images.front().rank();
    for (const Word& im : images) {
      if (im.rank() != target_rank) {
        throw std::invalid_argument("substitute: images must share a rank");
      }
    }
  }
  std::vector<Letter> letters;
  for (const Letter& l : w.letters()) {
    const Word& im = images[l.index];
    if (l.sign > 0) {
      letters.insert(letters.end(), im.letters().begin(), im.letters().end());
    } else {
      for (auto it = im.letters().rbegin(); it != im.letters().rend(); ++it) {
        letters.push_back(inverse_of(*it));
      }
    }
  }
  return Word::reduce(letters, target_rank);
}

/// Commutator u v u^{-1} v^{-1}.
inline Word commutator(const Word& u, const Word& v) {
  return multiply(multiply(u, v), multiply(invert(u), invert(v)));
}

// --- text syntax -----------------------------------------------------------
//
// Words are written as whitespace-separated tokens `name`, `name^k` with
// integer k; the empty word prints as `1`. Generator names are lowercase
// ASCII identifiers. parse_word/format_word round-trip exactly.

inline std::vector<std::string> default_generator_names(int rank) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

inline bool is_valid_generator_name(const std::string& name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  return std::all_of(name.begin(), name.end(), [](unsigned char c) {
    return std::islower(c) || std::isdigit(c) || c == '_';
  });
}

inline constexpr long long kMaxParsedExponent = 1'000'000;

inline Word parse_word(const std::string& text,
                       const std::vector<std::string>& names) {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) {
    index.emplace(names[i], static_cast<int>(i));
  }
  std::vector<Letter> letters;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    std::string name = token;
    long long exponent = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      name = token.substr(0, caret);
      const std::string exp = token.substr(caret + 1);
      std::size_t used = 0;
      try {
        exponent = std::stoll(exp, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != exp.size()) {
        throw parse_error("bad exponent in word token '" + token + "'");
      }
    }
    const auto it = index.find(name);
    if (it == index.end()) {
      throw parse_error("unknown generator '" + name + "' in word");
    }
    if (exponent > kMaxParsedExponent || exponent < -kMaxParsedExponent) {
      throw parse_error("exponent out of range in word token '" + token + "'");
    }
    const int sign = exponent < 0 ? -1 : +1;
    for (long long k = 0; k < std::llabs(exponent); ++k) {
      letters.push_back(Letter{it->second, sign});
    }
  }
  return Word::reduce(letters, static_cast<int>(names.size()));
}

inline std::string format_word(const Word& w,
                               const std::vector<std::string>& names) {
  if (static_cast<int>(names.size()) < w.rank()) {
    throw std::invalid_argument("format_word: not enough generator names");
  }
  if (w.is_identity()) return "1";
  std::string out;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    const long long run = static_cast<long long>(j - i) * ls[i].sign;
    if (!out.empty()) out += ' ';
    out += names[static_cast<std::size_t>(ls[i].index)];
    if (run != 1) {
      out += '^';
      out += std::to_string(run);
    }
    i = j;
  }
  return out;
}

inline std::size_t hash_value(const Word& w) {
  std::size_t h = std::hash<int>{}(w.rank());
  for (const Letter& l : w.letters()) {
    h = hash_combine(h, static_cast<std::size_t>(l.index) * 2 +
                            (l.sign > 0 ? 1u : 0u));
  }
  return h;
}

}  // namespace nielsen

#endif  // NIELSEN_WORD_HPP
