#ifndef NIELSEN_PRESENTATION_HPP
#define NIELSEN_PRESENTATION_HPP

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "moves.hpp"
#include "permutation.hpp"
#include "word.hpp"

namespace nielsen {

/// Strips conjugating prefixes: a^{-1} u a -> u. Relators are kept in
/// this form so that evaluation and comparison are insensitive to how a
/// relator was written down.
inline Word cyclically_reduce(const Word& w) {
  std::vector<Letter> letters = w.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == inverse_of(letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word::reduce(std::vector<Letter>(letters.begin() + static_cast<long>(lo),
                                          letters.begin() + static_cast<long>(hi)),
                      w.rank());
}

/// Finite presentation: ordered generator names plus relator words over
/// them. Relators are normalized to freely and cyclically reduced form;
/// relators that reduce to the identity are dropped.
class Presentation {
 public:
  Presentation() = default;

  Presentation(std::vector<std::string> generator_names, std::vector<Word> relators)
      : generator_names_(std::move(generator_names)) {
    std::set<std::string> seen;
    for (const std::string& name : generator_names_) {
      if (!is_valid_generator_name(name)) {
        throw std::invalid_argument("bad generator name '" + name + "'");
      }
      if (!seen.insert(name).second) {
        throw std::invalid_argument("duplicate generator name '" + name + "'");
      }
    }
    for (const Word& r : relators) {
      if (r.rank() != rank()) {
        throw std::invalid_argument("relator rank does not match generator count");
      }
      Word reduced = cyclically_reduce(r);
      if (!reduced.is_identity()) relators_.push_back(std::move(reduced));
    }
  }

  int rank() const { return static_cast<int>(generator_names_.size()); }
  const std::vector<std::string>& generator_names() const { return generator_names_; }
  const std::vector<Word>& relators() const { return relators_; }

  Word parse(const std::string& text) const { return parse_word(text, generator_names_); }
  std::string format(const Word& w) const { return format_word(w, generator_names_); }

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::vector<std::string> generator_names_;
  std::vector<Word> relators_;
};

// --- presentation file format -------------------------------------------------
//
//   gens: s1 s2 s3
//   rel: s1^5
//   rel: s1 s2 s3

inline std::string format_presentation(const Presentation& p) {
  std::string out = "gens:";
  for (const std::string& name : p.generator_names()) out += " " + name;
  out += '\n';
  for (const Word& r : p.relators()) out += "rel: " + p.format(r) + '\n';
  return out;
}

inline Presentation parse_presentation(std::istream& in) {
  std::vector<std::string> names;
  std::vector<std::string> relator_texts;
  bool have_gens = false;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "gens:") {
      if (have_gens) throw parse_error("duplicate 'gens:' line");
      have_gens = true;
      std::string name;
      while (ls >> name) names.push_back(name);
    } else if (head == "rel:") {
      if (!have_gens) throw parse_error("'rel:' before 'gens:'");
      std::string rest;
      std::getline(ls, rest);
      relator_texts.push_back(rest);
    } else {
      throw parse_error("unexpected line '" + line + "' in presentation");
    }
  }
  if (!have_gens) throw parse_error("missing 'gens:' line");
  std::vector<Word> relators;
  relators.reserve(relator_texts.size());
  for (const std::string& text : relator_texts) {
    relators.push_back(parse_word(text, names));
  }
  return Presentation(std::move(names), std::move(relators));
}

inline Presentation parse_presentation(const std::string& text) {
  std::istringstream in(text);
  return parse_presentation(in);
}

// --- Seifert invariants --------------------------------------------------------

/// S(g, e; (alpha_1,beta_1), ..., (alpha_r,beta_r)): base genus, Euler
/// class, and exceptional fiber coefficients.
struct SeifertInvariants {
  int genus = 0;
  int euler = 0;
  std::vector<std::pair<int, int>> fibers;

  int fiber_count() const { return static_cast<int>(fibers.size()); }

  void validate() const {
    if (genus < 0) throw std::invalid_argument("base genus must be non-negative");
    if (fibers.empty()) throw std::invalid_argument("at least one exceptional fiber required");
    for (const auto& [alpha, beta] : fibers) {
      if (alpha < 2) throw std::invalid_argument("fiber coefficient alpha must be >= 2");
      if (std::gcd(alpha, beta) != 1) {
        throw std::invalid_argument("fiber coefficients must be coprime");
      }
    }
  }
};

/// CLI syntax: `g=0,e=-1,fibers=5/2,7/2,9/2`.
inline SeifertInvariants parse_seifert(const std::string& text) {
  SeifertInvariants inv;
  bool have_g = false;
  bool have_e = false;
  bool in_fibers = false;
  std::istringstream in(text);
  std::string token;
  auto parse_int = [](const std::string& s, const std::string& what) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      throw parse_error("bad " + what + " '" + s + "' in Seifert invariants");
    }
    return value;
  };
  auto parse_fiber = [&](const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) {
      throw parse_error("fiber '" + s + "' must be written alpha/beta");
    }
    const int alpha = parse_int(s.substr(0, slash), "fiber alpha");
    const int beta = parse_int(s.substr(slash + 1), "fiber beta");
    inv.fibers.emplace_back(alpha, beta);
  };
  while (std::getline(in, token, ',')) {
    if (token.rfind("g=", 0) == 0) {
      inv.genus = parse_int(token.substr(2), "genus");
      have_g = true;
      in_fibers = false;
    } else if (token.rfind("e=", 0) == 0) {
      inv.euler = parse_int(token.substr(2), "Euler class");
      have_e = true;
      in_fibers = false;
    } else if (token.rfind("fibers=", 0) == 0) {
      parse_fiber(token.substr(7));
      in_fibers = true;
    } else if (in_fibers) {
      parse_fiber(token);
    } else {
      throw parse_error("unexpected token '" + token + "' in Seifert invariants");
    }
  }
  if (!have_g || !have_e || inv.fibers.empty()) {
    throw parse_error("Seifert invariants need g=, e= and fibers=");
  }
  try {
    inv.validate();
  } catch (const std::invalid_argument& e) {
    throw parse_error(std::string(e.what()) + " in '" + text + "'");
  }
  return inv;
}

inline std::string format_seifert(const SeifertInvariants& inv) {
  std::string out = "g=" + std::to_string(inv.genus) + ",e=" + std::to_string(inv.euler) + ",fibers=";
  for (std::size_t i = 0; i < inv.fibers.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(inv.fibers[i].first) + "/" + std::to_string(inv.fibers[i].second);
  }
  return out;
}

namespace detail {

inline std::vector<std::string> sfs_generator_names(const SeifertInvariants& inv,
                                                    bool with_fiber_generator) {
  std::vector<std::string> names;
  for (int i = 1; i <= inv.fiber_count(); ++i) names.push_back("s" + std::to_string(i));
  for (int j = 1; j <= inv.genus; ++j) {
    names.push_back("a" + std::to_string(j));
    names.push_back("b" + std::to_string(j));
  }
  if (with_fiber_generator) names.push_back("h");
  return names;
}

}  // namespace detail

/// Standard presentation of the Seifert fiber space group:
/// generators s_1..s_r, a_1,b_1,..,a_g,b_g, h with central h,
/// s_i^{alpha_i} h^{beta_i}, and s_1..s_r prod[a_j,b_j] h^{-e}.
inline Presentation sfs_group(const SeifertInvariants& inv) {
  inv.validate();
  const int r = inv.fiber_count();
  const int rank = r + 2 * inv.genus + 1;
  const int h = rank - 1;
  auto gen = [rank](int index) { return Word::generator(index, rank); };

  std::vector<Word> relators;
  for (int i = 0; i < r; ++i) relators.push_back(commutator(gen(i), gen(h)));
  for (int j = 0; j < inv.genus; ++j) {
    relators.push_back(commutator(gen(r + 2 * j), gen(h)));
    relators.push_back(commutator(gen(r + 2 * j + 1), gen(h)));
  }
  for (int i = 0; i < r; ++i) {
    relators.push_back(multiply(pow(gen(i), inv.fibers[static_cast<std::size_t>(i)].first),
                                pow(gen(h), inv.fibers[static_cast<std::size_t>(i)].second)));
  }
  Word longest = Word::identity(rank);
  for (int i = 0; i < r; ++i) longest = multiply(longest, gen(i));
  for (int j = 0; j < inv.genus; ++j) {
    longest = multiply(longest, commutator(gen(r + 2 * j), gen(r + 2 * j + 1)));
  }
  longest = multiply(longest, pow(gen(h), -inv.euler));
  relators.push_back(longest);

  return Presentation(detail::sfs_generator_names(inv, true), std::move(relators));
}

/// The Fuchsian quotient (central fiber generator killed):
/// < s_1..s_r, a_1,b_1,..,a_g,b_g | s_i^{alpha_i}, s_1..s_r prod[a_j,b_j] >.
inline Presentation fuchsian_quotient(const SeifertInvariants& inv) {
  inv.validate();
  const int r = inv.fiber_count();
  const int rank = r + 2 * inv.genus;
  auto gen = [rank](int index) { return Word::generator(index, rank); };

  std::vector<Word> relators;
  for (int i = 0; i < r; ++i) {
    relators.push_back(pow(gen(i), inv.fibers[static_cast<std::size_t>(i)].first));
  }
  Word longest = Word::identity(rank);
  for (int i = 0; i < r; ++i) longest = multiply(longest, gen(i));
  for (int j = 0; j < inv.genus; ++j) {
    longest = multiply(longest, commutator(gen(r + 2 * j), gen(r + 2 * j + 1)));
  }
  relators.push_back(longest);

  return Presentation(detail::sfs_generator_names(inv, false), std::move(relators));
}

// --- vertical splittings --------------------------------------------------------

/// Choice data for a vertical splitting: a nonempty proper subset of the
/// fiber indices {1..r}, plus the complement index whose loop is dropped.
struct VerticalChoice {
  std::vector<int> subset;  // sorted, 1-based
  int excluded_q = 0;
};

inline std::vector<int> subset_complement(const std::vector<int>& subset, int r) {
  std::vector<int> complement;
  const std::set<int> members(subset.begin(), subset.end());
  for (int i = 1; i <= r; ++i) {
    if (!members.count(i)) complement.push_back(i);
  }
  return complement;
}

inline void validate_choice(const VerticalChoice& choice, int r) {
  if (choice.subset.empty()) {
    throw std::invalid_argument("vertical choice subset must be nonempty");
  }
  if (static_cast<int>(choice.subset.size()) >= r) {
    throw std::invalid_argument("vertical choice subset must be proper");
  }
  std::set<int> seen;
  for (int i : choice.subset) {
    if (i < 1 || i > r) throw std::invalid_argument("subset index out of range");
    if (!seen.insert(i).second) throw std::invalid_argument("subset index repeated");
  }
  if (seen.count(choice.excluded_q) || choice.excluded_q < 1 || choice.excluded_q > r) {
    throw std::invalid_argument("excluded index must lie in the complement");
  }
}

/// Builds a choice with the default dropped loop: the smallest
/// complement index.
inline VerticalChoice make_vertical_choice(std::vector<int> subset, int r,
                                           std::optional<int> excluded_q = std::nullopt) {
  std::sort(subset.begin(), subset.end());
  VerticalChoice choice{std::move(subset), 0};
  const std::vector<int> complement = subset_complement(choice.subset, r);
  if (complement.empty()) {
    throw std::invalid_argument("vertical choice subset must be proper");
  }
  choice.excluded_q = excluded_q.value_or(complement.front());
  validate_choice(choice, r);
  return choice;
}

inline std::string format_subset(const std::vector<int>& subset) {
  std::string out = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(subset[i]);
  }
  out += '}';
  return out;
}

/// Default word-level exponents for the chosen fibers: e_i = beta_i.
inline std::map<int, int> default_exponents(const SeifertInvariants& inv,
                                            const VerticalChoice& choice) {
  std::map<int, int> exponents;
  for (int i : choice.subset) {
    exponents[i] = inv.fibers[static_cast<std::size_t>(i - 1)].second;
  }
  return exponents;
}

/// Generating system of the vertical splitting, as words in the Fuchsian
/// quotient, in the fixed order: chosen s_i^{e_i} ascending, unchosen
/// s_m ascending with the excluded one dropped, then a_1,b_1,...,a_g,b_g.
/// Arity is always 2g + r - 1.
inline GeneratingTuple vertical_system(const SeifertInvariants& inv,
                                       const VerticalChoice& choice,
                                       const std::map<int, int>& exponents) {
  inv.validate();
  const int r = inv.fiber_count();
  validate_choice(choice, r);
  std::set<int> subset_keys;
  for (const auto& [index, value] : exponents) subset_keys.insert(index);
  if (subset_keys != std::set<int>(choice.subset.begin(), choice.subset.end())) {
    throw std::invalid_argument("exponents must be defined exactly on the chosen subset");
  }
  for (int i : choice.subset) {
    const int alpha = inv.fibers[static_cast<std::size_t>(i - 1)].first;
    if (std::gcd(alpha, exponents.at(i)) != 1) {
      throw std::invalid_argument("exponent for s" + std::to_string(i) +
                                  " must be coprime to alpha");
    }
  }

  const int rank = r + 2 * inv.genus;
  std::vector<Word> words;
  for (int i : choice.subset) {
    words.push_back(pow(Word::generator(i - 1, rank), exponents.at(i)));
  }
  for (int m : subset_complement(choice.subset, r)) {
    if (m == choice.excluded_q) continue;
    words.push_back(Word::generator(m - 1, rank));
  }
  for (int j = 0; j < inv.genus; ++j) {
    words.push_back(Word::generator(r + 2 * j, rank));
    words.push_back(Word::generator(r + 2 * j + 1, rank));
  }
  return GeneratingTuple(std::move(words), rank);
}

/// One representative per {subset, complement} pair of nonempty proper
/// subsets of {1..r}: the member containing index 1, in ascending
/// bitmask order. Exactly 2^{r-1} - 1 entries.
inline std::vector<std::vector<int>> enumerate_vertical_choices(int r) {
  if (r < 2) throw std::invalid_argument("vertical enumeration needs r >= 2");
  std::vector<std::vector<int>> subsets;
  const unsigned full = (1u << r) - 1u;
  for (unsigned mask = 1; mask < full; ++mask) {
    if (!(mask & 1u)) continue;  // canonical representative contains index 1
    std::vector<int> subset;
    for (int i = 0; i < r; ++i) {
      if (mask & (1u << i)) subset.push_back(i + 1);
    }
    subsets.push_back(std::move(subset));
  }
  return subsets;
}

// --- the classification oracle ---------------------------------------------------

struct LmHypothesesCheck {
  bool ok = false;
  std::vector<std::string> reasons;  // every violated condition
};

/// Hypotheses of the vertical-splitting classification theorem:
/// (g>0 and r>0) or r>=3; beta_i not congruent to +-1 mod alpha_i;
/// all alpha_i odd, pairwise coprime, pairwise distinct.
inline LmHypothesesCheck check_lm_hypotheses(const SeifertInvariants& inv) {
  inv.validate();
  LmHypothesesCheck check;
  const int r = inv.fiber_count();
  if (!((inv.genus > 0 && r > 0) || r >= 3)) {
    check.reasons.push_back("requires g>0 and r>0, or r>=3 (got g=" +
                            std::to_string(inv.genus) + ", r=" + std::to_string(r) + ")");
  }
  for (int i = 0; i < r; ++i) {
    const auto [alpha, beta] = inv.fibers[static_cast<std::size_t>(i)];
    const int residue = ((beta % alpha) + alpha) % alpha;
    if (residue == 1 % alpha || residue == (alpha - 1) % alpha) {
      check.reasons.push_back("beta_" + std::to_string(i + 1) + " = " + std::to_string(beta) +
                              " is congruent to +-1 mod alpha_" + std::to_string(i + 1) +
                              " = " + std::to_string(alpha));
    }
  }
  for (int i = 0; i < r; ++i) {
    const int alpha = inv.fibers[static_cast<std::size_t>(i)].first;
    if (alpha % 2 == 0) {
      check.reasons.push_back("alpha_" + std::to_string(i + 1) + " = " +
                              std::to_string(alpha) + " is even");
    }
  }
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const int ai = inv.fibers[static_cast<std::size_t>(i)].first;
      const int aj = inv.fibers[static_cast<std::size_t>(j)].first;
      if (ai == aj) {
        check.reasons.push_back("alpha_" + std::to_string(i + 1) + " and alpha_" +
                                std::to_string(j + 1) + " are both " + std::to_string(ai));
      } else if (std::gcd(ai, aj) != 1) {
        check.reasons.push_back("alpha_" + std::to_string(i + 1) + " and alpha_" +
                                std::to_string(j + 1) + " share the factor " +
                                std::to_string(std::gcd(ai, aj)));
      }
    }
  }
  check.ok = check.reasons.empty();
  return check;
}

struct PairVerdict {
  enum class Kind { Equal, Distinct, Unknown };
  Kind kind = Kind::Unknown;
  std::string reason;
};

/// Theorem-backed comparison of two vertical splittings of the same
/// space: Equal iff the index subsets are equal or complementary, valid
/// only under the classification hypotheses (otherwise Unknown with the
/// failed hypotheses as the reason).
inline PairVerdict classify_vertical_pair(const SeifertInvariants& inv,
                                          const VerticalChoice& a,
                                          const VerticalChoice& b) {
  inv.validate();
  const int r = inv.fiber_count();
  validate_choice(a, r);
  validate_choice(b, r);
  const LmHypothesesCheck check = check_lm_hypotheses(inv);
  if (!check.ok) {
    std::string reason = "hypotheses not satisfied:";
    for (const std::string& why : check.reasons) reason += " " + why + ";";
    reason.pop_back();
    return PairVerdict{PairVerdict::Kind::Unknown, reason};
  }
  const std::set<int> sa(a.subset.begin(), a.subset.end());
  const std::set<int> sb(b.subset.begin(), b.subset.end());
  if (sa == sb) return PairVerdict{PairVerdict::Kind::Equal, "subsets equal"};
  const std::vector<int> complement = subset_complement(b.subset, r);
  if (sa == std::set<int>(complement.begin(), complement.end())) {
    return PairVerdict{PairVerdict::Kind::Equal, "subsets complementary"};
  }
  return PairVerdict{PairVerdict::Kind::Distinct, "subsets neither equal nor complementary"};
}

// --- homomorphism validation ------------------------------------------------------

/// Evaluates a word under generator images x_i -> images[i], left to right.
inline Permutation evaluate_word(const Word& w, const std::vector<Permutation>& images) {
  if (static_cast<int>(images.size()) != w.rank()) {
    throw std::invalid_argument("evaluate_word: one image per generator required");
  }
  int degree = 0;
  if (!images.empty()) {
    degree = images.front().degree();
    for (const Permutation& p : images) {
      if (p.degree() != degree) {
        throw std::invalid_argument("evaluate_word: images must share a degree");
      }
    }
  }
  Permutation acc = Permutation::identity(degree);
  for (const Letter& l : w.letters()) {
    const Permutation& image = images[static_cast<std::size_t>(l.index)];
    acc = compose(acc, l.sign > 0 ? image : image.inverse());
  }
  return acc;
}

/// True iff every relator of p maps to the identity under the images.
inline bool validate_homomorphism(const Presentation& p,
                                  const std::vector<Permutation>& images) {
  if (static_cast<int>(images.size()) != p.rank()) {
    throw std::invalid_argument("validate_homomorphism: arity mismatch");
  }
  for (const Word& relator : p.relators()) {
    if (!evaluate_word(relator, images).is_identity()) return false;
  }
  return true;
}

/// Name of the first relator violated by the images, if any.
inline std::optional<std::string> first_failing_relator(
    const Presentation& p, const std::vector<Permutation>& images) {
  for (const Word& relator : p.relators()) {
    if (!evaluate_word(relator, images).is_identity()) return p.format(relator);
  }
  return std::nullopt;
}

}  // namespace nielsen

#endif  // NIELSEN_PRESENTATION_HPP
