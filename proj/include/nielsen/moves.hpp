#ifndef NIELSEN_MOVES_HPP
#define NIELSEN_MOVES_HPP

#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "word.hpp"

namespace nielsen {

/// Ordered tuple of words, all of the same rank. The rank is stored
/// explicitly so that the empty tuple still knows its ambient free group.
class GeneratingTuple {
 public:
  GeneratingTuple() = default;

  GeneratingTuple(std::vector<Word> words, int rank)
      : words_(std::move(words)), rank_(rank) {
    if (rank_ < 0) throw std::invalid_argument("rank must be non-negative");
    for (const Word& w : words_) {
      if (w.rank() != rank_) {
        throw std::invalid_argument("tuple entries must share a rank");
      }
    }
  }

  /// The identity tuple (x_1,...,x_n) in the rank-n free group.
  static GeneratingTuple basis(int rank) {
    std::vector<Word> words;
    words.reserve(static_cast<std::size_t>(rank));
    for (int i = 0; i < rank; ++i) words.push_back(Word::generator(i, rank));
    return GeneratingTuple(std::move(words), rank);
  }

  int arity() const { return static_cast<int>(words_.size()); }
  int rank() const { return rank_; }
  const std::vector<Word>& words() const { return words_; }
  const Word& at(int i) const { return words_.at(static_cast<std::size_t>(i)); }

  friend bool operator==(const GeneratingTuple&, const GeneratingTuple&) = default;

 private:
  std::vector<Word> words_;
  int rank_ = 0;
};

/// One elementary Nielsen transformation, generalized to arbitrary index
/// pairs. The classical fixed-position moves are compositions of these.
struct NielsenMove {
  enum class Kind { Swap, Cycle, Invert, RightMultiply };

  Kind kind = Kind::Cycle;
  int i = 0;
  int j = 0;

  static NielsenMove swap(int i, int j) {
    require_distinct(i, j, "swap");
    return NielsenMove{Kind::Swap, i, j};
  }
  static NielsenMove cycle() { return NielsenMove{Kind::Cycle, 0, 0}; }
  static NielsenMove invert(int i) {
    require_index(i, "invert");
    return NielsenMove{Kind::Invert, i, 0};
  }
  /// Right multiplication: entry i becomes t_i * t_j.
  static NielsenMove rmul(int i, int j) {
    require_distinct(i, j, "rmul");
    return NielsenMove{Kind::RightMultiply, i, j};
  }

  friend bool operator==(const NielsenMove&, const NielsenMove&) = default;

 private:
  static void require_index(int i, const char* what) {
    if (i < 0) {
      throw std::invalid_argument(std::string(what) + ": negative index");
    }
  }
  static void require_distinct(int i, int j, const char* what) {
    require_index(i, what);
    require_index(j, what);
    if (i == j) {
      throw std::invalid_argument(std::string(what) +
                                  ": indices must be distinct");
    }
  }
};

inline GeneratingTuple apply_move(const GeneratingTuple& t,
                                  const NielsenMove& m) {
  const int n = t.arity();
  auto check = [n](int idx) {
    if (idx < 0 || idx >= n) {
      throw std::invalid_argument("move index out of range for tuple");
    }
  };
  std::vector<Word> words = t.words();
  switch (m.kind) {
    case NielsenMove::Kind::Swap:
      check(m.i);
      check(m.j);
      if (m.i == m.j) throw std::invalid_argument("swap: indices must differ");
      std::swap(words[static_cast<std::size_t>(m.i)],
                words[static_cast<std::size_t>(m.j)]);
      break;
    case NielsenMove::Kind::Cycle:
      if (n < 1) throw std::invalid_argument("cycle: empty tuple");
      std::rotate(words.begin(), words.begin() + 1, words.end());
      break;
    case NielsenMove::Kind::Invert:
      check(m.i);
      words[static_cast<std::size_t>(m.i)] =
          invert(words[static_cast<std::size_t>(m.i)]);
      break;
    case NielsenMove::Kind::RightMultiply:
      check(m.i);
      check(m.j);
      if (m.i == m.j) throw std::invalid_argument("rmul: indices must differ");
      words[static_cast<std::size_t>(m.i)] =
          multiply(words[static_cast<std::size_t>(m.i)],
                   words[static_cast<std::size_t>(m.j)]);
      break;
  }
  return GeneratingTuple(std::move(words), t.rank());
}

/// Moves undoing m on every tuple of the given arity:
/// swap and invert are involutions, a cycle unwinds with arity-1 cycles,
/// and (t_i t_j) * t_j^{-1} = t_i gives the right-multiply inverse.
inline std::vector<NielsenMove> inverse_sequence(const NielsenMove& m,
                                                 int arity) {
  switch (m.kind) {
    case NielsenMove::Kind::Swap:
    case NielsenMove::Kind::Invert:
      return {m};
    case NielsenMove::Kind::Cycle: {
      if (arity < 1) throw std::invalid_argument("cycle: empty tuple");
      return std::vector<NielsenMove>(static_cast<std::size_t>(arity - 1),
                                      NielsenMove::cycle());
    }
    case NielsenMove::Kind::RightMultiply:
      return {NielsenMove::invert(m.j), m, NielsenMove::invert(m.j)};
  }
  throw std::logic_error("unreachable");
}

inline GeneratingTuple apply_sequence(const GeneratingTuple& t,
                                      const std::vector<NielsenMove>& moves) {
  GeneratingTuple result = t;
  for (const NielsenMove& m : moves) result = apply_move(result, m);
  return result;
}

/// Images of the standard basis (x_1,...,x_n) under the composed moves.
/// Factorization law: apply_sequence(t, ms).at(i) equals
/// substitute(move_as_automorphism(ms, n).at(i), t.words()).
inline GeneratingTuple move_as_automorphism(const std::vector<NielsenMove>& moves,
                                            int rank) {
  return apply_sequence(GeneratingTuple::basis(rank), moves);
}

/// All valid moves at the given arity, in a fixed deterministic order.
/// Cycle is omitted below arity 2 where it is the identity.
inline std::vector<NielsenMove> move_universe(int arity) {
  std::vector<NielsenMove> moves;
  for (int i = 0; i < arity; ++i) {
    for (int j = i + 1; j < arity; ++j) moves.push_back(NielsenMove::swap(i, j));
  }
  if (arity >= 2) moves.push_back(NielsenMove::cycle());
  for (int i = 0; i < arity; ++i) moves.push_back(NielsenMove::invert(i));
  for (int i = 0; i < arity; ++i) {
    for (int j = 0; j < arity; ++j) {
      if (i != j) moves.push_back(NielsenMove::rmul(i, j));
    }
  }
  return moves;
}

struct RandomWalkResult {
  GeneratingTuple tuple;
  std::vector<NielsenMove> log;
};

/// Applies `steps` uniformly sampled valid moves. Only raw engine output
/// is consumed, so the walk is reproducible across platforms for a fixed
/// seed.
inline RandomWalkResult random_walk(const GeneratingTuple& t, int steps,
                                    std::uint64_t seed) {
  if (steps < 0) throw std::invalid_argument("random_walk: negative steps");
  const std::vector<NielsenMove> universe = move_universe(t.arity());
  if (steps > 0 && universe.empty()) {
    throw std::invalid_argument("random_walk: no valid moves at this arity");
  }
  std::mt19937_64 rng(seed);
  RandomWalkResult result{t, {}};
  result.log.reserve(static_cast<std::size_t>(steps));
  for (int s = 0; s < steps; ++s) {
    const NielsenMove& m = universe[rng() % universe.size()];
    result.tuple = apply_move(result.tuple, m);
    result.log.push_back(m);
  }
  return result;
}

// --- move log text format ----------------------------------------------------
//
// One move per line: `swap i j`, `cycle`, `invert i`, `rmul i j`.

inline std::string format_moves(const std::vector<NielsenMove>& moves) {
  std::string out;
  for (const NielsenMove& m : moves) {
    switch (m.kind) {
      case NielsenMove::Kind::Swap:
        out += "swap " + std::to_string(m.i) + " " + std::to_string(m.j);
        break;
      case NielsenMove::Kind::Cycle:
        out += "cycle";
        break;
      case NielsenMove::Kind::Invert:
        out += "invert " + std::to_string(m.i);
        break;
      case NielsenMove::Kind::RightMultiply:
        out += "rmul " + std::to_string(m.i) + " " + std::to_string(m.j);
        break;
    }
    out += '\n';
  }
  return out;
}

inline std::vector<NielsenMove> parse_moves(const std::string& text) {
  std::vector<NielsenMove> moves;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;  // blank line
    int i = 0;
    int j = 0;
    if (op == "swap") {
      if (!(ls >> i >> j)) throw parse_error("swap needs two indices");
      moves.push_back(NielsenMove::swap(i, j));
    } else if (op == "cycle") {
      moves.push_back(NielsenMove::cycle());
    } else if (op == "invert") {
      if (!(ls >> i)) throw parse_error("invert needs an index");
      moves.push_back(NielsenMove::invert(i));
    } else if (op == "rmul") {
      if (!(ls >> i >> j)) throw parse_error("rmul needs two indices");
      moves.push_back(NielsenMove::rmul(i, j));
    } else {
      throw parse_error("unknown move '" + op + "'");
    }
    std::string rest;
    if (ls >> rest) throw parse_error("trailing tokens after move '" + op + "'");
  }
  return moves;
}

}  // namespace nielsen

#endif  // NIELSEN_MOVES_HPP
