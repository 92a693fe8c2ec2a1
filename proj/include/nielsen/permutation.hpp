#ifndef NIELSEN_PERMUTATION_HPP
#define NIELSEN_PERMUTATION_HPP

#include <cctype>
#include <compare>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hashing.hpp"

namespace nielsen {

/// Permutation of [0, degree) in one-line form. Comparison is
/// lexicographic on the one-line images, which is the total order used
/// for canonical orbit representatives.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
      if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v]) {
        throw std::invalid_argument("permutation images must be a bijection");
      }
      seen[static_cast<std::size_t>(v)] = true;
    }
  }

  static Permutation identity(int degree) {
    if (degree < 0) throw std::invalid_argument("degree must be non-negative");
    std::vector<int> images(static_cast<std::size_t>(degree));
    for (int i = 0; i < degree; ++i) images[static_cast<std::size_t>(i)] = i;
    return Permutation(std::move(images));
  }

  int degree() const { return static_cast<int>(images_.size()); }
  int apply(int point) const { return images_.at(static_cast<std::size_t>(point)); }
  const std::vector<int>& one_line() const { return images_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i) {
      if (images_[static_cast<std::size_t>(i)] != i) return false;
    }
    return true;
  }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 0; i < degree(); ++i) {
      inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
    }
    return Permutation(std::move(inv));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Apply `first`, then `second` (left-to-right, matching word order).
inline Permutation compose(const Permutation& first, const Permutation& second) {
  if (first.degree() != second.degree()) {
    throw std::invalid_argument("compose: degree mismatch");
  }
  std::vector<int> images(static_cast<std::size_t>(first.degree()));
  for (int x = 0; x < first.degree(); ++x) {
    images[static_cast<std::size_t>(x)] = second.apply(first.apply(x));
  }
  return Permutation(std::move(images));
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const {
    return hash_range(p.one_line());
  }
};

// --- cycle notation ----------------------------------------------------------
//
// `(0 1 2 3 4)(5 6)` with fixed points omitted; the identity is `()`.
// Cycles print sorted by their smallest element, starting at it.

inline std::string format_cycles(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(static_cast<std::size_t>(p.degree()), false);
  for (int start = 0; start < p.degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)] || p.apply(start) == start) {
      continue;
    }
    out += '(';
    int x = start;
    bool first = true;
    while (!seen[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = true;
      if (!first) out += ' ';
      out += std::to_string(x);
      first = false;
      x = p.apply(x);
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

inline Permutation parse_cycles(const std::string& text, int degree) {
  if (degree < 0) throw std::invalid_argument("degree must be non-negative");
  std::vector<int> images(static_cast<std::size_t>(degree));
  for (int i = 0; i < degree; ++i) images[static_cast<std::size_t>(i)] = i;
  std::vector<bool> used(static_cast<std::size_t>(degree), false);

  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_space();
  bool any = false;
  while (pos < text.size()) {
    if (text[pos] != '(') throw parse_error("expected '(' in cycle notation");
    ++pos;
    std::vector<int> cycle;
    while (true) {
      skip_space();
      if (pos >= text.size()) throw parse_error("unterminated cycle");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      std::size_t end = pos;
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) &&
             text[end] != ')') {
        ++end;
      }
      const std::string token = text.substr(pos, end - pos);
      std::size_t consumed = 0;
      int point = 0;
      try {
        point = std::stoi(token, &consumed);
      } catch (const std::exception&) {
        consumed = 0;
      }
      if (consumed == 0 || consumed != token.size()) {
        throw parse_error("bad point '" + token + "' in cycle notation");
      }
      if (point < 0 || point >= degree) {
        throw parse_error("point " + token + " out of range for degree " +
                          std::to_string(degree));
      }
      if (used[static_cast<std::size_t>(point)]) {
        throw parse_error("point " + token + " repeated in cycle notation");
      }
      used[static_cast<std::size_t>(point)] = true;
      cycle.push_back(point);
      pos = end;
    }
    any = true;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      images[static_cast<std::size_t>(cycle[k])] = cycle[(k + 1) % cycle.size()];
    }
    skip_space();
  }
  if (!any) throw parse_error("empty cycle notation; the identity is '()'");
  return Permutation(std::move(images));
}

}  // namespace nielsen

#endif  // NIELSEN_PERMUTATION_HPP
