#ifndef NIELSEN_QUOTIENT_HPP
#define NIELSEN_QUOTIENT_HPP

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "hashing.hpp"
#include "moves.hpp"
#include "permutation.hpp"
#include "presentation.hpp"
#include "union_find.hpp"

namespace nielsen {

inline constexpr std::size_t kDefaultOrbitCap = 2'000'000;
inline constexpr std::size_t kDefaultCensusBudget = 1'000'000;

/// A validated homomorphism from a presentation onto (a subgroup of) a
/// finite permutation group, given by one image per generator.
struct FiniteQuotient {
  std::string name;
  int degree = 0;
  std::vector<Permutation> generator_images;
  Presentation presentation;
};

/// Builds a quotient, refusing images that do not satisfy the relators.
inline FiniteQuotient make_quotient(std::string name, Presentation presentation,
                                    std::vector<Permutation> generator_images) {
  if (static_cast<int>(generator_images.size()) != presentation.rank()) {
    throw std::invalid_argument("quotient '" + name +
                                "': one image per generator required");
  }
  int degree = 0;
  if (!generator_images.empty()) {
    degree = generator_images.front().degree();
    for (const Permutation& p : generator_images) {
      if (p.degree() != degree) {
        throw std::invalid_argument("quotient '" + name + "': images must share a degree");
      }
    }
  }
  if (const auto failing = first_failing_relator(presentation, generator_images)) {
    throw parse_error("quotient '" + name + "': relator '" + *failing +
                      "' does not map to the identity");
  }
  return FiniteQuotient{std::move(name), degree, std::move(generator_images),
                        std::move(presentation)};
}

inline Permutation evaluate(const Word& w, const FiniteQuotient& q) {
  if (w.rank() != q.presentation.rank()) {
    throw std::invalid_argument("evaluate: word rank does not match quotient");
  }
  return evaluate_word(w, q.generator_images);
}

/// Image of a generating tuple: one permutation per entry.
struct TupleImage {
  std::vector<Permutation> elements;

  int arity() const { return static_cast<int>(elements.size()); }
  int degree() const { return elements.empty() ? 0 : elements.front().degree(); }

  friend bool operator==(const TupleImage&, const TupleImage&) = default;
};

inline TupleImage image_of(const GeneratingTuple& t, const FiniteQuotient& q) {
  TupleImage image;
  image.elements.reserve(static_cast<std::size_t>(t.arity()));
  for (const Word& w : t.words()) image.elements.push_back(evaluate(w, q));
  return image;
}

inline TupleImage apply_move(const TupleImage& t, const NielsenMove& m) {
  const int n = t.arity();
  auto check = [n](int idx) {
    if (idx < 0 || idx >= n) {
      throw std::invalid_argument("move index out of range for tuple image");
    }
  };
  std::vector<Permutation> elements = t.elements;
  switch (m.kind) {
    case NielsenMove::Kind::Swap:
      check(m.i);
      check(m.j);
      std::swap(elements[static_cast<std::size_t>(m.i)],
                elements[static_cast<std::size_t>(m.j)]);
      break;
    case NielsenMove::Kind::Cycle:
      if (n < 1) throw std::invalid_argument("cycle: empty tuple image");
      std::rotate(elements.begin(), elements.begin() + 1, elements.end());
      break;
    case NielsenMove::Kind::Invert:
      check(m.i);
      elements[static_cast<std::size_t>(m.i)] =
          elements[static_cast<std::size_t>(m.i)].inverse();
      break;
    case NielsenMove::Kind::RightMultiply:
      check(m.i);
      check(m.j);
      elements[static_cast<std::size_t>(m.i)] =
          compose(elements[static_cast<std::size_t>(m.i)],
                  elements[static_cast<std::size_t>(m.j)]);
      break;
  }
  return TupleImage{std::move(elements)};
}

inline TupleImage apply_sequence(const TupleImage& t,
                                 const std::vector<NielsenMove>& moves) {
  TupleImage result = t;
  for (const NielsenMove& m : moves) result = apply_move(result, m);
  return result;
}

/// The generalized move set driving orbit searches: Swap over unordered
/// pairs, Invert everywhere, RightMultiply over ordered pairs. Cyclic
/// permutation is a composite of swaps and is omitted.
inline std::vector<NielsenMove> orbit_move_set(int arity) {
  std::vector<NielsenMove> moves;
  for (int i = 0; i < arity; ++i) {
    for (int j = i + 1; j < arity; ++j) moves.push_back(NielsenMove::swap(i, j));
  }
  for (int i = 0; i < arity; ++i) moves.push_back(NielsenMove::invert(i));
  for (int i = 0; i < arity; ++i) {
    for (int j = 0; j < arity; ++j) {
      if (i != j) moves.push_back(NielsenMove::rmul(i, j));
    }
  }
  return moves;
}

struct OrbitResult {
  /// Lexicographic minimum over the orbit; absent when truncated, so a
  /// truncated search can never pose as a canonical form.
  std::optional<TupleImage> canonical;
  std::size_t size = 0;
  bool truncated = false;
};

enum class OrbitAnswer { Yes, No, Inconclusive };

struct SameOrbitResult {
  OrbitAnswer answer = OrbitAnswer::Inconclusive;
  /// Move log taking the first tuple to the second; present iff Yes.
  std::optional<std::vector<NielsenMove>> witness;
  /// States of the first tuple's orbit seen before answering. Equals the
  /// exact orbit size when the answer is No.
  std::size_t explored = 0;
  bool truncated = false;
};

struct OrbitOptions {
  std::size_t cap = kDefaultOrbitCap;
  unsigned workers = 1;
};

namespace detail {

/// Breadth-first search over Nielsen moves on tuple images.
///
/// Permutations are interned so that states are small id-vectors. The
/// search is level-synchronous: each level's frontier may be expanded by
/// several workers, but candidate states are merged back in slice order,
/// so visit order, parents, sizes and canonical forms are bit-identical
/// for every worker count.
class OrbitSearch {
 public:
  OrbitSearch(const TupleImage& start, const TupleImage* target,
              const OrbitOptions& opts)
      : cap_(std::max<std::size_t>(opts.cap, 1)),
        workers_(std::max(1u, opts.workers)),
        track_parents_(target != nullptr),
        moves_(orbit_move_set(start.arity())) {
    if (target != nullptr) {
      target_ = target->elements;
    }
    std::vector<std::int32_t> state;
    state.reserve(start.elements.size());
    for (const Permutation& p : start.elements) state.push_back(intern(p));
    insert_state(std::move(state), -1, NielsenMove::cycle());
  }

  /// Runs to closure, truncation, or (in target mode) first hit.
  void run() {
    std::size_t level_begin = 0;
    while (level_begin < states_.size() && !done_) {
      const std::size_t level_end = states_.size();
      expand_level(level_begin, level_end);
      level_begin = level_end;
    }
  }

  bool found_target() const { return found_target_; }
  bool truncated() const { return truncated_; }
  std::size_t visited() const { return states_.size(); }

  TupleImage state_at(std::size_t id) const {
    TupleImage image;
    image.elements.reserve(states_[id].size());
    for (std::int32_t pid : states_[id]) {
      image.elements.push_back(perms_[static_cast<std::size_t>(pid)]);
    }
    return image;
  }

  TupleImage lexicographic_minimum() const {
    std::size_t best = 0;
    for (std::size_t id = 1; id < states_.size(); ++id) {
      if (state_less(states_[id], states_[best])) best = id;
    }
    return state_at(best);
  }

  std::vector<NielsenMove> witness_to_target() const {
    std::vector<NielsenMove> moves;
    std::int32_t at = target_state_;
    while (at > 0) {
      moves.push_back(parents_[static_cast<std::size_t>(at)].second);
      at = parents_[static_cast<std::size_t>(at)].first;
    }
    std::reverse(moves.begin(), moves.end());
    return moves;
  }

 private:
  struct Candidate {
    std::int32_t parent;
    NielsenMove move;
    std::vector<Permutation> elements;
  };

  int intern(const Permutation& p) {
    const auto [it, inserted] = perm_ids_.emplace(p, static_cast<int>(perms_.size()));
    if (inserted) {
      perms_.push_back(p);
      inverse_ids_.push_back(-1);
    }
    return it->second;
  }

  int inverse_id(int id) {
    // intern may grow inverse_ids_, so never hold a reference across it.
    if (inverse_ids_[static_cast<std::size_t>(id)] < 0) {
      const int inv = intern(perms_[static_cast<std::size_t>(id)].inverse());
      inverse_ids_[static_cast<std::size_t>(id)] = inv;
    }
    return inverse_ids_[static_cast<std::size_t>(id)];
  }

  bool state_less(const std::vector<std::int32_t>& a,
                  const std::vector<std::int32_t>& b) const {
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] == b[k]) continue;
      return perms_[static_cast<std::size_t>(a[k])] <
             perms_[static_cast<std::size_t>(b[k])];
    }
    return false;
  }

  bool matches_target(const std::vector<std::int32_t>& state) const {
    if (!track_parents_) return false;
    for (std::size_t k = 0; k < state.size(); ++k) {
      if (perms_[static_cast<std::size_t>(state[k])] != target_[k]) return false;
    }
    return true;
  }

  /// Deduplicating insert; sets the done flags on cap overflow or target
  /// hit. Returns false when the search must stop.
  bool insert_state(std::vector<std::int32_t> state, std::int32_t parent,
                    const NielsenMove& via) {
    const auto [it, inserted] =
        state_ids_.emplace(std::move(state), static_cast<std::int32_t>(states_.size()));
    if (!inserted) return true;
    if (states_.size() >= cap_) {
      state_ids_.erase(it);
      truncated_ = true;
      done_ = true;
      return false;
    }
    states_.push_back(it->first);
    if (track_parents_) parents_.emplace_back(parent, via);
    if (matches_target(it->first)) {
      found_target_ = true;
      target_state_ = it->second;
      done_ = true;
      return false;
    }
    return true;
  }

  std::vector<std::int32_t> child_of(const std::vector<std::int32_t>& state,
                                     const NielsenMove& m) {
    std::vector<std::int32_t> child = state;
    switch (m.kind) {
      case NielsenMove::Kind::Swap:
        std::swap(child[static_cast<std::size_t>(m.i)],
                  child[static_cast<std::size_t>(m.j)]);
        break;
      case NielsenMove::Kind::Invert:
        child[static_cast<std::size_t>(m.i)] =
            inverse_id(child[static_cast<std::size_t>(m.i)]);
        break;
      case NielsenMove::Kind::RightMultiply:
        child[static_cast<std::size_t>(m.i)] = intern(
            compose(perms_[static_cast<std::size_t>(child[static_cast<std::size_t>(m.i)])],
                    perms_[static_cast<std::size_t>(child[static_cast<std::size_t>(m.j)])]));
        break;
      case NielsenMove::Kind::Cycle:
        std::rotate(child.begin(), child.begin() + 1, child.end());
        break;
    }
    return child;
  }

  void expand_level(std::size_t begin, std::size_t end) {
    if (workers_ == 1) {
      for (std::size_t id = begin; id < end && !done_; ++id) {
        for (const NielsenMove& m : moves_) {
          if (!insert_state(child_of(states_[id], m),
                            static_cast<std::int32_t>(id), m)) {
            return;
          }
        }
      }
      return;
    }

    // Parallel expansion: workers compose full permutation states from a
    // read-only snapshot; interning and deduplication stay sequential in
    // the merge, in slice order, so discovery order matches workers == 1.
    // All futures are drained before any shared structure is touched.
    const std::size_t count = end - begin;
    const std::size_t slices = std::min<std::size_t>(workers_, count);
    std::vector<std::future<std::vector<Candidate>>> futures;
    futures.reserve(slices);
    for (std::size_t s = 0; s < slices; ++s) {
      const std::size_t lo = begin + count * s / slices;
      const std::size_t hi = begin + count * (s + 1) / slices;
      futures.push_back(std::async(std::launch::async, [this, lo, hi] {
        std::vector<Candidate> out;
        out.reserve((hi - lo) * moves_.size());
        for (std::size_t id = lo; id < hi; ++id) {
          TupleImage current;
          current.elements.reserve(states_[id].size());
          for (std::int32_t pid : states_[id]) {
            current.elements.push_back(perms_[static_cast<std::size_t>(pid)]);
          }
          for (const NielsenMove& m : moves_) {
            out.push_back(Candidate{static_cast<std::int32_t>(id), m,
                                    nielsen::apply_move(current, m).elements});
          }
        }
        return out;
      }));
    }
    std::vector<std::vector<Candidate>> batches;
    batches.reserve(slices);
    for (auto& future : futures) batches.push_back(future.get());
    for (auto& batch : batches) {
      for (Candidate& c : batch) {
        if (done_) return;
        std::vector<std::int32_t> state;
        state.reserve(c.elements.size());
        for (const Permutation& p : c.elements) state.push_back(intern(p));
        if (!insert_state(std::move(state), c.parent, c.move)) return;
      }
    }
  }

  std::size_t cap_;
  unsigned workers_;
  bool track_parents_;
  std::vector<NielsenMove> moves_;
  std::vector<Permutation> target_;

  std::vector<Permutation> perms_;
  std::unordered_map<Permutation, int, PermutationHash> perm_ids_;
  std::vector<int> inverse_ids_;

  std::vector<std::vector<std::int32_t>> states_;
  std::unordered_map<std::vector<std::int32_t>, std::int32_t,
                     decltype([](const std::vector<std::int32_t>& v) {
                       return hash_range(v);
                     })>
      state_ids_;
  std::vector<std::pair<std::int32_t, NielsenMove>> parents_;

  bool done_ = false;
  bool truncated_ = false;
  bool found_target_ = false;
  std::int32_t target_state_ = -1;
};

}  // namespace detail

/// Exhaustive BFS over the Nielsen orbit of a tuple image. When the
/// orbit closes under the cap, the result carries the exact size and the
/// lexicographically minimal member as a canonical form.
inline OrbitResult nielsen_orbit(const TupleImage& t, std::size_t cap,
                                 unsigned workers = 1) {
  if (cap < 1) throw std::invalid_argument("orbit cap must be >= 1");
  detail::OrbitSearch search(t, nullptr, OrbitOptions{cap, workers});
  search.run();
  OrbitResult result;
  result.size = search.visited();
  result.truncated = search.truncated();
  if (!result.truncated) result.canonical = search.lexicographic_minimum();
  return result;
}

inline OrbitResult nielsen_orbit(const TupleImage& t, const OrbitOptions& opts) {
  return nielsen_orbit(t, opts.cap, opts.workers);
}

/// Sound orbit membership: Yes carries a replayable witness; No is
/// answered only from a fully enumerated orbit; a truncated search
/// without a hit is Inconclusive and claims nothing.
inline SameOrbitResult same_orbit(const TupleImage& a, const TupleImage& b,
                                  std::size_t cap, unsigned workers = 1) {
  if (cap < 1) throw std::invalid_argument("orbit cap must be >= 1");
  if (a.arity() != b.arity()) {
    throw std::invalid_argument("same_orbit: arity mismatch");
  }
  if (a.degree() != b.degree()) {
    throw std::invalid_argument("same_orbit: degree mismatch");
  }
  detail::OrbitSearch search(a, &b, OrbitOptions{cap, workers});
  search.run();
  SameOrbitResult result;
  result.explored = search.visited();
  if (search.found_target()) {
    result.answer = OrbitAnswer::Yes;
    result.witness = search.witness_to_target();
  } else if (search.truncated()) {
    result.answer = OrbitAnswer::Inconclusive;
    result.truncated = true;
  } else {
    result.answer = OrbitAnswer::No;
  }
  return result;
}

inline SameOrbitResult same_orbit(const TupleImage& a, const TupleImage& b,
                                  const OrbitOptions& opts) {
  return same_orbit(a, b, opts.cap, opts.workers);
}

/// Order of the subgroup generated by the tuple entries (closure under
/// composition; inverses arrive for free in a finite group).
inline std::size_t generated_subgroup_order(const TupleImage& t) {
  if (t.elements.empty()) {
    throw std::invalid_argument("generated_subgroup_order: empty tuple");
  }
  std::set<Permutation> elements;
  std::vector<Permutation> queue;
  for (const Permutation& p : t.elements) {
    if (elements.insert(p).second) queue.push_back(p);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Permutation current = queue[head];
    for (const Permutation& g : t.elements) {
      Permutation next = compose(current, g);
      if (elements.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return elements.size();
}

/// Closure of a generator list into a sorted element list.
inline std::vector<Permutation> group_closure(const std::vector<Permutation>& generators) {
  if (generators.empty()) {
    throw std::invalid_argument("group_closure: at least one generator required");
  }
  const int degree = generators.front().degree();
  for (const Permutation& g : generators) {
    if (g.degree() != degree) {
      throw std::invalid_argument("group_closure: generators must share a degree");
    }
  }
  std::set<Permutation> elements;
  std::vector<Permutation> queue;
  queue.push_back(Permutation::identity(degree));
  elements.insert(queue.front());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Permutation current = queue[head];
    for (const Permutation& g : generators) {
      Permutation next = compose(current, g);
      if (elements.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return std::vector<Permutation>(elements.begin(), elements.end());
}

/// Permutation order via the lcm of cycle lengths.
inline std::size_t permutation_order(const Permutation& p) {
  std::size_t order = 1;
  std::vector<bool> seen(static_cast<std::size_t>(p.degree()), false);
  for (int start = 0; start < p.degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::size_t length = 0;
    int x = start;
    while (!seen[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = true;
      ++length;
      x = p.apply(x);
    }
    order = std::lcm(order, length);
  }
  return order;
}

/// Ground-truth census of generating n-tuples: exhaustive enumeration
/// with a union-find partition under single Nielsen moves. Serves as the
/// independent oracle for the BFS canonical forms.
struct TupleCensus {
  std::vector<Permutation> elements;  // carrier group, sorted
  int arity = 0;
  std::size_t group_order = 0;
  std::size_t total_tuples = 0;
  std::size_t generating_count = 0;
  /// Class sizes in first-seen order over ascending tuple codes.
  std::vector<std::size_t> class_sizes;
  /// Tuple code -> class id, or -1 for tuples that do not generate.
  std::vector<std::int32_t> class_of;

  std::size_t code_of(const std::vector<int>& indices) const {
    std::size_t code = 0;
    for (std::size_t k = indices.size(); k-- > 0;) {
      code = code * group_order + static_cast<std::size_t>(indices[k]);
    }
    return code;
  }

  TupleImage tuple_at(std::size_t code) const {
    TupleImage image;
    image.elements.reserve(static_cast<std::size_t>(arity));
    for (int k = 0; k < arity; ++k) {
      image.elements.push_back(elements[code % group_order]);
      code /= group_order;
    }
    return image;
  }
};

inline TupleCensus enumerate_generating_tuples(
    const std::vector<Permutation>& carrier_generators, int arity,
    std::size_t budget = kDefaultCensusBudget) {
  if (arity < 1) throw std::invalid_argument("census arity must be >= 1");

  TupleCensus census;
  census.elements = group_closure(carrier_generators);
  census.arity = arity;
  census.group_order = census.elements.size();

  std::size_t total = 1;
  for (int k = 0; k < arity; ++k) {
    if (total > budget / census.group_order) {
      throw budget_error("census budget exceeded: |G|^n > " + std::to_string(budget));
    }
    total *= census.group_order;
  }
  if (total > budget) {
    throw budget_error("census budget exceeded: |G|^n > " + std::to_string(budget));
  }
  census.total_tuples = total;

  const std::size_t order = census.group_order;
  std::map<Permutation, int> element_index;
  for (std::size_t i = 0; i < order; ++i) {
    element_index.emplace(census.elements[i], static_cast<int>(i));
  }
  std::vector<int> inverse_index(order);
  for (std::size_t i = 0; i < order; ++i) {
    inverse_index[i] = element_index.at(census.elements[i].inverse());
  }

  // Multiplication table; only needed once RightMultiply moves exist.
  std::vector<std::int32_t> table;
  if (arity >= 2) {
    if (order > 4000) {
      throw budget_error("census multiplication table too large for group of order " +
                         std::to_string(order));
    }
    table.resize(order * order);
    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = 0; b < order; ++b) {
        table[a * order + b] =
            element_index.at(compose(census.elements[a], census.elements[b]));
      }
    }
  }

  UnionFind uf(total);
  std::vector<int> digits(static_cast<std::size_t>(arity));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t rest = code;
    for (int k = 0; k < arity; ++k) {
      digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % order);
      rest /= order;
    }
    // invert moves
    std::size_t scale = 1;
    for (int i = 0; i < arity; ++i) {
      const int d = digits[static_cast<std::size_t>(i)];
      const std::size_t neighbor =
          code + scale * (static_cast<std::size_t>(inverse_index[static_cast<std::size_t>(d)]) -
                          static_cast<std::size_t>(d));
      uf.unite(code, neighbor);
      scale *= order;
    }
    if (arity >= 2) {
      // swap moves
      for (int i = 0; i < arity; ++i) {
        for (int j = i + 1; j < arity; ++j) {
          std::vector<int> moved = digits;
          std::swap(moved[static_cast<std::size_t>(i)], moved[static_cast<std::size_t>(j)]);
          uf.unite(code, census.code_of(moved));
        }
      }
      // right-multiply moves
      for (int i = 0; i < arity; ++i) {
        for (int j = 0; j < arity; ++j) {
          if (i == j) continue;
          std::vector<int> moved = digits;
          moved[static_cast<std::size_t>(i)] = table[static_cast<std::size_t>(
              digits[static_cast<std::size_t>(i)] * static_cast<long>(order) +
              digits[static_cast<std::size_t>(j)])];
          uf.unite(code, census.code_of(moved));
        }
      }
    }
  }

  // Determine which classes generate the whole carrier, once per root.
  std::unordered_map<std::size_t, bool> root_generates;
  auto representative_generates = [&](std::size_t code) {
    std::size_t rest = code;
    if (arity == 1) {
      return permutation_order(census.elements[rest % order]) == order;
    }
    std::vector<bool> in_closure(order, false);
    std::vector<int> queue;
    std::vector<int> seeds;
    for (int k = 0; k < arity; ++k) {
      const int d = static_cast<int>(rest % order);
      rest /= order;
      seeds.push_back(d);
      if (!in_closure[static_cast<std::size_t>(d)]) {
        in_closure[static_cast<std::size_t>(d)] = true;
        queue.push_back(d);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (int d : seeds) {
        const int next = table[static_cast<std::size_t>(queue[head]) * order +
                               static_cast<std::size_t>(d)];
        if (!in_closure[static_cast<std::size_t>(next)]) {
          in_closure[static_cast<std::size_t>(next)] = true;
          queue.push_back(next);
        }
      }
    }
    return queue.size() == order;
  };

  census.class_of.assign(total, -1);
  std::unordered_map<std::size_t, std::int32_t> class_ids;
  for (std::size_t code = 0; code < total; ++code) {
    const std::size_t root = uf.find(code);
    auto generates = root_generates.find(root);
    if (generates == root_generates.end()) {
      generates = root_generates.emplace(root, representative_generates(code)).first;
    }
    if (!generates->second) continue;
    auto [it, inserted] = class_ids.emplace(root, static_cast<std::int32_t>(class_ids.size()));
    if (inserted) census.class_sizes.push_back(0);
    census.class_of[code] = it->second;
    ++census.class_sizes[static_cast<std::size_t>(it->second)];
    ++census.generating_count;
  }
  return census;
}

inline TupleCensus enumerate_generating_tuples(const FiniteQuotient& q, int arity,
                                               std::size_t budget = kDefaultCensusBudget) {
  return enumerate_generating_tuples(q.generator_images, arity, budget);
}

// --- the distinguishing engine ---------------------------------------------------

struct QuotientOutcome {
  std::string quotient;
  OrbitAnswer answer = OrbitAnswer::Inconclusive;
  std::size_t explored = 0;
  bool truncated = false;
};

struct DistinguishResult {
  bool distinct = false;
  /// Certifying quotient when distinct: the images' orbits were fully
  /// enumerated and disjoint there.
  std::string certificate;
  std::size_t certificate_orbit = 0;
  std::vector<QuotientOutcome> outcomes;
};

/// Sound Nielsen-class separation: Distinct exactly when some quotient's
/// fully enumerated orbit of tA's image misses tB's image. Equivalence
/// is never claimed.
inline DistinguishResult distinguish_via_quotients(
    const Presentation& p, const GeneratingTuple& ta, const GeneratingTuple& tb,
    const std::vector<FiniteQuotient>& quotients, std::size_t cap,
    unsigned workers = 1) {
  if (ta.arity() != tb.arity()) {
    throw std::invalid_argument("distinguish: tuples must have equal arity");
  }
  if (ta.rank() != p.rank() || tb.rank() != p.rank()) {
    throw std::invalid_argument("distinguish: tuple rank does not match presentation");
  }
  DistinguishResult result;
  for (const FiniteQuotient& q : quotients) {
    if (q.presentation != p) {
      throw std::invalid_argument("distinguish: quotient '" + q.name +
                                  "' was built for a different presentation");
    }
    const TupleImage image_a = image_of(ta, q);
    const TupleImage image_b = image_of(tb, q);
    const SameOrbitResult same = same_orbit(image_a, image_b, cap, workers);
    result.outcomes.push_back(
        QuotientOutcome{q.name, same.answer, same.explored, same.truncated});
    if (same.answer == OrbitAnswer::No) {
      result.distinct = true;
      result.certificate = q.name;
      result.certificate_orbit = same.explored;
      return result;
    }
  }
  return result;
}

// --- quotient file format ---------------------------------------------------------
//
//   degree: 10
//   image x: (0 1 2 3 4)
//   image y: (5 6 7 8 9)
//
// One image line per presentation generator; the identity is `()`. The
// homomorphism is validated on load and refused with the failing relator
// named.

inline FiniteQuotient parse_quotient(std::istream& in, const Presentation& p,
                                     const std::string& name) {
  std::optional<int> degree;
  std::map<std::string, std::string> image_texts;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "degree:") {
      if (degree) throw parse_error("quotient '" + name + "': duplicate degree line");
      int d = 0;
      if (!(ls >> d) || d < 0) {
        throw parse_error("quotient '" + name + "': bad degree");
      }
      degree = d;
    } else if (head == "image") {
      std::string gen;
      if (!(ls >> gen) || gen.empty() || gen.back() != ':') {
        throw parse_error("quotient '" + name + "': image lines read 'image <gen>: <cycles>'");
      }
      gen.pop_back();
      std::string rest;
      std::getline(ls, rest);
      if (!image_texts.emplace(gen, rest).second) {
        throw parse_error("quotient '" + name + "': duplicate image for '" + gen + "'");
      }
    } else {
      throw parse_error("quotient '" + name + "': unexpected line '" + line + "'");
    }
  }
  if (!degree) throw parse_error("quotient '" + name + "': missing degree line");
  std::vector<Permutation> images;
  for (const std::string& gen : p.generator_names()) {
    const auto it = image_texts.find(gen);
    if (it == image_texts.end()) {
      throw parse_error("quotient '" + name + "': missing image for generator '" + gen + "'");
    }
    images.push_back(parse_cycles(it->second, *degree));
  }
  if (image_texts.size() != p.generator_names().size()) {
    for (const auto& [gen, text] : image_texts) {
      const auto& names = p.generator_names();
      if (std::find(names.begin(), names.end(), gen) == names.end()) {
        throw parse_error("quotient '" + name + "': image for unknown generator '" + gen + "'");
      }
    }
  }
  return make_quotient(name, p, std::move(images));
}

inline std::string format_quotient(const FiniteQuotient& q) {
  std::string out = "degree: " + std::to_string(q.degree) + '\n';
  for (std::size_t i = 0; i < q.generator_images.size(); ++i) {
    out += "image " + q.presentation.generator_names()[i] + ": " +
           format_cycles(q.generator_images[i]) + '\n';
  }
  return out;
}

}  // namespace nielsen

#endif  // NIELSEN_QUOTIENT_HPP
