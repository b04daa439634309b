#pragma once

// Deterministic automata that may merge states: a functional graph (exactly
// one successor per state), its merge-equivalence classes and the permutation
// the dynamics induces on those classes.
//
// Two states are equivalent iff f^k(x) == f^k(y) for some finite k >= 0. Every
// class holds exactly one state that lies on a limit cycle, so the quotient
// has as many classes as there are cycle states and the induced class map is
// a permutation.
//
// All routines are O(n) time and memory and iterative (no recursion), which
// keeps graphs with millions of states cheap.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ontolab/error.hpp"
#include "ontolab/linalg.hpp"

namespace ontolab::info_loss {

using State = std::uint32_t;

/// Largest graph for which dense evolution matrices are built.
inline constexpr std::size_t kMaxDenseStates = 4096;

class FunctionalGraph {
 public:
  FunctionalGraph() = default;

  explicit FunctionalGraph(std::vector<State> successor) : successor_(std::move(successor)) {
    require(!successor_.empty(), ErrorCode::kInvalidParameter, "functional graph needs at least one state");
    require(successor_.size() <= std::numeric_limits<State>::max(), ErrorCode::kInvalidParameter,
            "too many states");
    const auto n = successor_.size();
    for (std::size_t i = 0; i < n; ++i) {
      require(successor_[i] < n, ErrorCode::kIndexOutOfRange,
              "successor of state " + std::to_string(i) + " is " + std::to_string(successor_[i]));
    }
  }

  std::size_t size() const noexcept { return successor_.size(); }
  State operator()(State x) const { return successor_[x]; }
  const std::vector<State>& successors() const noexcept { return successor_; }

  bool is_bijection() const {
    std::vector<char> hit(size(), 0);
    for (auto s : successor_) {
      if (hit[s]) return false;
      hit[s] = 1;
    }
    return true;
  }

 private:
  std::vector<State> successor_;
};

struct Quotient {
  std::vector<std::uint32_t> class_of;         // state -> class id
  std::size_t num_classes = 0;
  std::vector<std::uint32_t> class_successor;  // induced map on classes
  std::vector<State> representative;           // smallest state in each class
};

struct CycleInfo {
  State start = 0;          // smallest state on the cycle
  std::size_t length = 0;
};

struct Census {
  std::vector<CycleInfo> cycles;                 // ordered by start state
  std::size_t on_cycle = 0;
  std::size_t classes = 0;
  std::vector<std::size_t> transient_histogram;  // [d] = states at depth d; d = 0 is on-cycle
};

/// M[mu][nu] = 1 iff successor(nu) == mu. Unitary iff the map is a bijection.
inline ComplexMatrix evolution_matrix(const FunctionalGraph& g) {
  require(g.size() <= kMaxDenseStates, ErrorCode::kInvalidParameter,
          "dense evolution matrix limited to " + std::to_string(kMaxDenseStates) + " states");
  const auto n = static_cast<Eigen::Index>(g.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index nu = 0; nu < n; ++nu) m(g(static_cast<State>(nu)), nu) = 1.0;
  return m;
}

namespace detail {

inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

/// Per-state structure: whether it is on a cycle, its depth, the cycle state it
/// is equivalent to ("aligned" node), and the cycle each state drains into.
struct Structure {
  std::vector<char> on_cycle;
  std::vector<std::uint32_t> depth;
  std::vector<State> aligned;
  std::vector<std::uint32_t> cycle_id;
  std::vector<CycleInfo> cycles;
};

inline Structure analyse(const FunctionalGraph& g) {
  const std::size_t n = g.size();
  Structure st;
  st.on_cycle.assign(n, 1);
  st.depth.assign(n, 0);
  st.aligned.assign(n, 0);
  st.cycle_id.assign(n, kNone);

  // Peel in-degree-zero states; whatever survives lies on a cycle. The peel
  // order lists every transient state before its successor.
  std::vector<std::uint32_t> indegree(n, 0);
  for (std::size_t x = 0; x < n; ++x) ++indegree[g(static_cast<State>(x))];
  std::vector<State> order;
  order.reserve(n);
  for (std::size_t x = 0; x < n; ++x)
    if (indegree[x] == 0) order.push_back(static_cast<State>(x));
  for (std::size_t head = 0; head < order.size(); ++head) {
    const State x = order[head];
    st.on_cycle[x] = 0;
    if (--indegree[g(x)] == 0) order.push_back(g(x));
  }

  // Label cycles in order of their smallest state; record predecessor on cycle.
  std::vector<State> cycle_prev(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    if (!st.on_cycle[x] || st.cycle_id[x] != kNone) continue;
    const auto id = static_cast<std::uint32_t>(st.cycles.size());
    CycleInfo info{static_cast<State>(x), 0};
    State y = static_cast<State>(x);
    do {
      st.cycle_id[y] = id;
      st.aligned[y] = y;
      cycle_prev[g(y)] = y;
      ++info.length;
      y = g(y);
    } while (y != x);
    st.cycles.push_back(info);
  }

  // x ~ c  <=>  f(x) ~ f(c), so aligned(x) is the cycle predecessor of aligned(f(x)).
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const State x = *it;
    const State next = g(x);
    st.depth[x] = st.depth[next] + 1;
    st.aligned[x] = cycle_prev[st.aligned[next]];
    st.cycle_id[x] = st.cycle_id[next];
  }
  return st;
}

}  // namespace detail

/// Merge-equivalence classes. Class ids ascend with the smallest member state.
inline Quotient equivalence_classes(const FunctionalGraph& g) {
  const std::size_t n = g.size();
  const detail::Structure st = detail::analyse(g);

  // Scanning states in increasing order meets each class first at its
  // smallest member, so ids come out ordered by representative.
  std::vector<std::uint32_t> id_of_cycle_node(n, detail::kNone);
  Quotient q;
  q.class_of.resize(n);
  for (std::size_t x = 0; x < n; ++x) {
    const State c = st.aligned[x];
    if (id_of_cycle_node[c] == detail::kNone) {
      id_of_cycle_node[c] = static_cast<std::uint32_t>(q.representative.size());
      q.representative.push_back(static_cast<State>(x));
    }
    q.class_of[x] = id_of_cycle_node[c];
  }
  q.num_classes = q.representative.size();
  q.class_successor.resize(q.num_classes);
  for (std::size_t k = 0; k < q.num_classes; ++k) {
    q.class_successor[k] = q.class_of[g(q.representative[k])];
  }
  return q;
}

/// True when class_successor is a permutation of the class ids.
inline bool is_permutation(const Quotient& q) {
  std::vector<char> hit(q.num_classes, 0);
  for (auto c : q.class_successor) {
    if (c >= q.num_classes || hit[c]) return false;
    hit[c] = 1;
  }
  return true;
}

/// Permutation matrix of the induced class map; unitary for every graph.
inline ComplexMatrix quotient_evolution(const Quotient& q) {
  require(q.num_classes >= 1, ErrorCode::kInvalidParameter, "empty quotient");
  require(q.num_classes <= kMaxDenseStates, ErrorCode::kInvalidParameter,
          "dense quotient matrix limited to " + std::to_string(kMaxDenseStates) + " classes");
  require(is_permutation(q), ErrorCode::kInvalidParameter, "class map is not a permutation");
  const auto n = static_cast<Eigen::Index>(q.num_classes);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(q.class_successor[static_cast<std::size_t>(k)], k) = 1.0;
  return m;
}

inline Census limit_cycle_census(const FunctionalGraph& g) {
  const detail::Structure st = detail::analyse(g);
  Census c;
  c.cycles = st.cycles;
  std::uint32_t max_depth = 0;
  for (auto d : st.depth) max_depth = std::max(max_depth, d);
  c.transient_histogram.assign(static_cast<std::size_t>(max_depth) + 1, 0);
  for (auto d : st.depth) ++c.transient_histogram[d];
  c.on_cycle = c.transient_histogram[0];
  c.classes = c.on_cycle;
  return c;
}

// ---------------------------------------------------------------------------
// Generators

/// Shift-with-merge demonstrator on v-bit states. The low b bits form a
/// boundary register that rotates left (a bijection); the remaining v - b
/// bulk bits shift left, dropping their top bit and taking in the boundary's
/// top bit. After v - b steps the bulk is fixed by the boundary history, so
/// there are 2^b classes among 2^v states: distinguishable states scale with
/// the boundary while the state count scales with the volume.
inline FunctionalGraph shift_with_merge(unsigned v, unsigned b) {
  require(v >= 1 && v <= 24, ErrorCode::kInvalidParameter, "shift-with-merge needs 1 <= v <= 24");
  require(b >= 1 && b <= v, ErrorCode::kInvalidParameter, "shift-with-merge needs 1 <= b <= v");
  const std::uint32_t n = 1u << v;
  const std::uint32_t boundary_mask = (1u << b) - 1u;
  const unsigned bulk_bits = v - b;
  const std::uint32_t bulk_mask = bulk_bits == 0 ? 0u : (1u << bulk_bits) - 1u;
  std::vector<State> succ(n);
  for (std::uint32_t s = 0; s < n; ++s) {
    const std::uint32_t boundary = s & boundary_mask;
    const std::uint32_t bulk = s >> b;
    const std::uint32_t top = (boundary >> (b - 1)) & 1u;
    const std::uint32_t next_boundary = ((boundary << 1) | top) & boundary_mask;
    const std::uint32_t next_bulk = ((bulk << 1) | top) & bulk_mask;
    succ[s] = (next_bulk << b) | next_boundary;
  }
  return FunctionalGraph(std::move(succ));
}

/// Uniform random successor for every state; `next` returns 64 random bits.
template <class Engine>
FunctionalGraph random_graph(std::size_t n, Engine& next) {
  require(n >= 1, ErrorCode::kInvalidParameter, "random graph needs n >= 1");
  std::vector<State> succ(n);
  for (auto& s : succ) {
    // multiply-shift mapping of 64 random bits onto [0, n)
    const auto r = static_cast<unsigned __int128>(next()) * n;
    s = static_cast<State>(r >> 64);
  }
  return FunctionalGraph(std::move(succ));
}

}  // namespace ontolab::info_loss
