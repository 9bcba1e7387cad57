#pragma once

// Joint (projective) unitary equivalence of tuples and reconstruction of a
// tuple, up to gauge and a global unitary, from its invariants.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "bargmann/linalg.hpp"

namespace bargmann {

/// Overlap moduli at or below this count as zero when building frame graphs.
inline constexpr double kFrameEdgeTol = 1e-8;

class FrameGraph {
 public:
  /// Edges where moduli(i, j) > tol, i ≠ j.
  FrameGraph(const Eigen::MatrixXd& moduli, double tol = kFrameEdgeTol);
  static FrameGraph of(const StateTuple& tuple, double tol = kFrameEdgeTol);

  std::size_t size() const noexcept { return n_; }
  bool has_edge(std::size_t i, std::size_t j) const { return i != j && adj_[i * n_ + j]; }
  std::vector<std::size_t> neighbors(std::size_t i) const;  // ascending
  std::size_t edge_count() const noexcept;
  bool complete() const noexcept { return edge_count() == n_ * (n_ - 1) / 2; }
  bool operator==(const FrameGraph& other) const { return n_ == other.n_ && adj_ == other.adj_; }

 private:
  std::size_t n_;
  std::vector<bool> adj_;
};

/// BFS forest: each component rooted at its lowest index, children visited
/// in index order.
struct SpanningForest {
  std::vector<std::size_t> parent;  // parent[root] == root
  std::vector<std::size_t> depth;
  std::vector<std::size_t> roots;

  bool is_tree_edge(std::size_t i, std::size_t j) const {
    return (parent[i] == j && i != j) || (parent[j] == i && i != j);
  }
  /// Vertices from `from` to `to` along the tree (both included).
  std::vector<std::size_t> path(std::size_t from, std::size_t to) const;
};

SpanningForest spanning_forest(const FrameGraph& graph);

/// Source of invariants Δ_w for index words w (0-based). Counts every call.
class InvariantOracle {
 public:
  using Function = std::function<Complex(std::span<const std::size_t>)>;

  InvariantOracle(std::size_t n, Function f) : n_(n), f_(std::move(f)) {}
  static InvariantOracle from_tuple(StateTuple tuple);

  std::size_t size() const noexcept { return n_; }
  std::size_t calls() const noexcept { return calls_; }
  void reset_calls() noexcept { calls_ = 0; }

  Complex operator()(std::span<const std::size_t> word);
  Complex operator()(std::initializer_list<std::size_t> word) {
    return (*this)(std::span<const std::size_t>(word.begin(), word.size()));
  }

 private:
  std::size_t n_;
  Function f_;
  std::size_t calls_ = 0;
};

struct UnitaryEquivalence {
  bool equivalent = false;
  double gram_distance = 0.0;     // ‖G(Ψ) − G(Φ)‖_max
  std::optional<Matrix> witness;  // U with UΨ ≈ Φ when equivalent and dims match
};

UnitaryEquivalence joint_unitary_equivalent(const StateTuple& psi, const StateTuple& phi, double tol);

/// Equivalence up to a global unitary and one phase per member.
bool joint_projective_equivalent(const StateTuple& psi, const StateTuple& phi, double tol);

/// Gram matrix in the canonical gauge (tree entries positive real) built
/// from degree-2 invariants and one cycle invariant per non-tree edge.
/// Throws inconsistent_oracle or not_realizable.
GramMatrix canonical_gram_from_invariants(InvariantOracle& oracle, double tol = 1e-6);

struct Reconstruction {
  StateTuple tuple;
  GramMatrix gram;
  std::size_t oracle_calls;
  bool connected;
};

Reconstruction reconstruct_tuple(InvariantOracle& oracle, double tol = 1e-6);

/// Words of length 1..max_degree over {0..n−1} that are lexicographically
/// least among their rotations and the rotations of their reversal.
std::vector<std::vector<std::size_t>> necklace_words(std::size_t n, std::size_t max_degree);

struct MixedOrbitOptions {
  std::size_t max_degree = 0;        // 0 means d²
  std::size_t word_cap = 2'000'000;  // cap on Σ_k N^k words enumerated
  double tol = 1e-8;
};

struct MixedOrbitResult {
  bool equal = false;
  std::size_t degree = 0;
  std::size_t words_compared = 0;
  double max_deviation = 0.0;
  std::vector<std::size_t> first_mismatch;  // empty when equal
};

/// Compares Δ_w(Ψ) and Δ_w(Φ) over necklace words up to the degree budget.
/// Word evaluation runs in parallel; the first mismatch reported is the
/// lowest one in enumeration order.
MixedOrbitResult mixed_orbit_equal(const StateTuple& psi, const StateTuple& phi, const MixedOrbitOptions& options = {});

/// Trace of the ordered product of the member densities named by `word`.
Complex word_invariant(const std::vector<Matrix>& densities, std::span<const std::size_t> word);

}  // namespace bargmann
