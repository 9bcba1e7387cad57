#include "bargmann/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "bargmann/invariants.hpp"

namespace bargmann {

namespace {

constexpr double kGramPsdFloor = -1e-8;

void require_same_length(const StateTuple& psi, const StateTuple& phi) {
  if (psi.size() != phi.size()) {
    throw Error(Errc::invalid_pair, "tuples have lengths " + std::to_string(psi.size()) + " and " +
                                        std::to_string(phi.size()));
  }
}

Eigen::MatrixXd overlap_moduli(const GramMatrix& g) { return g.matrix().cwiseAbs(); }

}  // namespace

FrameGraph::FrameGraph(const Eigen::MatrixXd& moduli, double tol)
    : n_(static_cast<std::size_t>(moduli.rows())), adj_(n_ * n_, false) {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j) {
        const auto a = static_cast<Eigen::Index>(i);
        const auto b = static_cast<Eigen::Index>(j);
        adj_[i * n_ + j] = std::max(moduli(a, b), moduli(b, a)) > tol;
      }
}

FrameGraph FrameGraph::of(const StateTuple& tuple, double tol) {
  return FrameGraph(overlap_moduli(gram_matrix(tuple)), tol);
}

std::vector<std::size_t> FrameGraph::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < n_; ++j)
    if (has_edge(i, j)) out.push_back(j);
  return out;
}

std::size_t FrameGraph::edge_count() const noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) count += adj_[i * n_ + j] ? 1 : 0;
  return count;
}

SpanningForest spanning_forest(const FrameGraph& graph) {
  const std::size_t n = graph.size();
  SpanningForest f;
  f.parent.assign(n, n);
  f.depth.assign(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (f.parent[root] != n) continue;
    f.parent[root] = root;
    f.roots.push_back(root);
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : graph.neighbors(v)) {
        if (f.parent[w] != n) continue;
        f.parent[w] = v;
        f.depth[w] = f.depth[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return f;
}

std::vector<std::size_t> SpanningForest::path(std::size_t from, std::size_t to) const {
  std::vector<std::size_t> up;    // from → common ancestor
  std::vector<std::size_t> down;  // to → common ancestor (reversed later)
  std::size_t a = from;
  std::size_t b = to;
  while (depth[a] > depth[b]) {
    up.push_back(a);
    a = parent[a];
  }
  while (depth[b] > depth[a]) {
    down.push_back(b);
    b = parent[b];
  }
  while (a != b) {
    if (parent[a] == a) throw Error(Errc::invalid_index, "vertices lie in different components");
    up.push_back(a);
    down.push_back(b);
    a = parent[a];
    b = parent[b];
  }
  up.push_back(a);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

InvariantOracle InvariantOracle::from_tuple(StateTuple tuple) {
  const std::size_t n = tuple.size();
  return InvariantOracle(n, [t = std::move(tuple)](std::span<const std::size_t> word) {
    return n_product(t, word).value;
  });
}

Complex InvariantOracle::operator()(std::span<const std::size_t> word) {
  for (std::size_t i : word)
    if (i >= n_) throw Error(Errc::invalid_index, "oracle index " + std::to_string(i) + " out of range");
  ++calls_;
  return f_(word);
}

UnitaryEquivalence joint_unitary_equivalent(const StateTuple& psi, const StateTuple& phi, double tol) {
  require_same_length(psi, phi);
  if (!psi.all_pure() || !phi.all_pure()) throw Error(Errc::not_pure_tuple, "unitary equivalence needs pure tuples");
  UnitaryEquivalence out;
  out.gram_distance = max_abs_diff(gram_matrix(psi).matrix(), gram_matrix(phi).matrix());
  out.equivalent = out.gram_distance <= tol;
  if (!out.equivalent || psi.dim() != phi.dim()) return out;

  // Polar factor of B A†: exact on span(Ψ), completed arbitrarily elsewhere.
  const Matrix a = psi.as_columns();
  const Matrix b = phi.as_columns();
  Eigen::JacobiSVD<Matrix> svd(b * a.adjoint(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix u = svd.matrixU() * svd.matrixV().adjoint();
  if (max_abs_diff(u * a, b) <= 10.0 * std::max(tol, 1e-12)) out.witness = std::move(u);
  return out;
}

GramMatrix canonical_gram_from_invariants(InvariantOracle& oracle, double tol) {
  const std::size_t n = oracle.size();
  if (n == 0) throw Error(Errc::invalid_tuple, "oracle over an empty tuple");
  const auto m = static_cast<Eigen::Index>(n);

  Eigen::MatrixXd moduli = Eigen::MatrixXd::Identity(m, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex d = oracle({i, j});
      if (std::abs(d.imag()) > tol || d.real() < -tol || d.real() > 1.0 + tol) {
        throw Error(Errc::inconsistent_oracle, "degree-2 invariant is not a squared overlap");
      }
      const double mod = std::sqrt(std::clamp(d.real(), 0.0, 1.0));
      moduli(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = mod;
      moduli(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = mod;
    }

  const FrameGraph graph(moduli);
  const SpanningForest forest = spanning_forest(graph);
  Matrix g = Matrix::Identity(m, m);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t p = forest.parent[v];
    if (p == v) continue;
    const auto a = static_cast<Eigen::Index>(v);
    const auto b = static_cast<Eigen::Index>(p);
    g(a, b) = g(b, a) = moduli(a, b);
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!graph.has_edge(i, j) || forest.is_tree_edge(i, j)) continue;
      // Word j → … → i along the tree; closing it with ⟨ψ_i|ψ_j⟩ gives the cycle.
      const std::vector<std::size_t> word = forest.path(j, i);
      double tree_product = 1.0;
      for (std::size_t k = 0; k + 1 < word.size(); ++k)
        tree_product *= moduli(static_cast<Eigen::Index>(word[k]), static_cast<Eigen::Index>(word[k + 1]));
      const Complex cycle = oracle(word);
      const double mod = moduli(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      const Complex phase = cycle / (tree_product * mod);
      if (std::abs(std::abs(phase) - 1.0) > tol) {
        throw Error(Errc::inconsistent_oracle, "cycle invariant through edge (" + std::to_string(i) + ", " +
                                                   std::to_string(j) + ") has modulus off by " +
                                                   std::to_string(std::abs(std::abs(phase) - 1.0)));
      }
      const Complex entry = mod * phase / std::abs(phase);
      g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry;
      g(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(entry);
    }

  const double lowest = hermitian_eigenvalues(g)(0);
  if (lowest < kGramPsdFloor) {
    throw Error(Errc::not_realizable, "canonical Gram has eigenvalue " + std::to_string(lowest));
  }
  return GramMatrix(std::move(g));
}

Reconstruction reconstruct_tuple(InvariantOracle& oracle, double tol) {
  oracle.reset_calls();
  GramMatrix g = canonical_gram_from_invariants(oracle, tol);
  const std::size_t calls = oracle.calls();
  const FrameGraph graph(overlap_moduli(g));
  const bool connected = spanning_forest(graph).roots.size() == 1;
  StateTuple t = factor_gram(g, 1e-10);
  return Reconstruction{std::move(t), std::move(g), calls, connected};
}

bool joint_projective_equivalent(const StateTuple& psi, const StateTuple& phi, double tol) {
  require_same_length(psi, phi);
  if (!psi.all_pure() || !phi.all_pure()) throw Error(Errc::not_pure_tuple, "projective equivalence needs pure tuples");
  const GramMatrix gp = gram_matrix(psi);
  const GramMatrix gf = gram_matrix(phi);
  const FrameGraph graph(overlap_moduli(gp));
  if (!(graph == FrameGraph(overlap_moduli(gf)))) return false;

  const std::size_t n = psi.size();
  if (graph.complete()) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (std::abs(std::norm(gp(i, j)) - std::norm(gf(i, j))) > tol) return false;
        for (std::size_t k = j + 1; k < n; ++k) {
          const Complex a = gp(i, j) * gp(j, k) * gp(k, i);
          const Complex b = gf(i, j) * gf(j, k) * gf(k, i);
          if (std::abs(a - b) > tol) return false;
        }
      }
    return true;
  }

  InvariantOracle op = InvariantOracle::from_tuple(psi);
  InvariantOracle of = InvariantOracle::from_tuple(phi);
  try {
    const GramMatrix cp = canonical_gram_from_invariants(op);
    const GramMatrix cf = canonical_gram_from_invariants(of);
    return max_abs_diff(cp.matrix(), cf.matrix()) <= tol;
  } catch (const Error& e) {
    if (e.code() == Errc::not_realizable || e.code() == Errc::inconsistent_oracle) return false;
    throw;
  }
}

std::vector<std::vector<std::size_t>> necklace_words(std::size_t n, std::size_t max_degree) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t len = 1; len <= max_degree; ++len) {
    std::vector<std::size_t> word(len, 0);
    while (true) {
      bool least = true;
      std::vector<std::size_t> reversed(word.rbegin(), word.rend());
      for (std::size_t r = 0; r < len && least; ++r) {
        std::vector<std::size_t> rot(len);
        std::vector<std::size_t> rev_rot(len);
        for (std::size_t k = 0; k < len; ++k) {
          rot[k] = word[(k + r) % len];
          rev_rot[k] = reversed[(k + r) % len];
        }
        if (rot < word || rev_rot < word) least = false;
      }
      if (least) out.push_back(word);

      std::size_t pos = len;
      while (pos > 0 && word[pos - 1] + 1 == n) word[--pos] = 0;
      if (pos == 0) break;
      ++word[pos - 1];
    }
  }
  return out;
}

Complex word_invariant(const std::vector<Matrix>& densities, std::span<const std::size_t> word) {
  Matrix product = densities[word[0]];
  for (std::size_t k = 1; k < word.size(); ++k) product = product * densities[word[k]];
  return product.trace();
}

MixedOrbitResult mixed_orbit_equal(const StateTuple& psi, const StateTuple& phi, const MixedOrbitOptions& options) {
  require_same_length(psi, phi);
  if (psi.dim() != phi.dim()) throw Error(Errc::invalid_pair, "tuples live in different dimensions");
  const std::size_t n = psi.size();
  const auto d = static_cast<std::size_t>(psi.dim());
  MixedOrbitResult out;
  out.degree = options.max_degree == 0 ? d * d : options.max_degree;

  std::size_t total = 0;
  std::size_t power = 1;
  for (std::size_t k = 1; k <= out.degree; ++k) {
    if (power > options.word_cap / std::max<std::size_t>(n, 1)) {
      throw Error(Errc::budget_exceeded, "word enumeration exceeds the cap of " + std::to_string(options.word_cap));
    }
    power *= n;
    total += power;
    if (total > options.word_cap) {
      throw Error(Errc::budget_exceeded, "word enumeration exceeds the cap of " + std::to_string(options.word_cap));
    }
  }

  std::vector<Matrix> rp;
  std::vector<Matrix> rf;
  for (std::size_t i = 0; i < n; ++i) {
    rp.push_back(psi[i].density());
    rf.push_back(phi[i].density());
  }
  const auto words = necklace_words(n, out.degree);
  std::vector<double> deviation(words.size());

#pragma omp parallel for schedule(static)
  for (std::size_t w = 0; w < words.size(); ++w) {
    deviation[w] = std::abs(word_invariant(rp, words[w]) - word_invariant(rf, words[w]));
  }

  out.words_compared = words.size();
  for (std::size_t w = 0; w < words.size(); ++w) {
    out.max_deviation = std::max(out.max_deviation, deviation[w]);
    if (out.first_mismatch.empty() && deviation[w] > options.tol) out.first_mismatch = words[w];
  }
  out.equal = out.first_mismatch.empty();
  return out;
}

}  // namespace bargmann
