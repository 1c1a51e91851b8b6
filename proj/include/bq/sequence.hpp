#pragma once

// The four-term projective sequence of a simple module of period four:
//
//   0 -> S_i -> P_i --d3--> P_i^- --d2--> P_i^+ --d1--> P_i -> S_i -> 0
//
// with P_i^+ = sum of P_{t(a)} over arrows a leaving i and P_i^- = sum of
// P_{s(b)} over arrows b entering i. d1 is the row of outgoing arrows, d3 the
// column of incoming arrows and d2 is left multiplication by a matrix M_i of
// algebra elements whose columns generate ker d1.

#include "bq/algebra.hpp"
#include "bq/module.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <numeric>
#include <random>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bq {

class SequenceError : public std::runtime_error {
 public:
  enum class Kind { PeriodNot4, GeneratorCountMismatch, NoArrowChoice };

  SequenceError(Kind kind, std::string message) : std::runtime_error(std::move(message)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline const char* to_string(SequenceError::Kind k) {
  switch (k) {
    case SequenceError::Kind::PeriodNot4: return "PeriodNot4";
    case SequenceError::Kind::GeneratorCountMismatch: return "GeneratorCountMismatch";
    case SequenceError::Kind::NoArrowChoice: return "NoArrowChoice";
  }
  return "?";
}

/// Replacement of an incoming arrow by another element of e_{s(b)} Lambda e_i.
template <ExactField F>
struct ArrowSubstitution {
  ArrowId arrow;
  AlgebraElement<F> replacement;
};

struct SequenceChecks {
  bool d1_d2_zero = false;   // (alpha beta-bar) M = 0
  bool d2_d3_zero = false;   // M (gamma; gamma*) = 0
  bool exact[6] = {};        // at S_i, P_i, P_i^-, P_i^+, P_i, S_i (left to right)
  bool images_are_syzygies = false;  // im d_k = Omega^k(S_i), k = 1, 2, 3
  bool alternating_sum_zero = false;
  bool dimvec_equal = false;   // p_i^+ = p_i^-
  bool dimvec_strict = false;  // |p-hat_i| > |p_i|

  bool all() const {
    return d1_d2_zero && d2_d3_zero && std::all_of(std::begin(exact), std::end(exact), [](bool b) { return b; }) &&
           images_are_syzygies && alternating_sum_zero && dimvec_equal && dimvec_strict;
  }
};

template <ExactField F>
struct ExactSequenceData {
  VertexId vertex = 0;
  std::vector<ArrowId> out_arrows;  // indexes rows of M and summands of P_i^+
  std::vector<ArrowId> in_arrows;   // indexes columns of M and summands of P_i^-
  std::vector<AlgebraElement<F>> d3;  // entry per incoming arrow (the arrow or its replacement)
  std::vector<std::vector<AlgebraElement<F>>> M;  // M[row][col]
  std::vector<ArrowSubstitution<F>> substitutions;
  std::vector<std::size_t> p;        // dimension vector of P_i
  std::vector<std::size_t> p_plus;   // of P_i^+
  std::vector<std::size_t> p_minus;  // of P_i^-
  std::vector<std::size_t> ranks;    // rank of d1, d2, d3 as linear maps
  SequenceChecks checks;
};

namespace detail {

/// K-linear matrix of left multiplication by a block matrix of elements,
/// from sum_c P_{col_vertex[c]} to sum_r P_{row_vertex[r]}.
template <ExactField F>
Matrix<F> block_left_multiplication(const PresentedAlgebra<F>& A, const std::vector<VertexId>& row_vertex,
                                    const std::vector<VertexId>& col_vertex,
                                    const std::vector<std::vector<AlgebraElement<F>>>& entries) {
  const F& f = A.field();
  std::vector<std::size_t> roff{0}, coff{0};
  for (VertexId v : row_vertex) roff.push_back(roff.back() + A.basis_from(v).size());
  for (VertexId v : col_vertex) coff.push_back(coff.back() + A.basis_from(v).size());
  Matrix<F> m(roff.back(), coff.back());
  for (std::size_t r = 0; r < row_vertex.size(); ++r) {
    const auto rows = A.basis_from(row_vertex[r]);
    std::map<std::size_t, std::size_t> local;
    for (std::size_t k = 0; k < rows.size(); ++k) local.emplace(rows[k], k);
    for (std::size_t c = 0; c < col_vertex.size(); ++c) {
      const auto& x = entries[r][c];
      if (x.is_zero()) continue;
      const auto xc = A.coordinates(x);
      const auto cols = A.basis_from(col_vertex[c]);
      for (std::size_t k = 0; k < cols.size(); ++k)
        for (const auto& [idx, val] : A.times_path(xc, A.basis_word(cols[k])))
          m(roff[r] + local.at(idx), coff[c] + k) = f.add(m(roff[r] + local.at(idx), coff[c] + k), val);
    }
  }
  return m;
}

/// Splits a K-linear map between sums of projectives into per-vertex blocks,
/// giving a module map. `rows`/`cols` list the summand vertices.
template <ExactField F>
ModuleMap<F> as_module_map(const PresentedAlgebra<F>& A, const std::vector<VertexId>& rows,
                           const std::vector<VertexId>& cols, const Matrix<F>& m) {
  const std::size_t n = A.quiver().num_vertices();
  // Global row/column index of (summand, target vertex, position).
  auto layout = [&](const std::vector<VertexId>& vs) {
    std::vector<std::vector<std::size_t>> per_vertex(n);  // global indices grouped by target
    std::size_t g = 0;
    for (VertexId v : vs) {
      for (std::size_t idx : A.basis_from(v)) per_vertex[A.basis_word(idx).target].push_back(g++);
    }
    return per_vertex;
  };
  const auto R = layout(rows), C = layout(cols);
  ModuleMap<F> out(n);
  for (VertexId t = 0; t < n; ++t) {
    out[t] = Matrix<F>(R[t].size(), C[t].size());
    for (std::size_t r = 0; r < R[t].size(); ++r)
      for (std::size_t c = 0; c < C[t].size(); ++c) out[t](r, c) = m(R[t][r], C[t][c]);
  }
  return out;
}

/// Direct sum of projectives laid out per summand, then reindexed per vertex
/// in the same way as as_module_map.
template <ExactField F>
RightModule<F> sum_of_projectives(const PresentedAlgebra<F>& A, const std::vector<VertexId>& vs) {
  std::vector<RightModule<F>> parts;
  for (VertexId v : vs) parts.push_back(projective(A, v));
  return parts.empty() ? zero_module(A) : direct_sum(A.quiver_ptr(), A.field(), parts);
}

inline std::vector<std::size_t> add_vectors(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) a[k] += b[k];
  return a;
}

}  // namespace detail

template <ExactField F>
ExactSequenceData<F> exact_sequence_data(const PresentedAlgebra<F>& A, VertexId i) {
  using Element = AlgebraElement<F>;
  const F& f = A.field();
  const Quiver& q = A.quiver();
  const std::size_t n = q.num_vertices();

  const auto period = omega_period(A, i, 4);
  if (period.period != std::size_t{4})
    throw SequenceError(SequenceError::Kind::PeriodNot4,
                        "simple at vertex " + q.vertex_name(i) + " has " +
                            (period.period ? "period " + std::to_string(*period.period) : period.reason));

  ExactSequenceData<F> data;
  data.vertex = i;
  data.out_arrows = q.out_arrows(i);
  data.in_arrows = q.in_arrows(i);
  std::vector<VertexId> plus_v, minus_v;
  for (ArrowId a : data.out_arrows) plus_v.push_back(q.arrow(a).target);
  for (ArrowId b : data.in_arrows) minus_v.push_back(q.arrow(b).source);

  auto arrow_el = [&](ArrowId a) { return Element::from_path(f, PathWord::of_arrow(q, a)); };

  // d1: P_i^+ -> P_i, row of outgoing arrows.
  std::vector<std::vector<Element>> d1_entries(1);
  for (ArrowId a : data.out_arrows) d1_entries[0].push_back(arrow_el(a));
  const Matrix<F> d1 = detail::block_left_multiplication(A, {i}, plus_v, d1_entries);
  const RightModule<F> Pplus = detail::sum_of_projectives(A, plus_v);
  const RightModule<F> Pi = projective(A, i);
  const ModuleMap<F> d1_map = detail::as_module_map(A, {i}, plus_v, d1);
  const Submodule<F> ker1 = kernel_submodule(Pplus, d1_map);

  // Generators of ker d1: top representatives, lifted into P_i^+.
  const auto cover = projective_cover(A, ker1.module);
  std::vector<VertexId> need = minus_v, have = cover.summands;
  std::sort(need.begin(), need.end());
  std::sort(have.begin(), have.end());
  if (need != have) {
    std::string msg = "ker d1 at vertex " + q.vertex_name(i) + " has generators at {";
    for (std::size_t k = 0; k < have.size(); ++k) msg += (k ? " " : "") + q.vertex_name(have[k]);
    msg += "} but the arrows into it start at {";
    for (std::size_t k = 0; k < need.size(); ++k) msg += (k ? " " : "") + q.vertex_name(need[k]);
    throw SequenceError(SequenceError::Kind::GeneratorCountMismatch, msg + "}");
  }

  // Generator g (in ker1 coordinates at vertex x) -> column of elements, one per outgoing arrow.
  auto generator_column = [&](std::size_t g) {
    const VertexId x = cover.summands[g];
    const auto vec = apply(f, ker1.inclusion[x], cover.generators[g]);  // P_i^+ component at x
    std::vector<Element> col;
    std::size_t pos = 0;
    for (std::size_t r = 0; r < plus_v.size(); ++r) {
      const auto& words = A.basis_between(plus_v[r], x);
      Element e(plus_v[r], x);
      for (std::size_t k = 0; k < words.size(); ++k) e.add_term(f, A.basis_word(words[k]), vec[pos + k]);
      pos += words.size();
      col.push_back(std::move(e));
    }
    return col;
  };

  auto build_M = [&](const std::vector<std::size_t>& assignment) {
    std::vector<std::vector<Element>> M(plus_v.size(), std::vector<Element>(minus_v.size()));
    for (std::size_t c = 0; c < minus_v.size(); ++c) {
      auto col = generator_column(assignment[c]);
      for (std::size_t r = 0; r < plus_v.size(); ++r) M[r][c] = std::move(col[r]);
    }
    return M;
  };
  auto product_zero = [&](const std::vector<std::vector<Element>>& M, const std::vector<Element>& d3) {
    for (std::size_t r = 0; r < plus_v.size(); ++r) {
      Element s(plus_v[r], i);
      for (std::size_t c = 0; c < minus_v.size(); ++c) s.add_scaled(f, A.multiply(M[r][c], d3[c]), f.one());
      if (!s.is_zero()) return false;
    }
    return true;
  };

  std::vector<Element> raw_d3;
  for (ArrowId b : data.in_arrows) raw_d3.push_back(arrow_el(b));

  // With the raw arrows, look for columns theta_b in e_{t(a)} Lambda e_{s(b)}
  // with d1 theta_b = 0 and sum_b theta_b b = 0 (both linear), whose images
  // in the top of ker d1 form a basis. Unknowns are coefficients of normal
  // words, longest words first, so kernel vectors are normalised on short
  // words and small combinations of them give readable matrices.
  bool found = false;
  {
    struct Unknown { std::size_t row, col, word; };
    std::vector<Unknown> unk;
    for (std::size_t c = 0; c < minus_v.size(); ++c)
      for (std::size_t r = 0; r < plus_v.size(); ++r)
        for (std::size_t w : A.basis_between(plus_v[r], minus_v[c])) unk.push_back({r, c, w});
    std::stable_sort(unk.begin(), unk.end(), [&](const Unknown& a, const Unknown& b) {
      return A.basis_word(a.word).length() > A.basis_word(b.word).length();
    });
    Subspace<F> eqs(f);
    // Equations keyed by (kind, row or col, resulting basis word).
    std::map<std::tuple<int, std::size_t, std::size_t>, SparseVector<F>> rows;
    for (std::size_t u = 0; u < unk.size(); ++u) {
      const auto& [r, c, w] = unk[u];
      // d1: alpha_r * w contributes to column c.
      auto left = A.multiply(arrow_el(data.out_arrows[r]), A.basis_element(w));
      for (const auto& [idx, val] : A.coordinates(left)) rows[{0, c, idx}].emplace_back(u, val);
      // d2 d3: w * b_c contributes to row r.
      for (const auto& [idx, val] : A.times_arrow(w, data.in_arrows[c])) rows[{1, r, idx}].emplace_back(u, val);
    }
    for (auto& [key, row] : rows) {
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      eqs.insert(row);
    }
    const auto Z = kernel_of_rows(eqs, unk.size());

    auto to_M = [&](const SparseVector<F>& z) {
      std::vector<std::vector<Element>> M(plus_v.size(), std::vector<Element>(minus_v.size()));
      for (std::size_t r = 0; r < plus_v.size(); ++r)
        for (std::size_t c = 0; c < minus_v.size(); ++c) M[r][c] = Element(plus_v[r], minus_v[c]);
      for (const auto& [u, val] : z) M[unk[u].row][unk[u].col].add_term(f, A.basis_word(unk[u].word), val);
      return M;
    };
    // Top independence: the columns at each vertex x, together with rad(ker d1)_x,
    // must have rank dim rad_x + (number of columns at x).
    const auto rad = radical(ker1.module);
    auto good = [&](const std::vector<std::vector<Element>>& M) {
      for (VertexId x = 0; x < n; ++x) {
        Matrix<F> span = multiply(f, ker1.inclusion[x], rad.inclusion[x]);
        std::size_t cols = 0;
        for (std::size_t c = 0; c < minus_v.size(); ++c) {
          if (minus_v[c] != x) continue;
          Matrix<F> col(Pplus.dim(x), 1);
          std::size_t pos = 0;
          for (std::size_t r = 0; r < plus_v.size(); ++r) {
            const auto& words = A.basis_between(plus_v[r], x);
            for (std::size_t k = 0; k < words.size(); ++k)
              col(pos + k, 0) = M[r][c].coefficient(f, A.basis_word(words[k]));
            pos += words.size();
          }
          span = hstack(span, col);
          ++cols;
        }
        if (cols && rank(f, span) != rad.inclusion[x].cols() + cols) return false;
      }
      return true;
    };

    std::vector<SparseVector<F>> candidates;
    // 0/1 combinations of the kernel basis by increasing size, then pseudo-random ones.
    const std::size_t zs = Z.size();
    std::vector<std::size_t> pick;
    std::function<void(std::size_t, std::size_t)> subsets = [&](std::size_t from, std::size_t left) {
      if (candidates.size() >= 4096) return;
      if (left == 0) {
        SparseVector<F> z;
        for (std::size_t k : pick) z = axpy(f, z, f.one(), Z[k]);
        candidates.push_back(std::move(z));
        return;
      }
      for (std::size_t k = from; k < zs; ++k) {
        pick.push_back(k);
        subsets(k + 1, left - 1);
        pick.pop_back();
      }
    };
    for (std::size_t size = 1; size <= std::min<std::size_t>(zs, minus_v.size() + 2); ++size) subsets(0, size);
    std::mt19937_64 rng(0x5eed);
    const std::uint64_t span = f.order() == 0 ? 1'000'003 : f.order();
    for (int t = 0; t < 32 && zs > 0; ++t) {
      SparseVector<F> z;
      for (const auto& zk : Z) z = axpy(f, z, f.element(rng() % span), zk);
      candidates.push_back(std::move(z));
    }
    for (const auto& z : candidates) {
      auto M = to_M(z);
      if (!good(M)) continue;
      data.M = std::move(M);
      data.d3 = raw_d3;
      found = true;
      break;
    }
  }

  // Fallback generator assignment: cover generators in order of source.
  std::vector<std::size_t> assignment(minus_v.size());
  {
    std::vector<bool> used(cover.summands.size(), false);
    for (std::size_t c = 0; c < minus_v.size(); ++c)
      for (std::size_t g = 0; g < cover.summands.size(); ++g)
        if (!used[g] && cover.summands[g] == minus_v[c]) {
          assignment[c] = g;
          used[g] = true;
          break;
        }
  }

  if (!found) {
    // Replace the incoming arrows by a generator of ker d2 at vertex i, provided
    // its arrow parts still form a basis of the arrows into i.
    data.M = build_M(assignment);
    const Matrix<F> d2 = detail::block_left_multiplication(A, plus_v, minus_v, data.M);
    const RightModule<F> Pminus = detail::sum_of_projectives(A, minus_v);
    const Submodule<F> ker2 = kernel_submodule(Pminus, detail::as_module_map(A, plus_v, minus_v, d2));
    const auto cov2 = projective_cover(A, ker2.module);
    std::optional<std::vector<Element>> chosen;
    for (std::size_t g = 0; g < cov2.summands.size() && !chosen; ++g) {
      if (cov2.summands[g] != i) continue;
      const auto vec = apply(f, ker2.inclusion[i], cov2.generators[g]);
      std::vector<Element> col;
      std::size_t pos = 0;
      for (std::size_t c = 0; c < minus_v.size(); ++c) {
        const auto& words = A.basis_between(minus_v[c], i);
        Element e(minus_v[c], i);
        for (std::size_t k = 0; k < words.size(); ++k) e.add_term(f, A.basis_word(words[k]), vec[pos + k]);
        pos += words.size();
        col.push_back(std::move(e));
      }
      // Arrow parts: coefficient of each incoming arrow in each entry.
      Matrix<F> lin(minus_v.size(), minus_v.size());
      for (std::size_t c = 0; c < minus_v.size(); ++c)
        for (std::size_t k = 0; k < minus_v.size(); ++k)
          lin(c, k) = col[c].coefficient(f, PathWord::of_arrow(q, data.in_arrows[k]));
      if (rank(f, lin) == minus_v.size()) chosen = std::move(col);
    }
    if (!chosen)
      throw SequenceError(SequenceError::Kind::NoArrowChoice,
                          "no choice of arrows into vertex " + q.vertex_name(i) + " annihilates M_i");
    data.d3 = *chosen;
    for (std::size_t c = 0; c < minus_v.size(); ++c)
      if (!(data.d3[c] == raw_d3[c])) data.substitutions.push_back({data.in_arrows[c], data.d3[c]});
  }

  // ---- verification -------------------------------------------------------
  auto& ck = data.checks;
  const Matrix<F> d2 = detail::block_left_multiplication(A, plus_v, minus_v, data.M);
  std::vector<std::vector<Element>> d3_entries;
  for (const auto& e : data.d3) d3_entries.push_back({e});
  const Matrix<F> d3 = detail::block_left_multiplication(A, minus_v, {i}, d3_entries);
  ck.d1_d2_zero = is_zero(f, multiply(f, d1, d2));
  ck.d2_d3_zero = is_zero(f, multiply(f, d2, d3)) && product_zero(data.M, data.d3);

  const std::size_t dimP = Pi.total_dimension();
  const std::size_t dim_plus = d1.cols(), dim_minus = d2.cols();
  const std::size_t r1 = rank(f, d1), r2 = rank(f, d2), r3 = rank(f, d3);
  data.ranks = {r1, r2, r3};
  const std::size_t ker3 = dimP - r3;
  ck.exact[0] = ker3 == 1;                 // S_i -> P_i injective onto ker d3
  ck.exact[1] = ker3 == 1;                 // ker d3 = image of S_i
  ck.exact[2] = dim_minus - r2 == r3;      // at P_i^-
  ck.exact[3] = dim_plus - r1 == r2;       // at P_i^+
  ck.exact[4] = r1 + 1 == dimP;            // im d1 = rad P_i
  ck.exact[5] = dimP >= 1;                 // P_i -> S_i onto
  const long long alt = 1 - static_cast<long long>(dimP) + static_cast<long long>(dim_minus) -
                        static_cast<long long>(dim_plus) + static_cast<long long>(dimP) - 1;
  ck.alternating_sum_zero = alt == 0;

  if (ck.d1_d2_zero && ck.d2_d3_zero) {
    const RightModule<F> Pminus = detail::sum_of_projectives(A, minus_v);
    const RightModule<F> S = simple(A, i);
    const RightModule<F> om1 = syzygy(A, S);
    const RightModule<F> om2 = syzygy(A, om1);
    const RightModule<F> om3 = syzygy(A, om2);
    const auto im1 = image_submodule(Pi, d1_map).module;
    const auto im2 = image_submodule(Pplus, detail::as_module_map(A, plus_v, minus_v, d2)).module;
    const auto im3 = image_submodule(Pminus, detail::as_module_map(A, minus_v, {i}, d3)).module;
    ck.images_are_syzygies = modules_isomorphic(im1, om1) && modules_isomorphic(im2, om2) &&
                             modules_isomorphic(im3, om3);
  }

  data.p = A.dimension_vector_of_projective(i);
  data.p_plus.assign(n, 0);
  data.p_minus.assign(n, 0);
  for (VertexId v : plus_v) data.p_plus = detail::add_vectors(data.p_plus, A.dimension_vector_of_projective(v));
  for (VertexId v : minus_v) data.p_minus = detail::add_vectors(data.p_minus, A.dimension_vector_of_projective(v));
  ck.dimvec_equal = data.p_plus == data.p_minus;
  const auto norm = [](const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); };
  ck.dimvec_strict = norm(data.p_plus) > norm(data.p);
  return data;
}

}  // namespace bq
