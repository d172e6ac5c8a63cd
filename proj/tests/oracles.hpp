// Brute-force reference computations used only by the tests. None of these
// call into the library's algorithms beyond reading U_x.

#pragma once

#include "cislimit/cis.hpp"
#include "cislimit/finspace.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

namespace oracle {

using cislimit::FinMap;
using cislimit::FinSpace;
using Mask = std::uint32_t;

inline Mask bit(std::size_t k) { return Mask{1} << k; }

inline Mask up_mask(const FinSpace& x, std::size_t p) {
  Mask m = 0;
  for (std::size_t q = 0; q < x.size(); ++q) {
    if (x.min_open(p).test(q)) m |= bit(q);
  }
  return m;
}

inline bool is_open(const FinSpace& x, Mask a) {
  for (std::size_t p = 0; p < x.size(); ++p) {
    if ((a & bit(p)) && (up_mask(x, p) & ~a)) return false;
  }
  return true;
}

inline Mask full(const FinSpace& x) { return x.size() == 32 ? ~Mask{0} : bit(x.size()) - 1; }

/// Every closed set, by enumerating all subsets.
inline std::vector<Mask> closed_sets(const FinSpace& x) {
  std::vector<Mask> out;
  for (Mask a = 0; a <= full(x); ++a) {
    if (is_open(x, full(x) & ~a)) out.push_back(a);
    if (a == full(x)) break;
  }
  return out;
}

/// Intersection of all closed supersets.
inline Mask closure(const FinSpace& x, Mask a) {
  Mask c = full(x);
  for (auto k : closed_sets(x)) {
    if ((k & a) == a) c &= k;
  }
  return c;
}

inline Mask image(const FinMap& m, Mask a) {
  Mask out = 0;
  for (std::size_t p = 0; p < m.source().size(); ++p) {
    if (a & bit(p)) out |= bit(m(p));
  }
  return out;
}

inline Mask preimage(const FinMap& m, Mask b) {
  Mask out = 0;
  for (std::size_t p = 0; p < m.source().size(); ++p) {
    if (b & bit(m(p))) out |= bit(p);
  }
  return out;
}

inline bool continuous(const FinMap& m) {
  const auto& t = m.target();
  for (Mask b = 0; b <= full(t); ++b) {
    if (is_open(t, b) && !is_open(m.source(), preimage(m, b))) return false;
    if (b == full(t)) break;
  }
  return true;
}

/// Image of every closed set is closed.
inline bool closed_map(const FinMap& m) {
  for (auto k : closed_sets(m.source())) {
    const auto img = image(m, k);
    if (!is_open(m.target(), full(m.target()) & ~img)) return false;
  }
  return true;
}

/// Some bijection preserving open sets both ways, by trying all permutations.
inline bool homeomorphic(const FinSpace& a, const FinSpace& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t p = 0; p < a.size() && ok; ++p) {
      for (std::size_t q = 0; q < a.size() && ok; ++q) {
        ok = a.min_open(p).test(q) == b.min_open(perm[p]).test(perm[q]);
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

/// Finest topology on `n` points making every map continuous: a set is open
/// iff every preimage is open. Returned as the minimal open set of each point.
inline std::vector<Mask> final_topology(std::size_t n, const std::vector<FinMap>& maps) {
  const Mask all = bit(n) - 1;
  std::vector<Mask> opens;
  for (Mask a = 0; a <= all; ++a) {
    bool ok = true;
    for (const auto& m : maps) {
      Mask pre = 0;
      for (std::size_t p = 0; p < m.source().size(); ++p) {
        if (a & bit(m(p))) pre |= bit(p);
      }
      if (!is_open(m.source(), pre)) {
        ok = false;
        break;
      }
    }
    if (ok) opens.push_back(a);
  }
  std::vector<Mask> up(n, all);
  for (std::size_t p = 0; p < n; ++p) {
    for (auto o : opens) {
      if (o & bit(p)) up[p] &= o;
    }
  }
  return up;
}

/// (f_{j-1} ∘ ... ∘ f_i)^{-1}(Y_j) as a set of positions in X_i, composing the
/// partial maps first and taking one preimage.
inline std::set<std::size_t> composite_domain(const cislimit::Cis& c, std::size_t i,
                                              std::size_t j) {
  std::vector<std::optional<std::size_t>> g(c.space(i).size());
  for (std::size_t p = 0; p < g.size(); ++p) g[p] = p;
  for (std::size_t k = i; k < j; ++k) {
    for (auto& v : g) {
      if (!v) continue;
      const auto s = c.step(k, *v);
      v = s == cislimit::no_point ? std::nullopt : std::optional<std::size_t>(s);
    }
  }
  std::set<std::size_t> out;
  for (std::size_t p = 0; p < g.size(); ++p) {
    if (g[p] && c.y(j).test(*g[p])) out.insert(p);
  }
  return out;
}

// Dense mod-2 linear algebra on int matrices.

using Dense = std::vector<std::vector<int>>;

inline std::size_t rank(Dense m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k != r && m[k][c]) {
        for (std::size_t t = 0; t < cols; ++t) m[k][t] ^= m[r][t];
      }
    }
    ++r;
  }
  return r;
}

using Simplices = std::vector<std::set<std::vector<int>>>;

/// Betti numbers b_0..b_pmax of a complex given by its simplices per dimension.
inline std::vector<std::size_t> betti(const Simplices& s, std::size_t pmax) {
  auto count = [&](std::size_t p) { return p < s.size() ? s[p].size() : 0; };
  auto boundary_rank = [&](std::size_t p) -> std::size_t {
    if (p == 0 || p >= s.size()) return 0;
    std::vector<std::vector<int>> rows(s[p - 1].begin(), s[p - 1].end());
    std::map<std::vector<int>, std::size_t> row_of;
    for (std::size_t k = 0; k < rows.size(); ++k) row_of[rows[k]] = k;
    Dense d(rows.size(), std::vector<int>(s[p].size(), 0));
    std::size_t col = 0;
    for (const auto& simplex : s[p]) {
      for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
        auto face = simplex;
        face.erase(face.begin() + static_cast<long>(drop));
        d[row_of.at(face)][col] ^= 1;
      }
      ++col;
    }
    return rank(d);
  };
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p <= pmax; ++p) {
    out.push_back(count(p) - boundary_rank(p) - boundary_rank(p + 1));
  }
  return out;
}

inline Simplices close_down(const std::vector<std::vector<int>>& facets) {
  Simplices s;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    const std::size_t n = f.size();
    for (Mask m = 1; m < bit(n); ++m) {
      std::vector<int> face;
      for (std::size_t b = 0; b < n; ++b) {
        if (m & bit(b)) face.push_back(f[b]);
      }
      if (s.size() < face.size()) s.resize(face.size());
      s[face.size() - 1].insert(face);
    }
  }
  return s;
}

/// Boundary of the (n+1)-dimensional cross-polytope: vertices ±e_k, faces
/// the vertex sets without an antipodal pair.
inline Simplices cross_polytope_boundary(std::size_t n) {
  const std::size_t d = n + 1;
  std::vector<std::vector<int>> facets;
  for (Mask signs = 0; signs < bit(d); ++signs) {
    std::vector<int> f;
    for (std::size_t k = 0; k < d; ++k) f.push_back(static_cast<int>(2 * k + ((signs >> k) & 1)));
    facets.push_back(f);
  }
  return close_down(facets);
}

/// Torus as the 4x4 grid with both directions wrapped, each square split
/// along a diagonal.
inline Simplices grid_torus() {
  auto v = [](int i, int j) { return ((i + 4) % 4) * 4 + (j + 4) % 4; };
  std::vector<std::vector<int>> facets;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      facets.push_back({v(i, j), v(i + 1, j), v(i + 1, j + 1)});
      facets.push_back({v(i, j), v(i, j + 1), v(i + 1, j + 1)});
    }
  }
  return close_down(facets);
}

}  // namespace oracle
