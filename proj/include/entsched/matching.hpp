#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace entsched {

/// Undirected weighted edge; u != v, at most one edge per unordered pair.
struct GraphEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;
};

/// Simple undirected graph with real edge weights. Self-loops and parallel
/// edges are rejected at insertion.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  explicit WeightedGraph(int node_count) : node_count_(node_count) {
    if (node_count < 0) {
      throw std::invalid_argument("node_count must be non-negative");
    }
  }

  void add_edge(int u, int v, double weight) {
    if (u < 0 || v < 0 || u >= node_count_ || v >= node_count_) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (u == v) throw std::invalid_argument("self-loops not allowed");
    if (!std::isfinite(weight)) {
      throw std::invalid_argument("edge weight must be finite");
    }
    const std::uint64_t k = key(u, v);
    if (index_.contains(k)) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(u) +
                                  ", " + std::to_string(v) + ")");
    }
    index_.emplace(k, edges_.size());
    edges_.push_back(GraphEdge{std::min(u, v), std::max(u, v), weight});
  }

  int node_count() const noexcept { return node_count_; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }

  std::optional<double> edge_weight(int u, int v) const noexcept {
    if (u < 0 || v < 0 || u >= node_count_ || v >= node_count_ || u == v) {
      return std::nullopt;
    }
    const auto it = index_.find(key(u, v));
    if (it == index_.end()) return std::nullopt;
    return edges_[it->second].weight;
  }

 private:
  static std::uint64_t key(int u, int v) noexcept {
    const auto a = static_cast<std::uint64_t>(std::min(u, v));
    const auto b = static_cast<std::uint64_t>(std::max(u, v));
    return (a << 32) | b;
  }

  int node_count_ = 0;
  std::vector<GraphEdge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// A matching: pairwise node-disjoint edges plus their total weight.
/// Edges are stored as (u, v) with u < v, sorted, so equal matchings
/// compare equal.
struct Matching {
  std::vector<std::pair<int, int>> edges;
  double total_weight = 0.0;
};

/// Absolute tolerance used when checking weight consistency.
inline constexpr double kWeightTolerance = 1e-9;

/// True iff `m` is a valid matching of `g`: node-disjoint, every edge
/// present in the graph with positive weight, and total_weight consistent
/// with the graph's weights (within kWeightTolerance).
inline bool validate_matching(const WeightedGraph& g, const Matching& m) {
  std::vector<char> used(static_cast<std::size_t>(g.node_count()), 0);
  double sum = 0.0;
  for (const auto& [u, v] : m.edges) {
    const auto w = g.edge_weight(u, v);
    if (!w.has_value() || *w <= 0.0) return false;
    if (used[static_cast<std::size_t>(u)] ||
        used[static_cast<std::size_t>(v)]) {
      return false;
    }
    used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = 1;
    sum += *w;
  }
  return std::abs(sum - m.total_weight) <= kWeightTolerance;
}

namespace detail {

/// Exact maximum-weight matching on a general graph, primal-dual blossom
/// algorithm (Galil's formulation, following van Rantwijk's well-known
/// O(V^3) implementation). Perfect matchings are not required and
/// non-positive edges are expected to be filtered out by the caller.
class BlossomMatcher {
 public:
  BlossomMatcher(int n, const std::vector<GraphEdge>& edges)
      : n_(n), edges_(edges) {}

  /// Returns mate[v] = matched partner vertex, or -1.
  std::vector<int> solve() {
    const int m = static_cast<int>(edges_.size());
    if (n_ == 0 || m == 0) return std::vector<int>(n_, -1);

    double max_weight = 0.0;
    for (const auto& e : edges_) max_weight = std::max(max_weight, e.weight);

    endpoint_.resize(2 * m);
    for (int p = 0; p < 2 * m; ++p) {
      endpoint_[p] = (p % 2 == 0) ? edges_[p / 2].u : edges_[p / 2].v;
    }
    neighbend_.assign(n_, {});
    for (int k = 0; k < m; ++k) {
      neighbend_[edges_[k].u].push_back(2 * k + 1);
      neighbend_[edges_[k].v].push_back(2 * k);
    }

    mate_.assign(n_, -1);
    label_.assign(2 * n_, 0);
    labelend_.assign(2 * n_, -1);
    inblossom_.resize(n_);
    for (int v = 0; v < n_; ++v) inblossom_[v] = v;
    blossomparent_.assign(2 * n_, -1);
    blossombase_.assign(2 * n_, -1);
    for (int v = 0; v < n_; ++v) blossombase_[v] = v;
    blossomchilds_.assign(2 * n_, {});
    blossomendps_.assign(2 * n_, {});
    bestedge_.assign(2 * n_, -1);
    blossombestedges_.assign(2 * n_, std::nullopt);
    unusedblossoms_.clear();
    for (int b = n_; b < 2 * n_; ++b) unusedblossoms_.push_back(b);
    dualvar_.assign(2 * n_, 0.0);
    for (int v = 0; v < n_; ++v) dualvar_[v] = max_weight;
    allowedge_.assign(m, 0);

    for (int stage = 0; stage < n_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = n_; b < 2 * n_; ++b) blossombestedges_[b].reset();
      std::fill(allowedge_.begin(), allowedge_.end(), 0);
      queue_.clear();

      for (int v = 0; v < n_; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
          assign_label(v, 1, -1);
        }
      }

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          assert(label_[inblossom_[v]] == 1);

          for (const int p : neighbend_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;

            double kslack = 0.0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0.0) allowedge_[k] = 1;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                assert(label_[inblossom_[w]] == 2);
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                bestedge_[b] = k;
              }
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                bestedge_[w] = k;
              }
            }
          }
        }
        if (augmented) break;

        // Dual adjustment: pick the smallest of the four classic deltas.
        int deltatype = 1;
        double delta = dualvar_[0];
        for (int v = 1; v < n_; ++v) delta = std::min(delta, dualvar_[v]);
        int deltaedge = -1;
        int deltablossom = -1;

        for (int v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const double d = slack(bestedge_[v]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * n_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 &&
              bestedge_[b] != -1) {
            const double d = slack(bestedge_[b]) / 2.0;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 &&
              label_[b] == 2 && dualvar_[b] < delta) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }

        for (int v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 1) {
            dualvar_[v] -= delta;
          } else if (label_[inblossom_[v]] == 2) {
            dualvar_[v] += delta;
          }
        }
        for (int b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1) {
              dualvar_[b] += delta;
            } else if (label_[b] == 2) {
              dualvar_[b] -= delta;
            }
          }
        }

        if (deltatype == 1) {
          break;  // optimum reached
        } else if (deltatype == 2) {
          allowedge_[deltaedge] = 1;
          int i = edges_[deltaedge].u;
          if (label_[inblossom_[i]] == 0) i = edges_[deltaedge].v;
          assert(label_[inblossom_[i]] == 1);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = 1;
          assert(label_[inblossom_[edges_[deltaedge].u]] == 1);
          queue_.push_back(edges_[deltaedge].u);
        } else {
          expand_blossom(deltablossom, false);
        }
      }

      if (!augmented) break;

      for (int b = n_; b < 2 * n_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 &&
            label_[b] == 1 && dualvar_[b] == 0.0) {
          expand_blossom(b, true);
        }
      }
    }

    std::vector<int> result(n_, -1);
    for (int v = 0; v < n_; ++v) {
      if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
    }
    return result;
  }

 private:
  double slack(int k) const {
    return dualvar_[edges_[k].u] + dualvar_[edges_[k].v] -
           2.0 * edges_[k].weight;
  }

  void blossom_leaves(int b, std::vector<int>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (const int c : blossomchilds_[b]) blossom_leaves(c, out);
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    assert(label_[w] == 0 && label_[b] == 0);
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      std::vector<int> leaves;
      blossom_leaves(b, leaves);
      queue_.insert(queue_.end(), leaves.begin(), leaves.end());
    } else {
      const int base = blossombase_[b];
      assert(mate_[base] >= 0);
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  // Trace back from v and w toward their roots; returns the base vertex of
  // the first common blossom, or -1 when the paths end at distinct roots
  // (an augmenting path was found).
  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      assert(label_[b] == 1);
      path.push_back(b);
      label_[b] = 5;
      assert(labelend_[b] == mate_[blossombase_[b]]);
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        assert(label_[b] == 2);
        assert(labelend_[b] >= 0);
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (const int b : path) label_[b] = 1;
    return base;
  }

  // Contract the cycle through edge k and the common base into a new
  // blossom.
  void add_blossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];

    const int b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;

    auto& path = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    path.clear();
    endps.clear();

    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      assert(label_[bv] == 2 ||
             (label_[bv] == 1 && labelend_[bv] == mate_[blossombase_[bv]]));
      assert(labelend_[bv] >= 0);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);

    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      assert(label_[bw] == 2 ||
             (label_[bw] == 1 && labelend_[bw] == mate_[blossombase_[bw]]));
      assert(labelend_[bw] >= 0);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }

    assert(label_[bb] == 1);
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0.0;

    std::vector<int> leaves;
    blossom_leaves(b, leaves);
    for (const int lv : leaves) {
      if (label_[inblossom_[lv]] == 2) queue_.push_back(lv);
      inblossom_[lv] = b;
    }

    // Merge least-slack edge lists of the children.
    std::vector<int> bestedgeto(static_cast<std::size_t>(2 * n_), -1);
    for (const int child : path) {
      std::vector<std::vector<int>> nblists;
      if (!blossombestedges_[child].has_value()) {
        std::vector<int> child_leaves;
        blossom_leaves(child, child_leaves);
        for (const int lv : child_leaves) {
          std::vector<int> ks;
          ks.reserve(neighbend_[lv].size());
          for (const int p : neighbend_[lv]) ks.push_back(p / 2);
          nblists.push_back(std::move(ks));
        }
      } else {
        nblists.push_back(*blossombestedges_[child]);
      }
      for (const auto& nblist : nblists) {
        for (const int ek : nblist) {
          int i = edges_[ek].u;
          int j = edges_[ek].v;
          if (inblossom_[j] == b) std::swap(i, j);
          const int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 &&
              (bestedgeto[bj] == -1 || slack(ek) < slack(bestedgeto[bj]))) {
            bestedgeto[bj] = ek;
          }
        }
      }
      blossombestedges_[child].reset();
      bestedge_[child] = -1;
    }
    std::vector<int> best;
    for (const int ek : bestedgeto) {
      if (ek != -1) best.push_back(ek);
    }
    blossombestedges_[b] = std::move(best);
    bestedge_[b] = -1;
    for (const int ek : *blossombestedges_[b]) {
      if (bestedge_[b] == -1 || slack(ek) < slack(bestedge_[b])) {
        bestedge_[b] = ek;
      }
    }
  }

  // Wrapped (Python-style) indexing into a blossom's child/endpoint lists.
  static int wrap(int j, int len) {
    const int r = j % len;
    return r < 0 ? r + len : r;
  }
  int child_at(int b, int j) const {
    const auto& c = blossomchilds_[b];
    return c[static_cast<std::size_t>(wrap(j, static_cast<int>(c.size())))];
  }
  int endp_at(int b, int j) const {
    const auto& e = blossomendps_[b];
    return e[static_cast<std::size_t>(wrap(j, static_cast<int>(e.size())))];
  }

  void expand_blossom(int b, bool endstage) {
    for (const int s : blossomchilds_[b]) {
      blossomparent_[s] = -1;
      if (s < n_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0.0) {
        expand_blossom(s, endstage);
      } else {
        std::vector<int> leaves;
        blossom_leaves(s, leaves);
        for (const int lv : leaves) inblossom_[lv] = s;
      }
    }

    if (!endstage && label_[b] == 2) {
      assert(labelend_[b] >= 0);
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      const int len = static_cast<int>(blossomchilds_[b].size());
      int j = 0;
      for (; j < len; ++j) {
        if (blossomchilds_[b][static_cast<std::size_t>(j)] == entrychild) {
          break;
        }
      }
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endp_at(b, j - endptrick) ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[endp_at(b, j - endptrick) / 2] = 1;
        j += jstep;
        p = endp_at(b, j - endptrick) ^ endptrick;
        allowedge_[p / 2] = 1;
        j += jstep;
      }
      // Relabel the base sub-blossom without stepping through to its mate.
      const int bv = child_at(b, j);
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (child_at(b, j) != entrychild) {
        const int bw = child_at(b, j);
        if (label_[bw] == 1) {
          j += jstep;
          continue;
        }
        std::vector<int> leaves;
        blossom_leaves(bw, leaves);
        int reached = -1;
        for (const int lv : leaves) {
          if (label_[lv] != 0) {
            reached = lv;
            break;
          }
        }
        if (reached != -1) {
          assert(label_[reached] == 2);
          assert(inblossom_[reached] == bw);
          label_[reached] = 0;
          label_[endpoint_[mate_[blossombase_[bw]]]] = 0;
          assign_label(reached, 2, labelend_[reached]);
        }
        j += jstep;
      }
    }

    label_[b] = -1;
    labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].reset();
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
  }

  // Swap matched/unmatched edges along the path from vertex v down to the
  // base of blossom b, so that v becomes the new base.
  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= n_) augment_blossom(t, v);

    const auto& childs = blossomchilds_[b];
    const int len = static_cast<int>(childs.size());
    int i = 0;
    for (; i < len; ++i) {
      if (childs[static_cast<std::size_t>(i)] == t) break;
    }
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      int tc = child_at(b, j);
      const int p = endp_at(b, j - endptrick) ^ endptrick;
      if (tc >= n_) augment_blossom(tc, endpoint_[p]);
      j += jstep;
      tc = child_at(b, j);
      if (tc >= n_) augment_blossom(tc, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }

    auto& ch = blossomchilds_[b];
    auto& ep = blossomendps_[b];
    std::rotate(ch.begin(), ch.begin() + i, ch.end());
    std::rotate(ep.begin(), ep.begin() + i, ep.end());
    blossombase_[b] = blossombase_[ch.front()];
    assert(blossombase_[b] == v);
  }

  // Flip matched/unmatched edges along the augmenting path through edge k.
  void augment_matching(int k) {
    const int v = edges_[k].u;
    const int w = edges_[k].v;
    const std::pair<int, int> sides[2] = {{v, 2 * k + 1}, {w, 2 * k}};
    for (auto [s, p] : sides) {
      while (true) {
        const int bs = inblossom_[s];
        assert(label_[bs] == 1);
        assert(labelend_[bs] == mate_[blossombase_[bs]]);
        if (bs >= n_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        assert(label_[bt] == 2);
        assert(labelend_[bt] >= 0);
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        assert(blossombase_[bt] == t);
        if (bt >= n_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int n_;
  std::vector<GraphEdge> edges_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> bestedge_;
  std::vector<std::optional<std::vector<int>>> blossombestedges_;
  std::vector<int> unusedblossoms_;
  std::vector<double> dualvar_;
  std::vector<char> allowedge_;
  std::vector<int> queue_;
};

inline Matching assemble_matching(const WeightedGraph& g,
                                  const std::vector<std::pair<int, int>>& raw) {
  Matching m;
  m.edges = raw;
  for (auto& [u, v] : m.edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(m.edges.begin(), m.edges.end());
  for (const auto& [u, v] : m.edges) {
    m.total_weight += g.edge_weight(u, v).value();
  }
  return m;
}

}  // namespace detail

/// Exact maximum-weight matching (not necessarily perfect). Edges with
/// non-positive weight are never part of the result: dropping them cannot
/// lower the total, so they are filtered before solving. Any optimal
/// matching may be returned when several tie. Total weight agrees with the
/// brute-force oracle to within kWeightTolerance on double inputs.
inline Matching max_weight_matching(const WeightedGraph& g) {
  std::vector<GraphEdge> positive;
  positive.reserve(g.edges().size());
  for (const auto& e : g.edges()) {
    if (e.weight > 0.0) positive.push_back(e);
  }
  detail::BlossomMatcher matcher(g.node_count(), positive);
  const std::vector<int> mate = matcher.solve();
  std::vector<std::pair<int, int>> raw;
  for (int v = 0; v < g.node_count(); ++v) {
    if (mate[v] > v) raw.emplace_back(v, mate[v]);
  }
  return detail::assemble_matching(g, raw);
}

/// Largest instance the exhaustive oracle accepts.
inline constexpr int kBruteForceMaxNodes = 16;

/// Testing oracle: exhaustive search over the subset lattice (every
/// matching is considered). Independent of the blossom solver.
inline Matching brute_force_matching(const WeightedGraph& g) {
  const int n = g.node_count();
  if (n > kBruteForceMaxNodes) {
    throw std::invalid_argument("brute_force_matching limited to " +
                                std::to_string(kBruteForceMaxNodes) +
                                " nodes");
  }
  std::vector<std::vector<std::pair<int, double>>> adj(
      static_cast<std::size_t>(n));
  for (const auto& e : g.edges()) {
    if (e.weight > 0.0) {
      adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.weight);
      adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.weight);
    }
  }
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> best(size, 0.0);
  // partner[S]: vertex matched with the lowest vertex of S, or -1.
  std::vector<int> partner(size, -1);
  for (std::uint32_t s = 1; s < size; ++s) {
    const int v = std::countr_zero(s);
    const std::uint32_t rest = s & (s - 1);  // s without its lowest bit
    best[s] = best[rest];
    partner[s] = -1;
    for (const auto& [u, w] : adj[static_cast<std::size_t>(v)]) {
      const std::uint32_t ubit = std::uint32_t{1} << u;
      if (!(s & ubit)) continue;
      const double cand = w + best[rest & ~ubit];
      if (cand > best[s]) {
        best[s] = cand;
        partner[s] = u;
      }
    }
  }
  std::vector<std::pair<int, int>> raw;
  std::uint32_t s = static_cast<std::uint32_t>(size - 1);
  while (s != 0) {
    const int v = std::countr_zero(s);
    const int u = partner[s];
    if (u == -1) {
      s &= s - 1;
    } else {
      raw.emplace_back(v, u);
      s &= ~(std::uint32_t{1} << v);
      s &= ~(std::uint32_t{1} << u);
    }
  }
  return detail::assemble_matching(g, raw);
}

}  // namespace entsched
