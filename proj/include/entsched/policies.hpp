#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "entsched/fidelity.hpp"
#include "entsched/matching.hpp"
#include "entsched/random.hpp"

namespace entsched {

using PairId = std::uint64_t;

/// Which stretch of the network a pair spans: one of the two physical links
/// or end-to-end.
enum class Span { SR, RD, E2E };

enum class Policy { PurifyThenSwap, SwapThenPurify, SwapOnly };

/// Outcome sampling for the two probabilistic operations. Swaps succeed
/// with probability swap_success_p. Purifications succeed with the
/// input-dependent probability p_pur when purification_stochastic is true,
/// and always otherwise.
struct SuccessModel {
  double swap_success_p = 1.0;
  bool purification_stochastic = true;

  void validate() const {
    if (!(swap_success_p >= 0.0 && swap_success_p <= 1.0)) {
      throw std::invalid_argument("swap_success_p must be in [0, 1]");
    }
  }
};

/// One entangled pair. `left_slot`/`right_slot` are memory indices at the
/// two nodes the span touches. A purified pair is never offered for
/// further purification.
struct EntPair {
  PairId id = 0;
  Span span = Span::SR;
  int left_slot = 0;
  int right_slot = 0;
  Fidelity fidelity;
  std::int64_t birth_slot = 0;
  bool purified = false;
};

/// The controller's view at the start of a slot: live link-level pairs with
/// fidelities already decayed to `current_slot`.
struct NetworkSnapshot {
  std::vector<EntPair> sr_pairs;
  std::vector<EntPair> rd_pairs;
  std::int64_t current_slot = 0;

  void validate() const;
};

enum class NodeSide { Source, RepeaterSr, RepeaterRd, Destination };

struct FreedSlot {
  NodeSide node;
  int index;
};

struct PurificationRecord {
  PairId left_input = 0;
  PairId right_input = 0;
  bool success = false;
  std::optional<PairId> output;
};

struct SwapRecord {
  PairId sr_input = 0;
  PairId rd_input = 0;
  bool success = false;
  std::optional<PairId> output;
};

/// Result of applying a policy to a snapshot. Besides the delivered E2E
/// pairs and the operation log, it carries the link-level pairs that are
/// still alive and every memory slot freed, so callers can account for all
/// memory without re-deriving policy internals.
struct ScheduleOutcome {
  std::vector<EntPair> e2e_pairs;
  std::vector<PurificationRecord> purifications;
  std::vector<SwapRecord> swaps;
  std::vector<FreedSlot> freed_slots;
  std::vector<EntPair> sr_survivors;
  std::vector<EntPair> rd_survivors;
};

/// Purification instance: node i (< pair_count) is pair_ids[i], node
/// pair_count + i is its replica. Matched (i, j) with both below pair_count
/// means "merge pairs i and j"; everything else keeps its pair as is.
struct PurifyGraph {
  WeightedGraph graph;
  std::vector<PairId> pair_ids;
  int pair_count = 0;
};

struct SwapUnit {
  PairId id = 0;
  Fidelity fidelity;
};

/// Swap instance: complete bipartite graph, node u (< sr_ids.size()) is
/// sr_ids[u], node sr_ids.size() + j is rd_ids[j].
struct SwapGraph {
  WeightedGraph graph;
  std::vector<PairId> sr_ids;
  std::vector<PairId> rd_ids;
};

struct PolicyOptions {
  /// Cap on applied purifications per purification stage (the L of the
  /// slotted simulator). Unset means uncapped. When the matching selects
  /// more merges than the cap, the merges with the largest gain over their
  /// replica alternatives are kept and the rest fall back to replicas.
  std::optional<int> max_purifications_per_link;
};

namespace detail {

inline std::pair<NodeSide, NodeSide> span_sides(Span span) {
  switch (span) {
    case Span::SR:
      return {NodeSide::Source, NodeSide::RepeaterSr};
    case Span::RD:
      return {NodeSide::RepeaterRd, NodeSide::Destination};
    case Span::E2E:
      return {NodeSide::Source, NodeSide::Destination};
  }
  throw std::logic_error("unknown span");
}

// The purification formula degenerates only for inputs {0, 1}; such a pair
// can never be merged (its success probability is 0), so no merge edge is
// emitted for it.
inline bool degenerate_purify_inputs(Fidelity a, Fidelity b) noexcept {
  return (a.value() == 0.0 && b.value() == 1.0) ||
         (a.value() == 1.0 && b.value() == 0.0);
}

}  // namespace detail

inline void NetworkSnapshot::validate() const {
  std::unordered_set<PairId> ids;
  std::unordered_set<int> left_used;
  std::unordered_set<int> right_used;
  const auto check_link = [&](const std::vector<EntPair>& pairs, Span span) {
    left_used.clear();
    right_used.clear();
    for (const auto& p : pairs) {
      if (p.span != span) {
        throw std::invalid_argument("snapshot pair has wrong span");
      }
      if (p.left_slot < 0 || p.right_slot < 0) {
        throw std::invalid_argument("negative memory slot index");
      }
      if (!ids.insert(p.id).second) {
        throw std::invalid_argument("duplicate pair id " +
                                    std::to_string(p.id));
      }
      if (!left_used.insert(p.left_slot).second ||
          !right_used.insert(p.right_slot).second) {
        throw std::invalid_argument("two pairs share a memory slot");
      }
    }
  };
  check_link(sr_pairs, Span::SR);
  check_link(rd_pairs, Span::RD);
}

/// Builds the purification matching instance for one link (or for the E2E
/// stage): a merge edge weighted g(F_p(Fi, Fj)) for every eligible pair of
/// pairs, and a replica edge weighted g(Fi) per pair. Already-purified
/// pairs get only their replica edge.
inline PurifyGraph build_purify_graph(std::span<const EntPair> pairs,
                                      UtilityKind kind) {
  const int k = static_cast<int>(pairs.size());
  if (k > 0) {
    const Span span = pairs.front().span;
    for (const auto& p : pairs) {
      if (p.span != span) {
        throw std::invalid_argument(
            "build_purify_graph: pairs must share one span");
      }
    }
  }
  PurifyGraph out;
  out.pair_count = k;
  out.graph = WeightedGraph(2 * k);
  out.pair_ids.reserve(static_cast<std::size_t>(k));
  for (const auto& p : pairs) out.pair_ids.push_back(p.id);
  for (int i = 0; i < k; ++i) {
    out.graph.add_edge(i, k + i, g_value(kind, pairs[i].fidelity));
    if (pairs[static_cast<std::size_t>(i)].purified) continue;
    for (int j = i + 1; j < k; ++j) {
      const auto& a = pairs[static_cast<std::size_t>(i)];
      const auto& b = pairs[static_cast<std::size_t>(j)];
      if (b.purified) continue;
      if (detail::degenerate_purify_inputs(a.fidelity, b.fidelity)) continue;
      out.graph.add_edge(i, j,
                         g_value(kind, purify_fidelity(a.fidelity,
                                                       b.fidelity)));
    }
  }
  return out;
}

/// Builds the swap matching instance: complete bipartite graph between SR
/// and RD units with edge weight g(F_s(Fi, Fj)).
inline SwapGraph build_swap_graph(std::span<const SwapUnit> sr,
                                  std::span<const SwapUnit> rd,
                                  UtilityKind kind) {
  const int a = static_cast<int>(sr.size());
  const int b = static_cast<int>(rd.size());
  SwapGraph out;
  out.graph = WeightedGraph(a + b);
  out.sr_ids.reserve(sr.size());
  out.rd_ids.reserve(rd.size());
  for (const auto& u : sr) out.sr_ids.push_back(u.id);
  for (const auto& u : rd) out.rd_ids.push_back(u.id);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) {
      out.graph.add_edge(
          i, a + j,
          g_value(kind, swap_fidelity(sr[static_cast<std::size_t>(i)].fidelity,
                                      rd[static_cast<std::size_t>(j)].fidelity)));
    }
  }
  return out;
}

namespace detail {

struct PurifyStageResult {
  std::vector<EntPair> survivors;
  std::vector<PurificationRecord> records;
};

inline void free_pair_slots(const EntPair& p, std::vector<FreedSlot>& freed) {
  const auto [left, right] = span_sides(p.span);
  freed.push_back({left, p.left_slot});
  freed.push_back({right, p.right_slot});
}

// Solves the purification matching for one stage and applies the selected
// merges in canonical (node index) order, one uniform draw per merge.
// Failed merges lose both inputs. The surviving list keeps untouched pairs
// first (input order), then merge outputs.
inline PurifyStageResult apply_purification_stage(
    const std::vector<EntPair>& pairs, UtilityKind kind,
    const SuccessModel& success, std::optional<int> cap, PairId& next_id,
    std::vector<FreedSlot>& freed, std::mt19937_64& rng) {
  PurifyStageResult out;
  if (pairs.empty()) return out;

  const PurifyGraph pg = build_purify_graph(pairs, kind);
  const Matching matching = max_weight_matching(pg.graph);

  std::vector<std::pair<int, int>> merges;
  for (const auto& [u, v] : matching.edges) {
    if (u < pg.pair_count && v < pg.pair_count) merges.emplace_back(u, v);
  }
  if (cap.has_value() && static_cast<int>(merges.size()) > *cap) {
    // Keep the merges with the largest gain over their replica
    // alternatives; drop the rest back to replicas.
    std::vector<std::pair<double, std::pair<int, int>>> scored;
    scored.reserve(merges.size());
    for (const auto& [u, v] : merges) {
      const double merge_w = pg.graph.edge_weight(u, v).value();
      const double rep_u = pg.graph.edge_weight(u, pg.pair_count + u).value();
      const double rep_v = pg.graph.edge_weight(v, pg.pair_count + v).value();
      scored.push_back({merge_w - rep_u - rep_v, {u, v}});
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    merges.clear();
    for (int i = 0; i < *cap; ++i) merges.push_back(scored[i].second);
    std::sort(merges.begin(), merges.end());
  }

  std::vector<char> consumed(pairs.size(), 0);
  std::vector<EntPair> outputs;
  for (const auto& [u, v] : merges) {
    const EntPair& a = pairs[static_cast<std::size_t>(u)];
    const EntPair& b = pairs[static_cast<std::size_t>(v)];
    consumed[static_cast<std::size_t>(u)] = 1;
    consumed[static_cast<std::size_t>(v)] = 1;
    const double p = success.purification_stochastic
                         ? purify_success_prob(a.fidelity, b.fidelity)
                         : 1.0;
    const bool ok = uniform01(rng) < p;
    PurificationRecord rec{a.id, b.id, ok, std::nullopt};
    if (ok) {
      const bool keep_a =
          std::pair{a.left_slot, a.right_slot} <=
          std::pair{b.left_slot, b.right_slot};
      const EntPair& kept = keep_a ? a : b;
      const EntPair& other = keep_a ? b : a;
      EntPair merged;
      merged.id = next_id++;
      merged.span = a.span;
      merged.left_slot = kept.left_slot;
      merged.right_slot = kept.right_slot;
      merged.fidelity = purify_fidelity(a.fidelity, b.fidelity);
      merged.birth_slot = std::min(a.birth_slot, b.birth_slot);
      merged.purified = true;
      rec.output = merged.id;
      outputs.push_back(merged);
      free_pair_slots(other, freed);
    } else {
      free_pair_slots(a, freed);
      free_pair_slots(b, freed);
    }
    out.records.push_back(rec);
  }

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!consumed[i]) out.survivors.push_back(pairs[i]);
  }
  out.survivors.insert(out.survivors.end(), outputs.begin(), outputs.end());
  return out;
}

struct SwapStageResult {
  std::vector<EntPair> e2e;
  std::vector<SwapRecord> records;
  std::vector<EntPair> leftover_sr;
  std::vector<EntPair> leftover_rd;
};

// Solves the bipartite swap matching and applies the matched swaps in
// canonical order, one uniform draw per swap. A failed swap loses both
// inputs; a successful one frees the two repeater memories and produces an
// E2E pair at the source/destination slots of its inputs.
inline SwapStageResult apply_swap_stage(const std::vector<EntPair>& sr,
                                        const std::vector<EntPair>& rd,
                                        UtilityKind kind,
                                        const SuccessModel& success,
                                        PairId& next_id,
                                        std::vector<FreedSlot>& freed,
                                        std::mt19937_64& rng) {
  SwapStageResult out;
  std::vector<SwapUnit> sr_units;
  std::vector<SwapUnit> rd_units;
  sr_units.reserve(sr.size());
  rd_units.reserve(rd.size());
  for (const auto& p : sr) sr_units.push_back({p.id, p.fidelity});
  for (const auto& p : rd) rd_units.push_back({p.id, p.fidelity});

  const SwapGraph sg = build_swap_graph(sr_units, rd_units, kind);
  const Matching matching = max_weight_matching(sg.graph);

  const int a = static_cast<int>(sr.size());
  std::vector<char> sr_used(sr.size(), 0);
  std::vector<char> rd_used(rd.size(), 0);
  for (const auto& [u, v] : matching.edges) {
    const auto i = static_cast<std::size_t>(u);
    const auto j = static_cast<std::size_t>(v - a);
    const EntPair& left = sr[i];
    const EntPair& right = rd[j];
    sr_used[i] = 1;
    rd_used[j] = 1;
    const bool ok = uniform01(rng) < success.swap_success_p;
    SwapRecord rec{left.id, right.id, ok, std::nullopt};
    freed.push_back({NodeSide::RepeaterSr, left.right_slot});
    freed.push_back({NodeSide::RepeaterRd, right.left_slot});
    if (ok) {
      EntPair e2e;
      e2e.id = next_id++;
      e2e.span = Span::E2E;
      e2e.left_slot = left.left_slot;
      e2e.right_slot = right.right_slot;
      e2e.fidelity = swap_fidelity(left.fidelity, right.fidelity);
      e2e.birth_slot = std::min(left.birth_slot, right.birth_slot);
      e2e.purified = false;
      rec.output = e2e.id;
      out.e2e.push_back(e2e);
    } else {
      freed.push_back({NodeSide::Source, left.left_slot});
      freed.push_back({NodeSide::Destination, right.right_slot});
    }
    out.records.push_back(rec);
  }
  for (std::size_t i = 0; i < sr.size(); ++i) {
    if (!sr_used[i]) out.leftover_sr.push_back(sr[i]);
  }
  for (std::size_t j = 0; j < rd.size(); ++j) {
    if (!rd_used[j]) out.leftover_rd.push_back(rd[j]);
  }
  return out;
}

inline PairId first_free_id(const NetworkSnapshot& snapshot) {
  PairId next = 1;
  for (const auto& p : snapshot.sr_pairs) next = std::max(next, p.id + 1);
  for (const auto& p : snapshot.rd_pairs) next = std::max(next, p.id + 1);
  return next;
}

}  // namespace detail

/// Applies one scheduling policy to a snapshot. Deterministic given
/// (snapshot, policy, kind, success model, rng state): matchings are exact
/// and applied in canonical order, and each applied operation consumes
/// exactly one uniform draw whether or not its success model is stochastic.
/// Unmatched pairs are left unused and unconsumed.
inline ScheduleOutcome run_policy(Policy policy,
                                  const NetworkSnapshot& snapshot,
                                  UtilityKind kind,
                                  const SuccessModel& success,
                                  std::mt19937_64& rng,
                                  const PolicyOptions& options = {}) {
  snapshot.validate();
  success.validate();
  if (options.max_purifications_per_link.has_value() &&
      *options.max_purifications_per_link < 0) {
    throw std::invalid_argument("max_purifications_per_link must be >= 0");
  }

  ScheduleOutcome out;
  PairId next_id = detail::first_free_id(snapshot);
  const auto cap = options.max_purifications_per_link;

  switch (policy) {
    case Policy::PurifyThenSwap: {
      auto sr_stage = detail::apply_purification_stage(
          snapshot.sr_pairs, kind, success, cap, next_id, out.freed_slots,
          rng);
      auto rd_stage = detail::apply_purification_stage(
          snapshot.rd_pairs, kind, success, cap, next_id, out.freed_slots,
          rng);
      out.purifications = std::move(sr_stage.records);
      out.purifications.insert(out.purifications.end(),
                               rd_stage.records.begin(),
                               rd_stage.records.end());
      auto swap_stage = detail::apply_swap_stage(
          sr_stage.survivors, rd_stage.survivors, kind, success, next_id,
          out.freed_slots, rng);
      out.e2e_pairs = std::move(swap_stage.e2e);
      out.swaps = std::move(swap_stage.records);
      out.sr_survivors = std::move(swap_stage.leftover_sr);
      out.rd_survivors = std::move(swap_stage.leftover_rd);
      break;
    }
    case Policy::SwapThenPurify: {
      auto swap_stage = detail::apply_swap_stage(
          snapshot.sr_pairs, snapshot.rd_pairs, kind, success, next_id,
          out.freed_slots, rng);
      out.swaps = std::move(swap_stage.records);
      out.sr_survivors = std::move(swap_stage.leftover_sr);
      out.rd_survivors = std::move(swap_stage.leftover_rd);
      auto pur_stage = detail::apply_purification_stage(
          swap_stage.e2e, kind, success, cap, next_id, out.freed_slots, rng);
      out.e2e_pairs = std::move(pur_stage.survivors);
      out.purifications = std::move(pur_stage.records);
      break;
    }
    case Policy::SwapOnly: {
      auto swap_stage = detail::apply_swap_stage(
          snapshot.sr_pairs, snapshot.rd_pairs, kind, success, next_id,
          out.freed_slots, rng);
      out.e2e_pairs = std::move(swap_stage.e2e);
      out.swaps = std::move(swap_stage.records);
      out.sr_survivors = std::move(swap_stage.leftover_sr);
      out.rd_survivors = std::move(swap_stage.leftover_rd);
      break;
    }
  }
  return out;
}

}  // namespace entsched
