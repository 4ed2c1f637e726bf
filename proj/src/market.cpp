#include "surgeflow/market.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "surgeflow/errors.hpp"

namespace surgeflow {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

struct Assignment {
  std::vector<std::size_t> col_of_row;
  std::vector<Rational> row_potential;
  std::vector<Rational> col_potential;
};

// Maximum-weight perfect matching on a square matrix (Hungarian method,
// shortest augmenting paths). Returns dual potentials with
// row + col >= w everywhere and equality on the matching.
Assignment hungarian_max(const std::vector<std::vector<Rational>>& w) {
  const std::size_t n = w.size();
  // Minimize cost = -w. 1-based arrays, column 0 is the virtual start.
  std::vector<Rational> u(n + 1, Rational(0)), v(n + 1, Rational(0));
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::optional<Rational>> minv(n + 1);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      std::size_t i0 = p[j0], j1 = 0;
      std::optional<Rational> delta;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Rational cur = -w[i0 - 1][j - 1] - u[i0] - v[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = *minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += *delta;
          v[j] -= *delta;
        } else {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  Assignment out;
  out.col_of_row.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j]) out.col_of_row[p[j] - 1] = j - 1;
  }
  // For cost c = -w: u_i + v_j <= c_ij. Negate to get the max-weight cover.
  out.row_potential.resize(n);
  out.col_potential.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.row_potential[i] = -u[i + 1];
  for (std::size_t j = 0; j < n; ++j) out.col_potential[j] = -v[j + 1];
  return out;
}

// Kuhn's augmenting path on a boolean graph.
bool augment(std::size_t r, const std::vector<std::vector<std::size_t>>& adj, std::vector<std::size_t>& row_of_col,
             std::vector<char>& visited) {
  for (std::size_t c : adj[r]) {
    if (visited[c]) continue;
    visited[c] = 1;
    if (row_of_col[c] == kNone || augment(row_of_col[c], adj, row_of_col, visited)) {
      row_of_col[c] = r;
      return true;
    }
  }
  return false;
}

bool has_perfect_matching(const std::vector<std::vector<std::size_t>>& adj, std::size_t cols) {
  std::vector<std::size_t> row_of_col(cols, kNone);
  for (std::size_t r = 0; r < adj.size(); ++r) {
    std::vector<char> visited(cols, 0);
    if (!augment(r, adj, row_of_col, visited)) return false;
  }
  return true;
}

void check_matching(const UnitDemandMarket& mkt, const Matching& g) {
  if (g.item_of.size() != mkt.bidder_count()) throw InputError("matching size differs from bidder count");
  std::vector<char> taken(mkt.item_count(), 0);
  for (const auto& it : g.item_of) {
    if (!it) continue;
    if (*it >= mkt.item_count()) throw InputError("matching refers to unknown item");
    if (taken[*it]) throw InputError("item " + mkt.items()[*it] + " assigned twice");
    taken[*it] = 1;
  }
}

// Exhaustive best welfare over bidders in `active`; records the
// lexicographically first optimal choice vector when `best_choice` is given.
Rational enumerate_best(const UnitDemandMarket& mkt, const std::vector<char>& active,
                        std::vector<std::size_t>* best_choice) {
  const std::size_t n = mkt.bidder_count();
  const std::size_t m = mkt.item_count();
  std::vector<char> used(m, 0);
  std::vector<std::size_t> choice(n, kNone);
  std::optional<Rational> best;
  Rational acc = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == n) {
      if (!best || acc > *best) {
        best = acc;
        if (best_choice) *best_choice = choice;
      }
      return;
    }
    if (active[b]) {
      for (std::size_t j = 0; j < m; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        choice[b] = j;
        acc += mkt.value(b, j);
        rec(b + 1);
        acc -= mkt.value(b, j);
        used[j] = 0;
      }
    }
    choice[b] = kNone;
    rec(b + 1);
  };
  rec(0);
  return *best;
}

}  // namespace

UnitDemandMarket::UnitDemandMarket(std::vector<std::string> bidders, std::vector<std::string> items,
                                   std::vector<std::vector<Rational>> valuation)
    : bidders_(std::move(bidders)), items_(std::move(items)), valuation_(std::move(valuation)) {
  if (valuation_.size() != bidders_.size()) throw InputError("valuation rows must match bidder count");
  for (const auto& row : valuation_) {
    if (row.size() != items_.size()) throw InputError("valuation columns must match item count");
  }
  if (std::set<std::string>(bidders_.begin(), bidders_.end()).size() != bidders_.size()) {
    throw InputError("duplicate bidder id");
  }
  if (std::set<std::string>(items_.begin(), items_.end()).size() != items_.size()) {
    throw InputError("duplicate item id");
  }
}

std::optional<std::size_t> Matching::bidder_of(std::size_t item) const {
  for (std::size_t b = 0; b < item_of.size(); ++b) {
    if (item_of[b] == item) return b;
  }
  return std::nullopt;
}

Rational matching_welfare(const UnitDemandMarket& mkt, const Matching& g) {
  check_matching(mkt, g);
  Rational total = 0;
  for (std::size_t b = 0; b < g.item_of.size(); ++b) {
    if (g.item_of[b]) total += mkt.value(b, *g.item_of[b]);
  }
  return total;
}

Matching max_weight_matching(const UnitDemandMarket& mkt) {
  const std::size_t n = mkt.bidder_count();
  const std::size_t m = mkt.item_count();
  Matching out;
  out.item_of.assign(n, std::nullopt);
  if (n == 0 || m == 0) return out;
  // Square padding: rows are bidders then m dummy bidders; columns are items
  // then n "stay unmatched" slots. Every padded entry is worth 0.
  const std::size_t size = n + m;
  std::vector<std::vector<Rational>> w(size, std::vector<Rational>(size, Rational(0)));
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t j = 0; j < m; ++j) w[b][j] = mkt.value(b, j);
  }
  Assignment a = hungarian_max(w);
  auto tight = [&](std::size_t r, std::size_t c) { return a.row_potential[r] + a.col_potential[c] == w[r][c]; };

  // Fix bidders one at a time to the smallest option that still admits a
  // perfect matching on tight edges, which keeps the welfare optimal.
  std::vector<std::size_t> fixed(n, kNone);
  std::vector<char> col_taken(size, 0);
  auto feasible = [&](std::size_t upto) {
    std::vector<std::vector<std::size_t>> adj;
    for (std::size_t r = upto; r < size; ++r) {
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c < size; ++c) {
        if (!col_taken[c] && tight(r, c)) cols.push_back(c);
      }
      adj.push_back(std::move(cols));
    }
    return has_perfect_matching(adj, size);
  };
  for (std::size_t b = 0; b < n; ++b) {
    bool placed = false;
    for (std::size_t j = 0; j < m && !placed; ++j) {
      if (col_taken[j] || !tight(b, j)) continue;
      col_taken[j] = 1;
      if (feasible(b + 1)) {
        fixed[b] = j;
        placed = true;
      } else {
        col_taken[j] = 0;
      }
    }
    if (placed) continue;
    // Unmatched: park the bidder on a "stay unmatched" slot.
    for (std::size_t c = m; c < size && !placed; ++c) {
      if (col_taken[c] || !tight(b, c)) continue;
      col_taken[c] = 1;
      if (feasible(b + 1)) {
        placed = true;
      } else {
        col_taken[c] = 0;
      }
    }
    if (!placed) throw ContractViolation("no optimal completion while fixing bidder " + mkt.bidders()[b]);
  }
  for (std::size_t b = 0; b < n; ++b) {
    if (fixed[b] != kNone) out.item_of[b] = fixed[b];
  }
  return out;
}

ClearingPrices minimal_walrasian_prices(const UnitDemandMarket& mkt, const Matching& g) {
  const std::size_t n = mkt.bidder_count();
  const std::size_t m = mkt.item_count();
  Rational welfare = matching_welfare(mkt, g);
  if (welfare != matching_welfare(mkt, max_weight_matching(mkt))) {
    throw ContractViolation("matching does not maximize welfare");
  }
  // Least solution of the lower bounds p_j >= base_j and
  // p_j >= p_a + v_i(j) - v_i(a) for the holder i of a, by longest paths.
  std::vector<Rational> price(m, Rational(0));
  for (std::size_t b = 0; b < n; ++b) {
    if (g.item_of[b]) continue;
    for (std::size_t j = 0; j < m; ++j) price[j] = max_of(price[j], mkt.value(b, j));
  }
  bool changed = true;
  std::size_t rounds = 0;
  while (changed) {
    if (++rounds > m + 1) throw ContractViolation("positive price cycle: matching is not optimal");
    changed = false;
    for (std::size_t b = 0; b < n; ++b) {
      if (!g.item_of[b]) continue;
      const std::size_t a = *g.item_of[b];
      for (std::size_t j = 0; j < m; ++j) {
        Rational cand = price[a] + mkt.value(b, j) - mkt.value(b, a);
        if (cand > price[j]) {
          price[j] = cand;
          changed = true;
        }
      }
    }
  }
  ClearingPrices out{std::move(price)};
  if (!verify_clearing(mkt, g, out).ok()) throw ContractViolation("matching cannot be supported by prices");
  return out;
}

CheckReport verify_clearing(const UnitDemandMarket& mkt, const Matching& g, const ClearingPrices& p) {
  CheckReport report;
  const std::size_t n = mkt.bidder_count();
  const std::size_t m = mkt.item_count();
  check_matching(mkt, g);
  if (p.price.size() != m) {
    report.fail("price vector has " + std::to_string(p.price.size()) + " entries for " + std::to_string(m) + " items");
    return report;
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (p.price[j] < 0) report.fail("item " + mkt.items()[j] + " has negative price");
  }
  std::vector<char> allocated(m, 0);
  for (const auto& it : g.item_of) {
    if (it) allocated[*it] = 1;
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!allocated[j] && p.price[j] != 0) {
      report.fail("unallocated item " + mkt.items()[j] + " has price " + to_string(p.price[j]));
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    Rational held = 0;
    if (g.item_of[b]) held = mkt.value(b, *g.item_of[b]) - p.price[*g.item_of[b]];
    if (held < 0) report.fail("bidder " + mkt.bidders()[b] + " has negative utility " + to_string(held));
    for (std::size_t j = 0; j < m; ++j) {
      Rational alt = mkt.value(b, j) - p.price[j];
      if (alt > held) {
        report.fail("bidder " + mkt.bidders()[b] + " prefers item " + mkt.items()[j] + " by " + to_string(alt - held));
      }
    }
  }
  return report;
}

MarketSolution brute_force_oracle(const UnitDemandMarket& mkt) {
  const std::size_t n = mkt.bidder_count();
  const std::size_t m = mkt.item_count();
  if (n > 7 || m > 7) throw SizeLimitError("brute-force oracle handles at most 7 bidders and 7 items");
  MarketSolution out;
  std::vector<char> active(n, 1);
  std::vector<std::size_t> choice(n, kNone);
  out.welfare = enumerate_best(mkt, active, &choice);
  out.matching.item_of.assign(n, std::nullopt);
  out.prices.price.assign(m, Rational(0));
  for (std::size_t b = 0; b < n; ++b) {
    if (choice[b] == kNone) continue;
    out.matching.item_of[b] = choice[b];
    active[b] = 0;
    Rational without = enumerate_best(mkt, active, nullptr);
    active[b] = 1;
    out.prices.price[choice[b]] = without - (out.welfare - mkt.value(b, choice[b]));
  }
  return out;
}

}  // namespace surgeflow
