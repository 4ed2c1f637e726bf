#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "surgeflow/rational.hpp"
#include "surgeflow/report.hpp"

namespace surgeflow {

/// Bidders that each want at most one item, with quasi-linear utilities.
/// Valuations may be negative.
class UnitDemandMarket {
 public:
  UnitDemandMarket() = default;
  /// valuation[b][i] is bidder b's value for item i. Ids must be unique.
  UnitDemandMarket(std::vector<std::string> bidders, std::vector<std::string> items,
                   std::vector<std::vector<Rational>> valuation);

  std::size_t bidder_count() const { return bidders_.size(); }
  std::size_t item_count() const { return items_.size(); }
  const std::vector<std::string>& bidders() const { return bidders_; }
  const std::vector<std::string>& items() const { return items_; }
  const Rational& value(std::size_t bidder, std::size_t item) const { return valuation_[bidder][item]; }
  const std::vector<std::vector<Rational>>& valuation() const { return valuation_; }

 private:
  std::vector<std::string> bidders_;
  std::vector<std::string> items_;
  std::vector<std::vector<Rational>> valuation_;
};

/// Partial injection bidder -> item.
struct Matching {
  std::vector<std::optional<std::size_t>> item_of;

  std::optional<std::size_t> bidder_of(std::size_t item) const;
  friend bool operator==(const Matching&, const Matching&) = default;
};

struct ClearingPrices {
  std::vector<Rational> price;
  friend bool operator==(const ClearingPrices&, const ClearingPrices&) = default;
};

struct MarketSolution {
  Matching matching;
  ClearingPrices prices;
  Rational welfare;
};

/// Throws InputError if the matching is not an injection over the market.
Rational matching_welfare(const UnitDemandMarket& mkt, const Matching& g);

/// Welfare-maximizing matching; pairs with negative value are never formed.
/// Among optimal matchings returns the lexicographically smallest vector of
/// assigned item indices, with "unmatched" ordered after every item.
Matching max_weight_matching(const UnitDemandMarket& mkt);

/// Pointwise-minimal Walrasian prices supporting g (these are the VCG
/// payments). Throws ContractViolation if g is not welfare-maximizing.
ClearingPrices minimal_walrasian_prices(const UnitDemandMarket& mkt, const Matching& g);

/// Checks that every bidder holds a utility-maximizing option (an item or
/// nothing), prices are nonnegative, and unallocated items are free.
CheckReport verify_clearing(const UnitDemandMarket& mkt, const Matching& g, const ClearingPrices& p);

/// Exhaustive solve for markets up to 7 x 7: enumerates all partial
/// injections and prices each allocated item by its holder's externality.
/// Throws SizeLimitError for larger markets.
MarketSolution brute_force_oracle(const UnitDemandMarket& mkt);

}  // namespace surgeflow
