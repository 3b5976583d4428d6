#include "cocval/market.hpp"

#include <cmath>

#include "cocval/errors.hpp"

namespace cocval {

MarketSpec::MarketSpec(Distribution claim_, Distribution asset_, double w_, double eta_)
    : claim(std::move(claim_)), asset(std::move(asset_)), w(w_), eta(eta_) {
  if (!(w >= 0.0 && w <= 1.0)) throw DomainError("market: w must lie in [0,1]");
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("market: eta must be > 0");
}

double MarketSpec::mean_return() const { return portfolio_return(w, mean(asset)); }

double MarketSpec::variance_return() const { return w == 0.0 ? 0.0 : w * w * variance(asset); }

bool MarketSpec::riskless() const {
  if (w == 0.0) return true;
  if (asset.is<Degenerate>()) return true;
  if (const auto* n = asset.get_if<Normal>()) return n->sd == 0.0;
  return false;
}

double MarketSpec::riskless_return() const {
  if (w == 0.0) return 1.0;
  return portfolio_return(w, mean(asset));
}

}  // namespace cocval
