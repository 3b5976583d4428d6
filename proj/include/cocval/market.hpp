#pragma once

#include "cocval/distributions.hpp"

namespace cocval {

// Gross return of the buffer portfolio: a fraction w in the risky asset S1,
// the rest in the risk-less bond.
inline double portfolio_return(double w, double asset_return) {
  return w * asset_return + (1.0 - w);
}

// Claim X1, risky asset S1, weight w in [0,1] and cost-of-capital rate eta > 0.
// X1 and S1 are independent; Z1 = w S1 + 1 - w.
struct MarketSpec {
  Distribution claim;
  Distribution asset;
  double w = 0.0;
  double eta = 0.06;

  MarketSpec(Distribution claim_, Distribution asset_, double w_, double eta_);

  MarketSpec with_weight(double w_) const { return {claim, asset, w_, eta}; }

  double mean_return() const;      // E[Z1]
  double variance_return() const;  // var(Z1) = w^2 var(S1)
  // True when Z1 is almost surely constant (w = 0 or a degenerate asset).
  bool riskless() const;
  // Value of Z1 when riskless().
  double riskless_return() const;
};

}  // namespace cocval
