#pragma once

#include <cstdint>
#include <vector>

#include "rigwalk/model.hpp"

namespace rigwalk {

// Cover-time rate constants. lambda1 backs the lower-bound horizon and only
// exists when ln(A a + 1) < np, which fails at small n; that state is explicit
// here, never a silent NaN.
struct LambdaFamily {
  enum class L1State { defined, near_boundary, undefined };

  double lambda = 0.0;   // ln(np / ln(a+1))
  double lambda0 = 0.0;  // (1 + eps_n) lambda
  double lambda1 = 0.0;  // ln(np / ln(A a + 1)); valid only if state != undefined
  L1State lambda1_state = L1State::undefined;
  double a = 0.0;        // ((c-1)/c)(e^{np} - 1)
  double A = 0.0;        // exp(10 ln ln n / ((c-1) ln n))
  double eps_n = 0.0;    // ln ln n / ln n
  double x = 0.0;        // mp e^{-np}, with mp = c ln n / (1 - e^{-np})
  double y = 0.0;        // np e^{-lambda}
  double y1 = 0.0;       // np e^{-lambda1}; valid only if state != undefined
};

// ln S(k,i), Stirling numbers of the second kind, for 1 <= i <= k <= 2000.
// Log-space recurrence over a process-wide memoized table; the table verifies
// itself against exact integers for k <= 25 on first build.
double stirling2_log(uint32_t k, uint32_t i);

// Expected count of vertices with degree k built from i attributes:
//   dbar(k,i) = S(k,i)/k! * (mp e^{-np})^i * (np)^k * n^{1-c},
// evaluated as a sum of logs. dbar_k sums over i = 1..k.
double dbar(uint32_t k, uint32_t i, const DerivedQuantities& q);
double dbar_k(uint32_t k, const DerivedQuantities& q);

// n may be any real >= 8 (only ln n and ln ln n enter; the checks are
// meaningful far beyond addressable sizes).
LambdaFamily lambda_family(double n, double c, double np);

// Principal cover-time term lambda * kappa * c * n * ln n, plus the window
// endpoints t0 = lambda0 m n^2 p^2 and t1 = lambda1 m n^2 p^2.
struct CoverTimes {
  double principal = 0.0;
  double t0 = 0.0;
  double t1 = 0.0;
  bool t1_defined = false;
};
double cover_prediction(const DerivedQuantities& q);
CoverTimes cover_times(const DerivedQuantities& q);

// Erdős–Rényi cover-time predictions: ln(c/(c-1)) c n ln n at multiplier c,
// and the same formula at the density-matched multiplier cbar.
double er_cover_prediction(double n, double c);
double er_same_density_prediction(const DerivedQuantities& q);

// lambda(np,c) / ln(cbar/(cbar-1)) with cbar = kappa(np) * c; the rate-constant
// ratio behind the figure1 CSV, > 1 everywhere.
double figure1_ratio(double np, double c);

struct Fact5Result {
  double lambda = 0.0;
  double lower = 0.0;        // ln(c kappa / (c kappa - 1))
  double upper = 0.0;        // ln(c / (c-1))
  bool positive = false;     // (i)   lambda > 0
  bool upper_2lnln = false;  // (ii)  lambda <= 2 ln ln n
  bool small_c_lower = true; // (iii) c-1 <= (ln n)^{-1/3}  =>  lambda >= (ln ln n)/4
  bool sandwich = false;     // (vi)  lower < lambda < upper
  bool lambda1_defined = false;
  double lambda1_rel_gap = 0.0;  // (v) |lambda1 - lambda| / lambda when defined
  bool pass = false;
};
Fact5Result fact5_check(double np, double c, double n);

struct Fact6Result {
  double sum = 0.0;            // sum_{k>=i} S(k,i) y^k / (k! k), truncated
  double identity_lhs = 0.0;   // sum_{k>=i} S(k,i) y^k / k!
  double identity_rhs = 0.0;   // (e^y - 1)^i / i!
  bool bounds_ok = false;
  bool identity_ok = false;
  bool second_regime = false;  // e^y - 1 < 1/2: the sharper pair also applies
  double tail_ratio = 0.0;     // last kept term / sum (recorded truncation error)
  uint32_t k_cut = 0;          // truncation index i + ceil(2 e y i) + 40, capped at 2000
};
Fact6Result fact6_sums(double y, uint32_t i, double tol = 1e-9);

// Exact-integer verification of the Stirling inequalities
//   C(k,i) i^{k-i} / 2 >= S(k,i) >= S(k,t) k^{2(t-i)}
//   S(k,i) >= i^{h-1} S(k-h+1,i) >= i^{h-1} S(k-h,i-1)
// for 1 <= t < i <= k <= 60, 1 <= h <= k-i+1.
bool stirling_inequalities_check(uint32_t k, uint32_t i, uint32_t t, uint32_t h);

// Degree bands over k = 1..delta and the special index set I:
//   K1 = {1..20 : dbar_k <= ln ln n},  K2 = {21..delta : dbar_k <= ln^2 n},
//   K3 = the rest,  I = {i0 <= k <= k0 : dbar(k, i0) >= i0^2}.
struct DegreeBands {
  std::vector<uint32_t> K1, K2, K3, I;
};
DegreeBands degree_bands(const DerivedQuantities& q);

struct TheoryReport {
  LambdaFamily lf;
  CoverTimes cover;
  double er_prediction_same_c = 0.0;
  double er_prediction_same_density = 0.0;
  double figure1_ratio = 0.0;
  std::vector<double> dbar_table;  // dbar_table[k] for k = 1..delta; [0] unused
  DegreeBands bands;
};
TheoryReport theory_report(const DerivedQuantities& q);

}  // namespace rigwalk
