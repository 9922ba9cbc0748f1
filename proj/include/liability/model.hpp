#pragma once

// Core data model: binary-state environment with one verifiable and one
// unverifiable signal, posterior algebra, efficiency-pattern classification,
// and the critical-precision thresholds where the two pivotal fines cross.

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace liability {

inline constexpr double kRootTol = 1e-12;   // bisection convergence target
inline constexpr int kMaxBisectIters = 200; // hard iteration cap

// A realized signal pair. Components take values -1 or +1.
struct SignalPair {
  int x = 1;
  int y = 1;

  friend bool operator==(const SignalPair&, const SignalPair&) = default;
};

// All four signal pairs, in a fixed iteration order.
inline constexpr std::array<SignalPair, 4> all_signal_pairs() {
  return {SignalPair{-1, -1}, SignalPair{-1, 1}, SignalPair{1, -1},
          SignalPair{1, 1}};
}

// Environment primitives: prior on the good state and the two signal
// precisions. Signals are conditionally independent given the state and
// each matches the state with its own precision.
struct InformationEnvironment {
  double beta;  // prior probability of state +1, in (0,1)
  double p_x;   // verifiable-signal precision, in (1/2,1)
  double p_y;   // unverifiable-signal precision, in (1/2,1)

  InformationEnvironment(double beta_, double px_, double py_)
      : beta(beta_), p_x(px_), p_y(py_) {
    if (!(beta > 0.0 && beta < 1.0))
      throw std::invalid_argument("beta must lie in (0,1), got " +
                                  std::to_string(beta));
    if (!(p_x > 0.5 && p_x < 1.0))
      throw std::invalid_argument("p_x must lie in (1/2,1), got " +
                                  std::to_string(p_x));
    if (!(p_y > 0.5 && p_y < 1.0))
      throw std::invalid_argument("p_y must lie in (1/2,1), got " +
                                  std::to_string(p_y));
  }
};

// Agent population: share of aligned agents and the court's belief
// threshold. The threshold may be supplied directly or derived from the
// loss ratio as 1/(1+L).
struct PopulationModel {
  double gamma;      // probability the agent is aligned, in (0,1)
  double gamma_bar;  // court punishes when its belief falls below this

  PopulationModel(double gamma_, double gamma_bar_)
      : gamma(gamma_), gamma_bar(gamma_bar_) {
    if (!(gamma > 0.0 && gamma < 1.0))
      throw std::invalid_argument("gamma must lie in (0,1), got " +
                                  std::to_string(gamma));
    if (!(gamma_bar > 0.0 && gamma_bar < 1.0))
      throw std::invalid_argument("gamma_bar must lie in (0,1), got " +
                                  std::to_string(gamma_bar));
  }

  static PopulationModel from_loss_ratio(double gamma_, double L) {
    if (!(L > 0.0))
      throw std::invalid_argument("loss ratio must be positive, got " +
                                  std::to_string(L));
    return PopulationModel(gamma_, 1.0 / (1.0 + L));
  }

  // True when the maintained assumption (aligned share above the court
  // threshold) holds; solvers tag results outside it as unsupported.
  bool aligned_majority() const { return gamma > gamma_bar; }
};

// Likelihood of one signal value given the state, for a signal of the given
// precision. value and theta are each -1 or +1.
inline double signal_likelihood(double precision, int value, int theta) {
  return value == theta ? precision : 1.0 - precision;
}

// Joint probability of (theta, pair).
inline double joint_prob(const InformationEnvironment& env, int theta,
                         SignalPair pair) {
  const double prior = theta == 1 ? env.beta : 1.0 - env.beta;
  return prior * signal_likelihood(env.p_x, pair.x, theta) *
         signal_likelihood(env.p_y, pair.y, theta);
}

// Marginal probability of observing the pair.
inline double pair_prob(const InformationEnvironment& env, SignalPair pair) {
  return joint_prob(env, 1, pair) + joint_prob(env, -1, pair);
}

// Posterior probability of state +1 after observing both signals.
inline double posterior(const InformationEnvironment& env, SignalPair pair) {
  const double good = joint_prob(env, 1, pair);
  const double bad = joint_prob(env, -1, pair);
  return good / (good + bad);
}

// Acting is (weakly) efficient at a pair when the posterior favors the good
// state; exact ties count as efficient.
inline bool pair_efficient(const InformationEnvironment& env,
                           SignalPair pair) {
  return posterior(env, pair) >= 0.5;
}

// Which signal realizations make action efficient.
enum class CaseLabel {
  AlwaysEfficient,   // every pair efficient
  EitherPositive,    // one positive signal suffices
  XPivotal,          // efficient exactly when x = +1
  YPivotal,          // efficient exactly when y = +1
  BothPositive,      // only (+1,+1) efficient
  NeverEfficient,    // no pair efficient
};

inline const char* to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::AlwaysEfficient: return "AlwaysEfficient";
    case CaseLabel::EitherPositive: return "EitherPositive";
    case CaseLabel::XPivotal: return "XPivotal";
    case CaseLabel::YPivotal: return "YPivotal";
    case CaseLabel::BothPositive: return "BothPositive";
    case CaseLabel::NeverEfficient: return "NeverEfficient";
  }
  return "?";
}

// Classify the environment by its efficient-pair pattern. Posteriors are
// monotone in each signal, so only the six labeled patterns can occur.
inline CaseLabel classify_case(const InformationEnvironment& env) {
  const bool e_mm = pair_efficient(env, {-1, -1});
  const bool e_mp = pair_efficient(env, {-1, 1});
  const bool e_pm = pair_efficient(env, {1, -1});
  const bool e_pp = pair_efficient(env, {1, 1});

  if (e_mm) {
    // (-1,-1) has the lowest posterior, so everything else is efficient too.
    return CaseLabel::AlwaysEfficient;
  }
  if (e_mp && e_pm) return CaseLabel::EitherPositive;
  if (e_pm) return CaseLabel::XPivotal;   // x alone decides
  if (e_mp) return CaseLabel::YPivotal;   // y alone decides
  if (e_pp) return CaseLabel::BothPositive;
  return CaseLabel::NeverEfficient;
}

// Largest fine at which an aligned-incentives agent still (weakly) acts on a
// pair with posterior mu. Negative values mean the agent already declines at
// a zero fine.
inline double chill_fine(double mu) { return 1.0 / (1.0 - mu) - 2.0; }

// Smallest fine that (weakly) deters a pure-action-motive agent on a pair
// with posterior mu.
inline double deter_fine(double mu) { return 1.0 / (1.0 - mu); }

// Fine that exactly chills the aligned type on the pair (x=-1, y=+1): the
// pivotal pair where the unverifiable signal is positive but the verifiable
// one is negative.
inline double fine_u(const InformationEnvironment& env) {
  return chill_fine(posterior(env, {-1, 1}));
}

// Fine that exactly deters the action-motive type on (x=-1, y=-1): the pair
// where both signals are negative.
inline double fine_b(const InformationEnvironment& env) {
  return deter_fine(posterior(env, {-1, -1}));
}

// Gap between the deterrence fine and the chilling fine. Its sign decides
// whether the court can deter opportunistic action without chilling
// well-meaning action: positive means deterrence is the cheaper goal.
inline double delta(const InformationEnvironment& env) {
  return fine_b(env) - fine_u(env);
}

namespace detail {

// Bisection for a continuous function with a sign change on (lo, hi).
inline double bisect(const std::function<double(double)>& f, double lo,
                     double hi) {
  double flo = f(lo);
  for (int i = 0; i < kMaxBisectIters && hi - lo > kRootTol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

// Verifiable-signal precision at which the fine gap changes sign, holding
// (beta, p_y). The gap increases in p_x, so a root exists only when the gap
// is negative near 1/2; returns nullopt otherwise.
inline std::optional<double> critical_px(double beta, double p_y) {
  auto gap = [&](double px) {
    return delta(InformationEnvironment(beta, px, p_y));
  };
  const double lo = std::nextafter(0.5, 1.0);
  const double hi = std::nextafter(1.0, 0.5);
  if (gap(lo) > 0.0) return std::nullopt;  // positive everywhere
  if (gap(hi) < 0.0) return std::nullopt;  // cannot happen; kept for safety
  return detail::bisect(gap, lo, hi);
}

// Unverifiable-signal precision at which the fine gap changes sign, holding
// (beta, p_x). The gap decreases in p_y from 2 at p_y near 1/2 toward
// negative values near 1, so a root always exists in the open interval.
inline std::optional<double> critical_py(double beta, double p_x) {
  auto gap = [&](double py) {
    return delta(InformationEnvironment(beta, p_x, py));
  };
  const double lo = std::nextafter(0.5, 1.0);
  const double hi = std::nextafter(1.0, 0.5);
  if (gap(lo) < 0.0) return std::nullopt;  // cannot happen; kept for safety
  if (gap(hi) > 0.0) return std::nullopt;
  return detail::bisect(gap, lo, hi);
}

// Interval of verifiable-signal precisions (holding beta, p_y) in which one
// positive signal suffices for efficiency. Empty when the interval closes.
inline std::optional<std::pair<double, double>> case_region_bounds(
    double beta, double p_y) {
  // Lower bounds: (+1,-1) must be efficient and (-1,-1) must not be.
  const double lo_pm =
      (1.0 - beta) * p_y / ((1.0 - beta) * p_y + beta * (1.0 - p_y));
  const double lo_mm =
      beta * (1.0 - p_y) / (beta * (1.0 - p_y) + (1.0 - beta) * p_y);
  // (+1,+1) efficient is implied whenever (+1,-1) is, but keep it explicit.
  const double lo_pp = (1.0 - beta) * (1.0 - p_y) /
                       ((1.0 - beta) * (1.0 - p_y) + beta * p_y);
  // Upper bound: (-1,+1) must stay efficient.
  const double hi_mp = beta * p_y / (beta * p_y + (1.0 - beta) * (1.0 - p_y));

  const double lo = std::max({lo_pm, lo_mm, lo_pp, 0.5});
  const double hi = std::min(hi_mp, 1.0);
  if (!(lo < hi)) return std::nullopt;
  return std::make_pair(lo, hi);
}

}  // namespace liability
