#pragma once

// Alternative institutional designs built on the same punishment game: an
// information-based punishment standard that conditions on what the actor
// could have known rather than on who they are, ex-ante commitment to a fine
// schedule, screening through expected ex-post punishment, a spectrum of
// partially aligned agent types, and signal structures with state-dependent
// precision or cross-signal correlation. Every solver reports its outcome in
// the same EquilibriumSolution currency as the baseline solver so designs can
// be compared head to head.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liability/equilibrium.hpp"

namespace liability {

enum class MensReaMode {
  Subjective,  // court punishes when it believes the actor was opportunistic
  Objective,   // court punishes when the actor's information was damning
};

// ---------------------------------------------------------------------------
// Objective (information-based) punishment standard
// ---------------------------------------------------------------------------
// The court no longer reasons about the actor's motive. After a bad-state act
// with the contradicting verifiable signal it asks how likely the actor was
// to have privately seen the exculpatory signal,
//   q := P(y = +1 | theta = -1, a = 1, x = -1),
// and punishes exactly when q <= gamma_bar. Acts carrying a positive
// verifiable signal are never punished under this standard.

// Bad-pair action weight of the opportunistic type that holds q exactly at
// the threshold when no aligned agent acts in the slice. The aligned share
// cancels, so this weight depends only on the signal precision and the
// threshold.
inline MixWeight eta1(const InformationEnvironment& env,
                      const PopulationModel& pop) {
  const double raw = (1.0 - env.p_y) * (1.0 - pop.gamma_bar) /
                     (pop.gamma_bar * env.p_y);
  MixWeight w;
  w.raw = raw;
  w.feasible = raw >= 0.0 && raw <= 1.0;
  w.value = std::min(raw, 1.0);
  return w;
}

// Same weight when aligned agents still act on the contradicted-positive
// pair: their extra exculpatory-signal mass must be offset by more bad-pair
// action, inflating the weight by 1/(1 - gamma).
inline MixWeight eta2(const InformationEnvironment& env,
                      const PopulationModel& pop) {
  const double raw = eta1(env, pop).raw / (1.0 - pop.gamma);
  MixWeight w;
  w.raw = raw;
  w.feasible = raw >= 0.0 && raw <= 1.0;
  w.value = std::min(raw, 1.0);
  return w;
}

// Likelihood the court's information standard thresholds on, recomputed from
// a strategy profile: the chance an acting agent in the bad state privately
// saw the exculpatory signal. Returns gamma_bar when nobody acts in the
// slice (off-path convention, mirroring the baseline court).
inline double objective_statistic(const InformationEnvironment& env,
                                  const PopulationModel& pop,
                                  const StrategyProfile& profile, int x) {
  const double a_top = pop.gamma * profile.action(AgentType::Aligned, {x, 1}) +
                       (1.0 - pop.gamma) *
                           profile.action(AgentType::Opportunistic, {x, 1});
  const double a_bot =
      pop.gamma * profile.action(AgentType::Aligned, {x, -1}) +
      (1.0 - pop.gamma) * profile.action(AgentType::Opportunistic, {x, -1});
  const double num = (1.0 - env.p_y) * a_top;
  const double den = num + env.p_y * a_bot;
  if (den <= 0.0) return pop.gamma_bar;
  return num / den;
}

// Why the precision-monotonicity check reached its verdict. The first four
// are sufficient conditions evaluated in order; the last two report the sign
// of the measured welfare jump at the crossing precision when none of them
// applies.
enum class MonotoneGuard {
  CrossingOutsideRegion,     // the pivotal fines cross outside the case region
  PriorOutweighsVerifiable,  // beta > p_x guarantees the jump is upward
  ThresholdBelowMixingRange, // gamma_bar <= 1 - p_y*: both weights clamp
  AlignedShareSufficient,    // threshold-free condition on beta, p_x, gamma
  JumpNonnegative,
  JumpNegative,
};

inline const char* to_string(MonotoneGuard g) {
  switch (g) {
    case MonotoneGuard::CrossingOutsideRegion: return "crossing-outside-region";
    case MonotoneGuard::PriorOutweighsVerifiable:
      return "prior-outweighs-verifiable";
    case MonotoneGuard::ThresholdBelowMixingRange:
      return "threshold-below-mixing-range";
    case MonotoneGuard::AlignedShareSufficient:
      return "aligned-share-sufficient";
    case MonotoneGuard::JumpNonnegative: return "jump-nonnegative";
    case MonotoneGuard::JumpNegative: return "jump-negative";
  }
  return "unknown";
}

// Verdict on whether welfare under the information standard is nondecreasing
// in the unverifiable-signal precision, with the witnesses behind it.
struct PyMonotoneReport {
  bool monotone = true;
  MonotoneGuard guard = MonotoneGuard::JumpNonnegative;
  double py_star = 0.0;  // precision where the two pivotal fines cross
  // p_y interval in which one positive signal suffices for efficiency
  std::optional<std::pair<double, double>> region;
  double jump = 0.0;  // welfare right-limit minus left-limit at py_star
  double eta1_star = 0.0, eta2_star = 0.0;  // mixing weights at the crossing
  double gamma_hat = 0.0;  // aligned share above which the jump is upward
};

// Total welfare under the information standard at the threshold statute, as
// a function of the unverifiable precision, on the side of the crossing
// where aligned agents are fully chilled at x = -1 (weight e1), and on the
// side where they still act on the contradicted-positive pair (weight e2).
namespace detail {
inline double objective_value_chilled(double beta, double p_x, double gamma,
                                      double py, double e1) {
  return beta * (p_x + (1.0 - p_x) * (1.0 - gamma) * (py + (1.0 - py) * e1)) -
         (1.0 - beta) *
             ((1.0 - p_x) + p_x * (1.0 - gamma) * ((1.0 - py) + py * e1));
}
inline double objective_value_unchilled(double beta, double p_x, double gamma,
                                        double py, double e2) {
  return beta *
             (p_x + (1.0 - p_x) * (py + (1.0 - py) * (1.0 - gamma) * e2)) -
         (1.0 - beta) *
             ((1.0 - p_x) + p_x * ((1.0 - py) + py * (1.0 - gamma) * e2));
}
}  // namespace detail

// Decides whether the information-standard optimum is nondecreasing in the
// unverifiable precision for the given prior, verifiable precision, and
// population. The only place welfare can drop is the precision at which the
// two pivotal fines cross; cheap sufficient conditions are tried first, and
// the measured jump decides when none of them fires. env.p_y plays no role.
inline PyMonotoneReport check_py_monotone_objective(
    const InformationEnvironment& env, const PopulationModel& pop) {
  const double beta = env.beta, p_x = env.p_x;
  const double g = pop.gamma, gb = pop.gamma_bar;
  PyMonotoneReport rep;

  const auto star = critical_py(beta, p_x);
  // The efficiency pattern is symmetric under swapping the two precisions,
  // so the p_y interval at fixed p_x reuses the p_x-interval closed forms.
  rep.region = case_region_bounds(beta, p_x);
  if (!star) {  // no interior crossing: nothing to jump over
    rep.monotone = true;
    rep.guard = MonotoneGuard::CrossingOutsideRegion;
    return rep;
  }
  rep.py_star = *star;

  const double e1_raw = (1.0 - rep.py_star) * (1.0 - gb) / (gb * rep.py_star);
  rep.eta1_star = std::min(e1_raw, 1.0);
  rep.eta2_star = std::min(e1_raw / (1.0 - g), 1.0);
  rep.jump = detail::objective_value_unchilled(beta, p_x, g, rep.py_star,
                                               rep.eta2_star) -
             detail::objective_value_chilled(beta, p_x, g, rep.py_star,
                                             rep.eta1_star);

  // Aligned share above which the threshold-free sufficient condition
  // holds; 0 when it holds for every share.
  const double lr = (1.0 - beta) * p_x / (beta * (1.0 - p_x));
  if (lr <= 1.0) {
    rep.gamma_hat = 0.0;
  } else {
    const double den = lr * rep.py_star - (1.0 - rep.py_star);
    rep.gamma_hat = den > 0.0 ? std::min((lr - 1.0) / den, 1.0) : 1.0;
  }

  const bool in_region = rep.region && rep.py_star >= rep.region->first &&
                         rep.py_star <= rep.region->second;
  if (!in_region) {
    rep.monotone = true;
    rep.guard = MonotoneGuard::CrossingOutsideRegion;
  } else if (beta > p_x) {
    rep.monotone = true;
    rep.guard = MonotoneGuard::PriorOutweighsVerifiable;
  } else if (gb <= 1.0 - rep.py_star) {
    rep.monotone = true;
    rep.guard = MonotoneGuard::ThresholdBelowMixingRange;
  } else if (g >= rep.gamma_hat) {
    rep.monotone = true;
    rep.guard = MonotoneGuard::AlignedShareSufficient;
  } else if (rep.jump >= -1e-12) {
    rep.monotone = true;
    rep.guard = MonotoneGuard::JumpNonnegative;
  } else {
    rep.monotone = false;
    rep.guard = MonotoneGuard::JumpNegative;
  }
  return rep;
}

// Designer-preferred outcome under the information standard. The statute is
// either 0 (free pass) or the bad-pair deterrence fine; which mixing weight
// applies at the latter depends on whether that fine also chills aligned
// agents. The stored per-signal court statistic is the recomputed q (the
// threshold value when the slice is empty), not a motive belief.
inline EquilibriumSolution solve_objective_mensrea(
    const InformationEnvironment& env, const PopulationModel& pop) {
  if (classify_case(env) != CaseLabel::EitherPositive)
    throw std::invalid_argument(
        "solve_objective_mensrea requires the one-positive-signal case, "
        "got " +
        std::string(to_string(classify_case(env))));

  const auto spec_lo = detail::slice_spec(env, pop, -1);
  const auto spec_hi = detail::slice_spec(env, pop, 1);
  const auto hi_full = detail::slice_best(spec_hi, 0.0);
  const double T = spec_lo.w1 * env.p_y - spec_lo.w0 * (1.0 - env.p_y);
  const double B = spec_lo.w1 * (1.0 - env.p_y) - spec_lo.w0 * env.p_y;
  const double g = pop.gamma;

  const double fu = fine_u(env);
  const double fb = fine_b(env);
  const bool chilled = fb > fu + kKnifeEdgeTol;
  const MixWeight mix = chilled ? eta1(env, pop) : eta2(env, pop);

  // Free-pass candidate: a zero statute leaves everyone unpunished, aligned
  // agents act on the positive pair, opportunists on both.
  const double w_fp = g * T + (1.0 - g) * (T + B);
  // Threshold-statute candidate: punishment at the bad-pair deterrence fine
  // sustains partial bad-pair action that keeps q exactly at the threshold.
  // An infeasible weight means even full bad-pair action leaves q above the
  // threshold, so the statute never binds and free pass is the outcome.
  double w_fb = -std::numeric_limits<double>::infinity();
  if (mix.feasible) {
    w_fb = chilled ? (1.0 - g) * (T + mix.value * B)
                   : g * T + (1.0 - g) * (T + mix.value * B);
  }

  detail::SliceOutcome lo;
  EquilibriumSolution sol;
  if (w_fb > w_fp + 1e-12) {
    lo.kind = chilled ? detail::SliceKind::DeterChill
                      : detail::SliceKind::MixOpportunist;
    lo.a_al_bot = 0.0;
    lo.a_al_top = chilled ? 0.0 : 1.0;
    lo.a_op_bot = mix.value;
    lo.a_op_top = 1.0;
    lo.fine = fb;
    lo.welfare = w_fb;
    sol = detail::assemble(env, fb, lo, hi_full);
    sol.regime = Regime::DeterAtFb;
  } else {
    lo.kind = detail::SliceKind::FreePass;
    lo.a_al_bot = 0.0;
    lo.a_al_top = 1.0;
    lo.a_op_bot = 1.0;
    lo.a_op_top = 1.0;
    lo.fine = 0.0;
    lo.welfare = w_fp;
    sol = detail::assemble(env, 0.0, lo, hi_full);
    sol.regime = Regime::FreePass;
  }
  sol.court_belief[x_index(-1)] =
      objective_statistic(env, pop, sol.profile, -1);
  sol.court_belief[x_index(1)] = objective_statistic(env, pop, sol.profile, 1);
  sol.knife_edge = std::abs(fb - fu) <= kKnifeEdgeTol;
  sol.supported = pop.aligned_majority();

  const PyMonotoneReport mono = check_py_monotone_objective(env, pop);
  sol.note = std::string("information standard; ") +
             (sol.regime == Regime::FreePass
                  ? "free pass"
                  : (chilled ? "threshold statute chills aligned action"
                             : "threshold statute, aligned agents keep "
                               "acting on the positive pair")) +
             "; precision-monotone=" + (mono.monotone ? "true" : "false");
  return sol;
}

// Dispatch by punishment standard. Subjective mode is the baseline solver
// itself, so the two agree bit for bit.
inline EquilibriumSolution solve_with_standard(const InformationEnvironment& env,
                                               const PopulationModel& pop,
                                               MensReaMode mode) {
  return mode == MensReaMode::Subjective ? solve_optimal(env, pop)
                                         : solve_objective_mensrea(env, pop);
}

// ---------------------------------------------------------------------------
// Commitment to a fine schedule
// ---------------------------------------------------------------------------
// The court commits ex ante to a fine for each verifiable signal and applies
// it to every bad-state act, so no belief consistency constrains the levels
// and indifferent agents resolve the designer's way. Within a slice the
// designer's value only changes when a fine crosses one of the four
// type-by-pair indifference levels, so scanning those levels is exact.

namespace detail {

struct CommittedSlice {
  double fine = 0.0;
  double a_al_bot = 0.0, a_al_top = 0.0;
  double a_op_bot = 0.0, a_op_top = 0.0;
  double welfare = 0.0;
};

inline CommittedSlice commitment_slice_best(const SliceSpec& s) {
  const double T = s.w1 * s.p_y - s.w0 * (1.0 - s.p_y);
  const double B = s.w1 * (1.0 - s.p_y) - s.w0 * s.p_y;
  const double mu_top = s.w1 * s.p_y / (s.w1 * s.p_y + s.w0 * (1.0 - s.p_y));
  const double mu_bot =
      s.w1 * (1.0 - s.p_y) / (s.w1 * (1.0 - s.p_y) + s.w0 * s.p_y);

  std::vector<double> levels{0.0, chill_fine(mu_top), chill_fine(mu_bot),
                             deter_fine(mu_top), deter_fine(mu_bot)};
  std::erase_if(levels, [](double f) { return f < 0.0; });
  std::sort(levels.begin(), levels.end());

  // Action of one type at one pair under committed fine f: strict
  // preferences decide, indifference goes wherever the contribution helps.
  auto act = [](double f, double threshold, double contribution) {
    if (f < threshold - 1e-12) return 1.0;
    if (f > threshold + 1e-12) return 0.0;
    return contribution > 0.0 ? 1.0 : 0.0;
  };

  CommittedSlice best;
  bool have = false;
  for (double f : levels) {
    CommittedSlice c;
    c.fine = f;
    c.a_al_top = act(f, chill_fine(mu_top), s.gamma * T);
    c.a_al_bot = act(f, chill_fine(mu_bot), s.gamma * B);
    c.a_op_top = act(f, deter_fine(mu_top), (1.0 - s.gamma) * T);
    c.a_op_bot = act(f, deter_fine(mu_bot), (1.0 - s.gamma) * B);
    c.welfare = s.gamma * (c.a_al_top * T + c.a_al_bot * B) +
                (1.0 - s.gamma) * (c.a_op_top * T + c.a_op_bot * B);
    if (!have || c.welfare > best.welfare + 1e-12) {
      best = c;
      have = true;
    }
  }
  return best;
}

}  // namespace detail

// Designer-preferred outcome when the court can commit to per-signal fines.
// Fines are committed levels, not belief-driven responses; the stored court
// statistic is the honest motive posterior for reference only.
inline EquilibriumSolution solve_commitment(const InformationEnvironment& env,
                                            const PopulationModel& pop) {
  EquilibriumSolution sol;
  sol.label = classify_case(env);
  double welfare = 0.0;
  for (int x : {-1, 1}) {
    const auto s = detail::slice_spec(env, pop, x);
    const auto c = detail::commitment_slice_best(s);
    sol.profile.action(AgentType::Aligned, {x, -1}) = c.a_al_bot;
    sol.profile.action(AgentType::Aligned, {x, 1}) = c.a_al_top;
    sol.profile.action(AgentType::Opportunistic, {x, -1}) = c.a_op_bot;
    sol.profile.action(AgentType::Opportunistic, {x, 1}) = c.a_op_top;
    sol.profile.punishment(x) = c.fine;
    const auto belief = court_belief_from_profile(env, pop, sol.profile, x);
    sol.court_belief[x_index(x)] = belief.value_or(pop.gamma_bar);
    welfare += c.welfare;
  }
  sol.welfare = welfare;
  sol.f_bar = std::max(sol.profile.punishment(-1), sol.profile.punishment(1));
  sol.knife_edge = sol.label == CaseLabel::EitherPositive &&
                   std::abs(delta(env)) <= kKnifeEdgeTol;
  sol.supported = pop.aligned_majority();
  if (sol.label == CaseLabel::EitherPositive) {
    const double f = sol.profile.punishment(-1);
    if (f == 0.0) {
      sol.regime = Regime::FreePass;
    } else if (std::abs(f - fine_b(env)) <= 1e-9) {
      sol.regime = Regime::DeterAtFb;
    } else if (std::abs(f - fine_u(env)) <= 1e-9) {
      sol.regime = Regime::DeterAtFu;
    } else {
      sol.regime = Regime::CaseSpecific;
    }
  }
  sol.note = "committed per-signal fines; no consistency constraint binds";
  return sol;
}

// ---------------------------------------------------------------------------
// Screening through expected ex-post punishment
// ---------------------------------------------------------------------------
// The court can only condition the expected punishment on what it learns
// after the act. When the bad-pair deterrence fine exceeds the aligned chill
// level, the expected punishment cannot separate the types and the court's
// only useful option is to deter every act on the contradicting verifiable
// signal; otherwise the screening outcome coincides with the baseline
// optimum. A deterministic fine stands in for any randomization with the
// same mean, which risk-neutral agents cannot tell apart.
inline EquilibriumSolution solve_expost_screening(
    const InformationEnvironment& env, const PopulationModel& pop) {
  const double gap = delta(env);
  if (gap <= kKnifeEdgeTol) {
    EquilibriumSolution sol = solve_optimal(env, pop);
    sol.note += (sol.note.empty() ? "" : "; ");
    sol.note += "expected-punishment screening matches the baseline optimum";
    return sol;
  }

  // Full deterrence at x = -1: the expected punishment sits at the level
  // that keeps even the most willing actor out; indifference resolves to
  // inaction the designer's way.
  const double f_det = deter_fine(posterior(env, {-1, 1}));
  detail::SliceOutcome lo;
  lo.kind = detail::SliceKind::NoAction;
  lo.fine = f_det;
  lo.belief = pop.gamma_bar;
  lo.on_path = false;
  lo.welfare = 0.0;
  const auto hi = detail::slice_best(detail::slice_spec(env, pop, 1), f_det);
  EquilibriumSolution sol = detail::assemble(env, f_det, lo, hi);
  sol.regime = Regime::CaseSpecific;
  sol.knife_edge = false;
  sol.supported = pop.aligned_majority();
  sol.note =
      "expected-punishment screening: full deterrence on the contradicting "
      "verifiable signal";
  return sol;
}

// ---------------------------------------------------------------------------
// No punishment for inaction
// ---------------------------------------------------------------------------

// Court posterior that an agent who did NOT act is aligned, given the
// verifiable signal. When nobody ever abstains the conditioning event is
// empty and the prior share is kept.
inline double inaction_alignment_belief(const InformationEnvironment& env,
                                        const PopulationModel& pop,
                                        const StrategyProfile& profile,
                                        int x) {
  const double w1 = env.beta * signal_likelihood(env.p_x, x, 1);
  const double w0 = (1.0 - env.beta) * signal_likelihood(env.p_x, x, -1);
  const double pt1 = w1 / (w1 + w0);  // P(theta = 1 | x)
  auto stay_out = [&](AgentType t) {
    double p = 0.0;
    for (int y : {-1, 1}) {
      const double py_1 = signal_likelihood(env.p_y, y, 1);
      const double py_0 = signal_likelihood(env.p_y, y, -1);
      const double a = profile.action(t, {x, y});
      p += (pt1 * py_1 + (1.0 - pt1) * py_0) * (1.0 - a);
    }
    return p;
  };
  const double num = pop.gamma * stay_out(AgentType::Aligned);
  const double den =
      num + (1.0 - pop.gamma) * stay_out(AgentType::Opportunistic);
  if (den <= 0.0) return pop.gamma;
  return num / den;
}

// Audits the claim that punishing inaction can never tempt the court: under
// any profile in which aligned agents act no more than opportunists do,
// abstaining only raises the court's belief in alignment, so the posterior
// stays at or above the prior share (and hence above the threshold).
inline bool verify_no_inaction_punishment(const InformationEnvironment& env,
                                          const PopulationModel& pop,
                                          const StrategyProfile& profile) {
  for (int x : {-1, 1})
    if (inaction_alignment_belief(env, pop, profile, x) <
        pop.gamma - 1e-12)
      return false;
  return true;
}

inline bool verify_no_inaction_punishment(const InformationEnvironment& env,
                                          const PopulationModel& pop,
                                          const EquilibriumSolution& sol) {
  return verify_no_inaction_punishment(env, pop, sol.profile);
}

// ---------------------------------------------------------------------------
// A spectrum of partially aligned types
// ---------------------------------------------------------------------------
// Type k weighs the state by lambda^k: utility a * (lambda^k * theta +
// (1 - lambda^k)). lambda = 1 is the baseline aligned type, lambda = 0 the
// opportunist; intermediate weights interpolate.

struct TypeSpectrum {
  std::vector<double> lambda;  // ascending alignment weights, 0 first, 1 last
  std::vector<double> weight;  // prior probabilities, sum to 1

  TypeSpectrum(std::vector<double> lambdas, std::vector<double> weights)
      : lambda(std::move(lambdas)), weight(std::move(weights)) {
    if (lambda.size() < 2)
      throw std::invalid_argument("type spectrum needs at least two types");
    if (lambda.size() != weight.size())
      throw std::invalid_argument(
          "type spectrum needs one weight per alignment value");
    if (lambda.front() != 0.0 || lambda.back() != 1.0)
      throw std::invalid_argument(
          "alignment weights must start at 0 and end at 1");
    double total = 0.0;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
      if (k > 0 && lambda[k] < lambda[k - 1])
        throw std::invalid_argument("alignment weights must be ascending");
      if (!(weight[k] >= 0.0))
        throw std::invalid_argument("type weights must be nonnegative");
      total += weight[k];
    }
    if (std::abs(total - 1.0) > 1e-12)
      throw std::invalid_argument("type weights must sum to 1");
  }

  std::size_t size() const { return lambda.size(); }
};

// Belief above which a weight-lambda agent (weakly) prefers acting under an
// expected fine. Reduces to the two baseline cutoffs at lambda = 1 and 0.
inline double ktype_cutoff_belief(double lambda, double fine) {
  if (fine < 0.0)
    throw std::invalid_argument("fine must be nonnegative, got " +
                                std::to_string(fine));
  const double z = fine + 2.0 * lambda;
  if (z <= 1.0) return 0.0;
  return 1.0 - 1.0 / z;
}

// Largest fine at which a weight-lambda agent still acts at belief mu (its
// indifference level; ties act). Negative when the agent stays out even
// unpunished.
inline double ktype_action_fine(double lambda, double mu) {
  return 1.0 / (1.0 - mu) - 2.0 * lambda;
}

struct KTypeFines {
  // 1-based index of the highest (most aligned) type still acting on the
  // contradicted-positive / both-negative pair at the queried fine; 0 when
  // nobody acts there.
  int k_top = 0;
  int k_bot = 0;
  std::vector<double> fine_top;  // per-type indifference fine on (x,y)=(-1,+1)
  std::vector<double> fine_bot;  // per-type indifference fine on (-1,-1)
};

// Per-type pivotal fines on the two x = -1 pairs plus the marginal acting
// types at a queried fine. Action fines fall as alignment rises, so the
// acting set at any fine is a prefix of the spectrum.
inline KTypeFines ktype_critical_fines(const InformationEnvironment& env,
                                       const TypeSpectrum& spectrum,
                                       double fine) {
  if (fine < 0.0)
    throw std::invalid_argument("fine must be nonnegative, got " +
                                std::to_string(fine));
  const double mu_top = posterior(env, {-1, 1});
  const double mu_bot = posterior(env, {-1, -1});
  KTypeFines out;
  for (double l : spectrum.lambda) {
    out.fine_top.push_back(ktype_action_fine(l, mu_top));
    out.fine_bot.push_back(ktype_action_fine(l, mu_bot));
  }
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    if (fine <= out.fine_top[k]) out.k_top = static_cast<int>(k) + 1;
    if (fine <= out.fine_bot[k]) out.k_bot = static_cast<int>(k) + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// State-dependent and correlated signal structures
// ---------------------------------------------------------------------------

// Signal structure extension: either the unverifiable signal copies the
// verifiable one with some probability (falling back to its own precision),
// or both signals have precisions that differ across states. Exactly one
// block is active per instance.
struct DependentSignalSpec {
  enum class Kind { Correlated, Asymmetric };
  Kind kind = Kind::Correlated;

  // correlated block
  double p_x = 0.75, p_y = 0.75, rho = 0.0;
  // asymmetric block: precision of each signal in each state
  double px_pos = 0.75, px_neg = 0.75, py_pos = 0.75, py_neg = 0.75;

  static DependentSignalSpec correlated(double p_x, double p_y, double rho) {
    auto check = [](double p, const char* name) {
      if (!(p > 0.5 && p < 1.0))
        throw std::invalid_argument(std::string(name) +
                                    " must lie in (1/2,1), got " +
                                    std::to_string(p));
    };
    check(p_x, "p_x");
    check(p_y, "p_y");
    if (!(rho >= 0.0 && rho <= 1.0))
      throw std::invalid_argument("rho must lie in [0,1], got " +
                                  std::to_string(rho));
    DependentSignalSpec s;
    s.kind = Kind::Correlated;
    s.p_x = p_x;
    s.p_y = p_y;
    s.rho = rho;
    return s;
  }

  static DependentSignalSpec asymmetric(double px_pos, double px_neg,
                                        double py_pos, double py_neg) {
    auto check = [](double p, const char* name) {
      if (!(p >= 0.5 && p < 1.0))
        throw std::invalid_argument(std::string(name) +
                                    " must lie in [1/2,1), got " +
                                    std::to_string(p));
    };
    check(px_pos, "px_pos");
    check(px_neg, "px_neg");
    check(py_pos, "py_pos");
    check(py_neg, "py_neg");
    DependentSignalSpec s;
    s.kind = Kind::Asymmetric;
    s.px_pos = px_pos;
    s.px_neg = px_neg;
    s.py_pos = py_pos;
    s.py_neg = py_neg;
    return s;
  }

  double x_likelihood(int x, int theta) const {
    const double p = kind == Kind::Correlated
                         ? p_x
                         : (theta == 1 ? px_pos : px_neg);
    return x == theta ? p : 1.0 - p;
  }

  // P(y | theta, x). In the correlated block y copies x with probability
  // rho and is otherwise drawn by its own precision; in the asymmetric
  // block y is conditionally independent of x.
  double y_likelihood(int theta, int x, int y) const {
    if (kind == Kind::Asymmetric) {
      const double p = theta == 1 ? py_pos : py_neg;
      return y == theta ? p : 1.0 - p;
    }
    const double base = y == theta ? p_y : 1.0 - p_y;
    return rho * (y == x ? 1.0 : 0.0) + (1.0 - rho) * base;
  }

  // P(theta = 1 | x, y). A pair with no mass (full copying with y != x)
  // falls back to the verifiable-signal-only posterior.
  double pair_posterior(double beta, SignalPair p) const {
    const double w1 =
        beta * x_likelihood(p.x, 1) * y_likelihood(1, p.x, p.y);
    const double w0 = (1.0 - beta) * x_likelihood(p.x, -1) *
                      y_likelihood(-1, p.x, p.y);
    if (w1 + w0 <= 0.0) {
      const double v1 = beta * x_likelihood(p.x, 1);
      const double v0 = (1.0 - beta) * x_likelihood(p.x, -1);
      return v1 / (v1 + v0);
    }
    return w1 / (w1 + w0);
  }
};

// Gap between the bad-pair deterrence fine and the aligned chill fine under
// the extended signal structure, computed from the extended posteriors
// rather than from any closed-form constant.
inline double delta_extended(const DependentSignalSpec& spec, double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("beta must lie in (0,1), got " +
                                std::to_string(beta));
  const double mu_bot = spec.pair_posterior(beta, {-1, -1});
  const double mu_top = spec.pair_posterior(beta, {-1, 1});
  return deter_fine(mu_bot) - chill_fine(mu_top);
}

// Cross-check bracket for the correlated block: the relative exculpatory
// likelihood term that multiplies the prior/verifiable odds in the gap.
// Nonpositive on all of [0,1], reflecting that correlation only weakens the
// unverifiable signal's separating power.
inline double correlated_bracket(double p_y, double rho) {
  return (1.0 - (1.0 - rho) * p_y) / (rho + p_y * (1.0 - rho)) -
         p_y / (1.0 - p_y);
}

}  // namespace liability
