#pragma once

// Designer-preferred equilibria of the punishment game: a court caps the
// fine at f_bar, observes only the verifiable signal and the act, and
// punishes when its belief that the actor was aligned drops below the
// threshold. Agents of two motives decide whether to act after seeing both
// signals. The designer picks the cap that maximizes expected welfare
// E[a * theta] over the equilibria the court's incentives allow.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <string>
#include <vector>

#include "liability/model.hpp"

namespace liability {

enum class AgentType {
  Aligned,        // payoff a * theta: wants to act only in the good state
  Opportunistic,  // payoff a: wants to act regardless of the state
};

// Belief above which an agent of the given type (weakly) prefers acting
// when facing an expected fine `fine` upon punishment. Ties act.
inline double cutoff_belief(AgentType type, double fine) {
  if (fine < 0.0)
    throw std::invalid_argument("fine must be nonnegative, got " +
                                std::to_string(fine));
  if (type == AgentType::Aligned) return (fine + 1.0) / (fine + 2.0);
  return fine <= 1.0 ? 0.0 : (fine - 1.0) / fine;
}

inline int pair_index(SignalPair p) {
  return (p.x > 0 ? 2 : 0) + (p.y > 0 ? 1 : 0);
}
inline int x_index(int x) { return x > 0 ? 1 : 0; }

// Behavior of both agent types plus the court's punishment rule. Punishment
// conditions only on the verifiable signal.
struct StrategyProfile {
  // action_prob[type][pair_index]
  std::array<std::array<double, 4>, 2> action_prob{};
  // expected fine imposed after a bad-state act, by verifiable signal
  std::array<double, 2> fine{};

  double action(AgentType t, SignalPair p) const {
    return action_prob[static_cast<int>(t)][pair_index(p)];
  }
  double& action(AgentType t, SignalPair p) {
    return action_prob[static_cast<int>(t)][pair_index(p)];
  }
  double punishment(int x) const { return fine[x_index(x)]; }
  double& punishment(int x) { return fine[x_index(x)]; }

  // Probabilities in [0,1]; within a pair, any aligned action implies full
  // opportunistic action (the opportunistic cutoff is strictly lower).
  bool valid() const {
    for (const auto& row : action_prob)
      for (double a : row)
        if (!(a >= 0.0 && a <= 1.0)) return false;
    for (SignalPair p : all_signal_pairs()) {
      if (action(AgentType::Aligned, p) > 1e-12 &&
          action(AgentType::Opportunistic, p) < 1.0 - 1e-12)
        return false;
    }
    return true;
  }

  int mixed_entry_count() const {
    int n = 0;
    for (const auto& row : action_prob)
      for (double a : row)
        if (a > 1e-12 && a < 1.0 - 1e-12) ++n;
    return n;
  }
};

// Which of the canonical outcomes the optimal cap implements when one
// positive signal suffices for efficiency; CaseSpecific elsewhere.
enum class Regime { FreePass, DeterAtFb, DeterAtFu, CaseSpecific };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::FreePass: return "FreePass";
    case Regime::DeterAtFb: return "DeterAtFb";
    case Regime::DeterAtFu: return "DeterAtFu";
    case Regime::CaseSpecific: return "CaseSpecific";
  }
  return "?";
}

struct EquilibriumSolution {
  double f_bar = 0.0;
  StrategyProfile profile;
  // court_belief[x_index]: probability the court assigns to the aligned
  // type after a bad-state act with that verifiable signal (threshold value
  // by convention when the event is off path).
  std::array<double, 2> court_belief{};
  double welfare = 0.0;
  Regime regime = Regime::CaseSpecific;
  CaseLabel label = CaseLabel::EitherPositive;
  bool knife_edge = false;  // the two pivotal fines coincide within 1e-10
  bool supported = true;    // aligned share above the court threshold
  std::string note;
};

// Mixing weight with feasibility information: `raw` is the value solving the
// court-indifference equation; it is usable as a probability only when <= 1.
struct MixWeight {
  double raw = 0.0;
  bool feasible = false;
  double value = 0.0;  // raw when feasible
};

// Opportunistic mixing weight on the both-negative pair that holds the court
// exactly at its threshold when the aligned type acts only on the positive
// unverifiable signal.
inline MixWeight eta_b(const InformationEnvironment& env,
                       const PopulationModel& pop) {
  const double raw = (1.0 - env.p_y) * (pop.gamma - pop.gamma_bar) /
                     (pop.gamma_bar * (1.0 - pop.gamma) * env.p_y);
  MixWeight w;
  w.raw = raw;
  w.feasible = raw >= 0.0 && raw <= 1.0;
  w.value = w.feasible ? raw : 1.0;
  return w;
}

// Aligned mixing weight on the positive-unverifiable pair that holds the
// court exactly at its threshold when the opportunistic type acts only
// there. Always a valid probability when the aligned share is above the
// threshold.
inline MixWeight eta_u(const PopulationModel& pop) {
  const double raw = pop.gamma_bar * (1.0 - pop.gamma) /
                     (pop.gamma * (1.0 - pop.gamma_bar));
  MixWeight w;
  w.raw = raw;
  w.feasible = raw >= 0.0 && raw <= 1.0;
  w.value = w.feasible ? raw : 1.0;
  return w;
}

// Court's Bayesian belief that an observed bad-state act with verifiable
// signal x came from an aligned agent. Empty when the conditioning event has
// zero probability under the profile.
inline std::optional<double> court_belief_from_profile(
    const InformationEnvironment& env, const PopulationModel& pop,
    const StrategyProfile& profile, int x) {
  double aligned_mass = 0.0, opp_mass = 0.0;
  for (int y : {-1, 1}) {
    const double ly = signal_likelihood(env.p_y, y, -1);
    aligned_mass += ly * profile.action(AgentType::Aligned, {x, y});
    opp_mass += ly * profile.action(AgentType::Opportunistic, {x, y});
  }
  const double num = pop.gamma * aligned_mass;
  const double den = num + (1.0 - pop.gamma) * opp_mass;
  if (den <= 0.0) return std::nullopt;
  return num / den;
}

// Expected welfare E[a * theta] of a profile.
inline double expected_welfare(const InformationEnvironment& env,
                               const PopulationModel& pop,
                               const StrategyProfile& profile) {
  double w = 0.0;
  for (SignalPair p : all_signal_pairs()) {
    for (int theta : {-1, 1}) {
      const double mass = joint_prob(env, theta, p);
      const double mix = pop.gamma * profile.action(AgentType::Aligned, p) +
                         (1.0 - pop.gamma) *
                             profile.action(AgentType::Opportunistic, p);
      w += mass * theta * mix;
    }
  }
  return w;
}

// Welfare conditional on the agent's type: (aligned, opportunistic).
inline std::pair<double, double> type_conditional_welfare(
    const InformationEnvironment& env, const StrategyProfile& profile) {
  double wa = 0.0, wo = 0.0;
  for (SignalPair p : all_signal_pairs()) {
    for (int theta : {-1, 1}) {
      const double mass = joint_prob(env, theta, p);
      wa += mass * theta * profile.action(AgentType::Aligned, p);
      wo += mass * theta * profile.action(AgentType::Opportunistic, p);
    }
  }
  return {wa, wo};
}

namespace detail {

// One verifiable-signal slice of the game. w1/w0 are the unnormalized masses
// of the good/bad state within the slice (they already include the prior and
// the verifiable-signal likelihoods), so slice welfare contributions add up
// across slices to the total.
struct SliceSpec {
  double w1 = 0.0;
  double w0 = 0.0;
  double p_y = 0.75;
  double gamma = 0.5;
  double gamma_bar = 0.5;
};

enum class SliceKind {
  FullAction,      // everyone acts on both pairs, no punishment needed
  FreePass,        // aligned act on the positive pair, opportunists on both
  MixOpportunist,  // court held at threshold by partial both-negative action
  MixAligned,      // court held at threshold by partial aligned action
  DeterChill,      // cap deters the bad pair but also chills aligned action
  ChillOnly,       // cap chills aligned action without deterring anyone
  PartialOpp,      // only opportunists act (no pair is efficient)
  NoAction,        // cap high enough that nobody acts
};

struct SliceOutcome {
  SliceKind kind = SliceKind::FullAction;
  double a_al_bot = 0.0, a_al_top = 0.0;  // aligned action at y=-1 / y=+1
  double a_op_bot = 0.0, a_op_top = 0.0;
  double fine = 0.0;    // punishment the court applies in this slice
  double belief = 0.5;  // court belief (threshold value when off path)
  bool on_path = true;  // belief pinned by Bayes' rule
  double welfare = 0.0;
};

// Designer-preferred equilibrium within one slice, given the cap. The menu
// below enumerates every profile shape that can arise in equilibrium for
// some cap; availability conditions are exact, with ties resolved the way
// the designer prefers.
inline SliceOutcome slice_best(const SliceSpec& s, double f_bar) {
  const double T = s.w1 * s.p_y - s.w0 * (1.0 - s.p_y);      // top pair value
  const double B = s.w1 * (1.0 - s.p_y) - s.w0 * s.p_y;      // bottom pair
  const double mu_top = s.w1 * s.p_y / (s.w1 * s.p_y + s.w0 * (1.0 - s.p_y));
  const double mu_bot =
      s.w1 * (1.0 - s.p_y) / (s.w1 * (1.0 - s.p_y) + s.w0 * s.p_y);
  const double g = s.gamma, gb = s.gamma_bar;

  if (B >= 0.0) {  // both pairs efficient: full action at zero fine
    SliceOutcome o;
    o.kind = SliceKind::FullAction;
    o.a_al_bot = o.a_al_top = o.a_op_bot = o.a_op_top = 1.0;
    o.fine = 0.0;
    o.belief = g;
    o.welfare = T + B;
    return o;
  }

  if (T < 0.0) {  // no pair efficient
    const double deter_top = deter_fine(mu_top);
    if (f_bar >= deter_top) {
      SliceOutcome o;
      o.kind = SliceKind::NoAction;
      o.fine = f_bar;
      o.belief = gb;
      o.on_path = false;
      o.welfare = 0.0;
      return o;
    }
    SliceOutcome o;  // cap too low: opportunists cannot be stopped at the top
    o.kind = SliceKind::PartialOpp;
    o.a_op_top = 1.0;
    o.a_op_bot = f_bar < deter_fine(mu_bot) ? 1.0 : 0.0;
    o.fine = f_bar;  // only opportunists act, so the court punishes fully
    o.belief = 0.0;
    o.welfare = (1.0 - g) * (T + o.a_op_bot * B);
    return o;
  }

  // Top pair efficient, bottom not: the interesting slice.
  const double fu_top = chill_fine(mu_top);   // >= 0 since mu_top >= 1/2
  const double fb_bot = deter_fine(mu_bot);   // in (1,2]
  const double fb_top = deter_fine(mu_top);   // > fb_bot
  const double eta_b_raw =
      (1.0 - s.p_y) * (g - gb) / (gb * (1.0 - g) * s.p_y);
  const double eta_u_val = gb * (1.0 - g) / (g * (1.0 - gb));
  const double belief_fp =
      g * (1.0 - s.p_y) / (g * (1.0 - s.p_y) + (1.0 - g));

  SliceOutcome best;
  bool have = false;
  auto consider = [&](const SliceOutcome& o) {
    if (!have || o.welfare > best.welfare) {
      best = o;
      have = true;
    }
  };

  // Knife-edge slack: availability comparisons between fines computed along
  // different algebraic routes must not split hairs at the last bit.
  constexpr double kTol = 1e-10;

  // Free pass: aligned act on top, opportunists on both; viable at any cap
  // when the court's belief clears the threshold, otherwise only while the
  // forced full fine neither chills the top nor deters the bottom.
  if (belief_fp >= gb || f_bar <= std::min(fu_top, fb_bot) + kTol) {
    SliceOutcome o;
    o.kind = SliceKind::FreePass;
    o.a_al_top = 1.0;
    o.a_op_top = o.a_op_bot = 1.0;
    o.fine = belief_fp >= gb ? 0.0 : f_bar;
    o.belief = belief_fp;
    o.welfare = g * T + (1.0 - g) * (T + B);
    consider(o);
  }

  // Court-indifference outcome with the opportunist mixing at the bottom.
  if (eta_b_raw >= 0.0 && eta_b_raw <= 1.0 && f_bar >= fb_bot - kTol &&
      fb_bot <= fu_top + kTol) {
    SliceOutcome o;
    o.kind = SliceKind::MixOpportunist;
    o.a_al_top = 1.0;
    o.a_op_top = 1.0;
    o.a_op_bot = eta_b_raw;
    o.fine = fb_bot;
    o.belief = gb;
    o.welfare = g * T + (1.0 - g) * (T + eta_b_raw * B);
    consider(o);
  }

  // Court-indifference outcome with the aligned type mixing at the top.
  if (f_bar >= fu_top - kTol && fu_top >= fb_bot - kTol) {
    SliceOutcome o;
    o.kind = SliceKind::MixAligned;
    o.a_al_top = eta_u_val;
    o.a_op_top = 1.0;
    o.fine = fu_top;
    o.belief = gb;
    o.welfare = g * eta_u_val * T + (1.0 - g) * T;
    consider(o);
  }

  // Full cap both deters the bottom pair and chills aligned action.
  if (f_bar >= std::max(fb_bot, fu_top) - kTol && f_bar <= fb_top + kTol) {
    SliceOutcome o;
    o.kind = SliceKind::DeterChill;
    o.a_op_top = 1.0;
    o.fine = f_bar;
    o.belief = 0.0;
    o.welfare = (1.0 - g) * T;
    consider(o);
  }

  // Full cap chills aligned action but is too low to deter the bottom pair.
  if (f_bar >= fu_top && f_bar < fb_bot) {
    SliceOutcome o;
    o.kind = SliceKind::ChillOnly;
    o.a_op_top = o.a_op_bot = 1.0;
    o.fine = f_bar;
    o.belief = 0.0;
    o.welfare = (1.0 - g) * (T + B);
    consider(o);
  }

  // Cap so high even opportunists stop acting on the efficient pair.
  if (f_bar >= fb_top) {
    SliceOutcome o;
    o.kind = SliceKind::NoAction;
    o.fine = f_bar;
    o.belief = gb;
    o.on_path = false;
    o.welfare = 0.0;
    consider(o);
  }

  return best;
}

inline SliceSpec slice_spec(const InformationEnvironment& env,
                            const PopulationModel& pop, int x) {
  SliceSpec s;
  s.w1 = env.beta * signal_likelihood(env.p_x, x, 1);
  s.w0 = (1.0 - env.beta) * signal_likelihood(env.p_x, x, -1);
  s.p_y = env.p_y;
  s.gamma = pop.gamma;
  s.gamma_bar = pop.gamma_bar;
  return s;
}

// Fines at which a slice's best outcome can change; the designer's value is
// constant between consecutive ones.
inline void slice_breakpoints(const SliceSpec& s, std::vector<double>& out) {
  const double T = s.w1 * s.p_y - s.w0 * (1.0 - s.p_y);
  const double B = s.w1 * (1.0 - s.p_y) - s.w0 * s.p_y;
  const double mu_top = s.w1 * s.p_y / (s.w1 * s.p_y + s.w0 * (1.0 - s.p_y));
  const double mu_bot =
      s.w1 * (1.0 - s.p_y) / (s.w1 * (1.0 - s.p_y) + s.w0 * s.p_y);
  if (B >= 0.0) return;  // full action at every cap
  if (T >= 0.0) out.push_back(chill_fine(mu_top));
  out.push_back(deter_fine(mu_bot));
  out.push_back(deter_fine(mu_top));
}

inline EquilibriumSolution assemble(const InformationEnvironment& env,
                                    double f_bar, const SliceOutcome& lo,
                                    const SliceOutcome& hi) {
  EquilibriumSolution sol;
  sol.f_bar = f_bar;
  sol.label = classify_case(env);
  auto put = [&](int x, const SliceOutcome& o) {
    sol.profile.action(AgentType::Aligned, {x, -1}) = o.a_al_bot;
    sol.profile.action(AgentType::Aligned, {x, 1}) = o.a_al_top;
    sol.profile.action(AgentType::Opportunistic, {x, -1}) = o.a_op_bot;
    sol.profile.action(AgentType::Opportunistic, {x, 1}) = o.a_op_top;
    sol.profile.punishment(x) = o.fine;
    sol.court_belief[x_index(x)] = o.belief;
  };
  put(-1, lo);
  put(1, hi);
  sol.welfare = lo.welfare + hi.welfare;
  return sol;
}

}  // namespace detail

// Designer's value of a given fine cap: the welfare of the designer's
// preferred equilibrium under that cap.
inline double designer_value(const InformationEnvironment& env,
                             const PopulationModel& pop, double f_bar) {
  const auto lo = detail::slice_best(detail::slice_spec(env, pop, -1), f_bar);
  const auto hi = detail::slice_best(detail::slice_spec(env, pop, 1), f_bar);
  return lo.welfare + hi.welfare;
}

// Welfare difference between the free-pass candidate and the deter-and-chill
// candidate in the one-positive-signal case, in closed form. Positive means
// leaving everyone unpunished beats deterring the both-negative pair.
inline double freepass_advantage(const InformationEnvironment& env,
                                 const PopulationModel& pop) {
  const double b = env.beta, px = env.p_x, py = env.p_y, g = pop.gamma;
  return g * (b * (1.0 - px) * py - (1.0 - b) * px * (1.0 - py)) +
         (1.0 - g) * (b * (1.0 - px) * (1.0 - py) - (1.0 - b) * px * py);
}

inline constexpr double kKnifeEdgeTol = 1e-10;

// Candidate optimal caps and outcomes for the one-positive-signal case.
// When the deterrence fine exceeds the chilling fine the designer compares
// a zero cap against deterring at the both-negative pair's fine; otherwise
// the two court-indifference outcomes compete (with the free-pass fallback
// when the opportunist mixing weight is infeasible). At the knife edge both
// families are returned.
inline std::vector<EquilibriumSolution> candidate_equilibria(
    const InformationEnvironment& env, const PopulationModel& pop) {
  if (classify_case(env) != CaseLabel::EitherPositive)
    throw std::invalid_argument(
        "candidate_equilibria requires the one-positive-signal case, got " +
        std::string(to_string(classify_case(env))));

  const double gap = delta(env);
  const bool knife = std::abs(gap) <= kKnifeEdgeTol;
  const auto spec_lo = detail::slice_spec(env, pop, -1);
  const auto spec_hi = detail::slice_spec(env, pop, 1);
  const auto hi_full = detail::slice_best(spec_hi, 0.0);

  std::vector<EquilibriumSolution> out;
  // Explicit construction avoids depending on which menu entry wins a tie.
  auto add_explicit = [&](double f_bar, detail::SliceOutcome lo,
                          Regime regime) {
    EquilibriumSolution sol = detail::assemble(env, f_bar, lo, hi_full);
    sol.regime = regime;
    sol.knife_edge = knife;
    sol.supported = pop.aligned_majority();
    out.push_back(sol);
  };

  const double T = spec_lo.w1 * env.p_y - spec_lo.w0 * (1.0 - env.p_y);
  const double B = spec_lo.w1 * (1.0 - env.p_y) - spec_lo.w0 * env.p_y;
  const double g = pop.gamma, gb = pop.gamma_bar;
  const double belief_fp =
      g * (1.0 - env.p_y) / (g * (1.0 - env.p_y) + (1.0 - g));
  const MixWeight hb = eta_b(env, pop);
  const MixWeight hu = eta_u(pop);

  auto freepass_outcome = [&]() {
    detail::SliceOutcome o;
    o.kind = detail::SliceKind::FreePass;
    o.a_al_top = 1.0;
    o.a_op_top = o.a_op_bot = 1.0;
    o.fine = 0.0;
    o.belief = belief_fp;
    o.welfare = g * T + (1.0 - g) * (T + B);
    return o;
  };
  auto deterchill_outcome = [&]() {
    detail::SliceOutcome o;
    o.kind = detail::SliceKind::DeterChill;
    o.a_op_top = 1.0;
    o.fine = fine_b(env);
    o.belief = 0.0;
    o.welfare = (1.0 - g) * T;
    return o;
  };
  auto mix_opp_outcome = [&]() {
    detail::SliceOutcome o;
    o.kind = detail::SliceKind::MixOpportunist;
    o.a_al_top = 1.0;
    o.a_op_top = 1.0;
    o.a_op_bot = hb.raw;
    o.fine = fine_b(env);
    o.belief = gb;
    o.welfare = g * T + (1.0 - g) * (T + hb.raw * B);
    return o;
  };
  auto mix_aligned_outcome = [&]() {
    detail::SliceOutcome o;
    o.kind = detail::SliceKind::MixAligned;
    o.a_al_top = hu.value;
    o.a_op_top = 1.0;
    o.fine = fine_u(env);
    o.belief = gb;
    o.welfare = g * hu.value * T + (1.0 - g) * T;
    return o;
  };

  if (gap > kKnifeEdgeTol || knife) {
    add_explicit(0.0, freepass_outcome(), Regime::FreePass);
    add_explicit(fine_b(env), deterchill_outcome(), Regime::DeterAtFb);
  }
  if (gap < -kKnifeEdgeTol || knife) {
    if (hb.feasible)
      add_explicit(fine_b(env), mix_opp_outcome(), Regime::DeterAtFb);
    else if (!knife)
      // The court cannot be held at its threshold: its belief under
      // free-pass play already clears it, so the zero cap joins the menu.
      add_explicit(0.0, freepass_outcome(), Regime::FreePass);
    add_explicit(fine_u(env), mix_aligned_outcome(), Regime::DeterAtFu);
  }
  return out;
}

// Designer-optimal equilibrium for any efficiency pattern. Scans the caps at
// which some slice's best outcome changes; between them the value is
// constant. Ties prefer the smaller cap, then fewer mixed actions.
inline EquilibriumSolution solve_optimal(const InformationEnvironment& env,
                                         const PopulationModel& pop) {
  const auto spec_lo = detail::slice_spec(env, pop, -1);
  const auto spec_hi = detail::slice_spec(env, pop, 1);

  std::vector<double> caps{0.0};
  detail::slice_breakpoints(spec_lo, caps);
  detail::slice_breakpoints(spec_hi, caps);
  std::sort(caps.begin(), caps.end());
  caps.erase(std::unique(caps.begin(), caps.end()), caps.end());

  bool have = false;
  EquilibriumSolution best;
  for (double f_bar : caps) {
    if (f_bar < 0.0) continue;
    const auto lo = detail::slice_best(spec_lo, f_bar);
    const auto hi = detail::slice_best(spec_hi, f_bar);
    EquilibriumSolution sol = detail::assemble(env, f_bar, lo, hi);
    if (!have || sol.welfare > best.welfare + 1e-12 ||
        (sol.welfare > best.welfare - 1e-12 &&
         (sol.f_bar < best.f_bar - 1e-12 ||
          (std::abs(sol.f_bar - best.f_bar) <= 1e-12 &&
           sol.profile.mixed_entry_count() <
               best.profile.mixed_entry_count())))) {
      best = sol;
      have = true;
    }
  }

  best.supported = pop.aligned_majority();
  if (!best.supported)
    best.note = "unsupported: aligned share at or below court threshold";

  const CaseLabel label = classify_case(env);
  best.label = label;
  best.knife_edge = false;
  if (label == CaseLabel::EitherPositive) {
    best.knife_edge = std::abs(delta(env)) <= kKnifeEdgeTol;
    if (best.f_bar <= 1e-12)
      best.regime = Regime::FreePass;
    else if (std::abs(best.f_bar - fine_b(env)) <= 1e-9)
      best.regime = Regime::DeterAtFb;
    else if (std::abs(best.f_bar - fine_u(env)) <= 1e-9)
      best.regime = Regime::DeterAtFu;
    else
      best.regime = Regime::CaseSpecific;
  } else if (label == CaseLabel::AlwaysEfficient) {
    best.regime = Regime::FreePass;
  } else {
    best.regime = Regime::CaseSpecific;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Equilibrium audit: independent checks that a proposed solution is a
// perfect Bayesian equilibrium of the punishment game.

struct AuditTolerances {
  double agent = 1e-9;       // slack around agent indifference
  double belief = 1e-9;      // slack for Bayes consistency and court ties
  double court_fine = 1e-9;  // slack on the court's forced fine levels
};

struct AuditViolation {
  std::string check;   // which requirement failed
  std::string detail;  // human-readable location
  double magnitude = 0.0;
};

// Verify agent best responses, Bayes-consistent beliefs, and court
// optimality for a solution. Empty result means the solution passes.
inline std::vector<AuditViolation> pbe_audit(
    const InformationEnvironment& env, const PopulationModel& pop,
    const EquilibriumSolution& sol, const AuditTolerances& tol = {}) {
  std::vector<AuditViolation> v;
  const auto& prof = sol.profile;

  for (const auto& row : prof.action_prob)
    for (double a : row)
      if (!(a >= -1e-15 && a <= 1.0 + 1e-15))
        v.push_back({"bounds", "action probability outside [0,1]",
                     std::abs(a - 0.5) - 0.5});
  for (int x : {-1, 1}) {
    const double f = prof.punishment(x);
    if (f < -tol.court_fine || f > sol.f_bar + tol.court_fine)
      v.push_back({"bounds", "fine outside [0, cap] at x=" +
                   std::to_string(x), f});
  }

  // Agent best responses given the punishment rule.
  for (SignalPair p : all_signal_pairs()) {
    const double mu = posterior(env, p);
    const double f = std::max(0.0, prof.punishment(p.x));
    for (AgentType t : {AgentType::Aligned, AgentType::Opportunistic}) {
      const double cut = cutoff_belief(t, f);
      const double a = prof.action(t, p);
      const char* tn = t == AgentType::Aligned ? "aligned" : "opportunistic";
      if (mu > cut + tol.agent && a < 1.0 - 1e-12)
        v.push_back({"agent", std::string(tn) + " must act at pair (" +
                     std::to_string(p.x) + "," + std::to_string(p.y) + ")",
                     1.0 - a});
      if (mu < cut - tol.agent && a > 1e-12)
        v.push_back({"agent", std::string(tn) + " must decline at pair (" +
                     std::to_string(p.x) + "," + std::to_string(p.y) + ")",
                     a});
    }
  }

  // Beliefs must follow Bayes' rule wherever the act is on path.
  for (int x : {-1, 1}) {
    const auto bayes = court_belief_from_profile(env, pop, prof, x);
    const double stored = sol.court_belief[x_index(x)];
    if (bayes && std::abs(*bayes - stored) > tol.belief)
      v.push_back({"bayes", "court belief differs from Bayes at x=" +
                   std::to_string(x), std::abs(*bayes - stored)});
    if (!(stored >= -1e-15 && stored <= 1.0 + 1e-15))
      v.push_back({"bounds", "belief outside [0,1]", stored});
  }

  // Court optimality: punish fully below the threshold, not at all above.
  for (int x : {-1, 1}) {
    const double belief = sol.court_belief[x_index(x)];
    const double f = prof.punishment(x);
    if (belief < pop.gamma_bar - tol.belief &&
        std::abs(f - sol.f_bar) > tol.court_fine)
      v.push_back({"court", "belief below threshold requires the full cap "
                   "at x=" + std::to_string(x), std::abs(f - sol.f_bar)});
    if (belief > pop.gamma_bar + tol.belief && f > tol.court_fine)
      v.push_back({"court", "belief above threshold requires no punishment "
                   "at x=" + std::to_string(x), f});
  }

  return v;
}

}  // namespace liability
