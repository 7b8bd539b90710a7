#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semimex/types.hpp"

namespace semimex {

// Paired explicit/implicit Runge-Kutta tableaus for the semi-implicit-explicit
// family: the stiff term G(t,u)u keeps its operand implicit while the matrix
// argument is lagged, so every implicit stage is one linear solve. implicit_b
// carries s+1 weights; the trailing one multiplies G(t_n + c_s h, K~_s) K_s,
// reusing the matrix assembled for the last implicit stage.
struct ButcherPair {
  std::string name;
  int stages = 0;
  Matrix explicit_a;  // s x s, strictly lower triangular
  Vector explicit_b;  // s
  Vector explicit_c;  // s
  Matrix implicit_a;  // s x s, lower triangular including the diagonal
  Vector implicit_b;  // s+1
  Vector implicit_c;  // s
  int declared_order = 1;

  // Structural invariants: triangularity (exact zeros), row sums matching the
  // abscissae and unit weight sums, all within 1e-12. Throws on violation.
  void validate() const;

  // Number of stages with a nonzero implicit diagonal, i.e. linear solves per
  // step.
  int implicit_solve_count() const;
};

// Catalog identifiers:
//   fb_euler                first order, L-stable forward-backward Euler
//   midpoint                second order, A-stable
//   trapezoid               second order, A-stable, update 2*K_3 - u_n
//   second_order_l_stable   second order, L-stable (alpha family, alpha = 1)
//   second_order_embedded   second order, L-stable, gamma = 1 - 1/sqrt(2)
//   third_order_4stage      third order, L-stable, three solves per step
//   third_order_5stage_v1   third order, L-stable, three solves per step
//   third_order_5stage_v2   third order, L-stable, four solves per step
std::vector<std::string> builtin_scheme_names();
ButcherPair make_builtin(const std::string& name);

// Three-stage second-order family parameterized by (alpha, b4, a21); the last
// stage row is alpha times the weight row, so the update reduces to
// u_{n+1} = (1/alpha) K_3 + (1 - 1/alpha) u_n.
ButcherPair make_alpha_second_order(double alpha, double b4, double a21);

// Member of the alpha family whose stability function vanishes at -infinity,
// with uniform diagonal alpha - a21 = b4. Picks the solution branch
// a21 = ((2a^2-a-1) +- sqrt(a^2+1))/(2a) with coefficients in [0,1]; throws a
// parameter-range error when neither branch qualifies.
ButcherPair make_l_stable_second_order(double alpha);

struct ConditionCheck {
  std::string id;
  double residual = 0;
  bool pass = false;
};

struct ConditionReport {
  std::vector<ConditionCheck> checks;
  std::string note;  // records the weight-sum index convention
  bool all_pass() const;
};

// Order-1 checks the two unit weight sums; order-2 evaluates the six
// second-order residuals (pass iff |residual| < 1e-12).
ConditionReport check_order_conditions(const ButcherPair& tb, int order);

// Returns alpha when the last implicit/explicit stage rows are alpha times
// the weight rows (and b~_s = 0), making the update an affine combination of
// K_s and u_n; empty otherwise.
std::optional<double> check_alpha_condition(const ButcherPair& tb, double tol = 1e-12);

// Amplification factor of one step on u' = z u (f = 0, G = z, h = 1, u_n = 1).
// Throws a pole error when some stage factor 1 - a_ii z vanishes.
Complex eval_stability(const ButcherPair& tb, Complex z);

struct StabilitySampleSpec {
  double re_min = -1e6;
  double re_max = -1e-3;
  double im_max = 1e6;
  int re_points = 41;       // log-spaced over [re_min, re_max]
  int im_magnitudes = 13;   // log-spaced |Im| values per sign, plus the real axis
  double limit_abscissa = -1e8;
};

enum class StabilityClass { AStableEvidence, LStableEvidence, UnstableSample };

struct StabilityProbeResult {
  double sampled_max_modulus = 0;
  double limit_modulus = 0;
  StabilityClass classification = StabilityClass::UnstableSample;
  Complex worst_z{0, 0};  // sample attaining the max modulus
};

// Samples |R(z)| over a left-half-plane grid (including the boundary line
// Re z = re_max) and at the limit abscissa. Sampling is evidence, not proof.
StabilityProbeResult probe_stability(const ButcherPair& tb, const StabilitySampleSpec& spec = {});

// Plain-text scheme file: name, stage count, declared order, then coefficient
// lists (row-major matrices) in >= 17 significant digits.
std::string to_scheme_text(const ButcherPair& tb);
ButcherPair parse_scheme_text(const std::string& text);
ButcherPair load_scheme_file(const std::string& path);
void save_scheme_file(const ButcherPair& tb, const std::string& path);

}  // namespace semimex
