#include "semimex/tableau.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace semimex {

namespace {

constexpr double kStructTol = 1e-12;

ButcherPair assemble(std::string name, int s, std::initializer_list<double> ea,
                     std::initializer_list<double> eb, std::initializer_list<double> ec,
                     std::initializer_list<double> ia, std::initializer_list<double> ib,
                     std::initializer_list<double> ic, int order) {
  ButcherPair tb;
  tb.name = std::move(name);
  tb.stages = s;
  tb.declared_order = order;
  tb.explicit_a = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                 Eigen::RowMajor>>(ea.begin(), s, s);
  tb.explicit_b = Eigen::Map<const Vector>(eb.begin(), s);
  tb.explicit_c = Eigen::Map<const Vector>(ec.begin(), s);
  tb.implicit_a = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                 Eigen::RowMajor>>(ia.begin(), s, s);
  tb.implicit_b = Eigen::Map<const Vector>(ib.begin(), s + 1);
  tb.implicit_c = Eigen::Map<const Vector>(ic.begin(), s);
  tb.validate();
  return tb;
}

}  // namespace

void ButcherPair::validate() const {
  const int s = stages;
  if (s < 1) throw std::invalid_argument("ButcherPair: need at least one stage");
  if (explicit_a.rows() != s || explicit_a.cols() != s || implicit_a.rows() != s ||
      implicit_a.cols() != s || explicit_b.size() != s || explicit_c.size() != s ||
      implicit_b.size() != s + 1 || implicit_c.size() != s) {
    throw std::invalid_argument("ButcherPair '" + name + "': inconsistent dimensions");
  }
  for (int i = 0; i < s; ++i) {
    for (int j = i; j < s; ++j) {
      if (explicit_a(i, j) != 0.0) {
        throw std::invalid_argument("ButcherPair '" + name +
                                    "': explicit tableau not strictly lower triangular");
      }
    }
    for (int j = i + 1; j < s; ++j) {
      if (implicit_a(i, j) != 0.0) {
        throw std::invalid_argument("ButcherPair '" + name +
                                    "': implicit tableau not lower triangular");
      }
    }
  }
  for (int i = 0; i < s; ++i) {
    const double re = explicit_a.row(i).head(i).sum() - explicit_c[i];
    const double ri = implicit_a.row(i).head(i + 1).sum() - implicit_c[i];
    if (std::abs(re) > kStructTol || std::abs(ri) > kStructTol) {
      throw std::invalid_argument("ButcherPair '" + name + "': row sum mismatch at stage " +
                                  std::to_string(i + 1));
    }
  }
  if (std::abs(explicit_b.sum() - 1.0) > kStructTol ||
      std::abs(implicit_b.sum() - 1.0) > kStructTol) {
    throw std::invalid_argument("ButcherPair '" + name + "': weights do not sum to one");
  }
}

int ButcherPair::implicit_solve_count() const {
  int count = 0;
  for (int i = 0; i < stages; ++i) {
    if (implicit_a(i, i) != 0.0) ++count;
  }
  return count;
}

std::vector<std::string> builtin_scheme_names() {
  return {"fb_euler",
          "midpoint",
          "trapezoid",
          "second_order_l_stable",
          "second_order_embedded",
          "third_order_4stage",
          "third_order_5stage_v1",
          "third_order_5stage_v2"};
}

ButcherPair make_builtin(const std::string& name) {
  const double r2 = std::sqrt(2.0);
  if (name == "fb_euler") {
    return assemble("fb_euler", 2,
                    {0, 0,  //
                     1, 0},
                    {1, 0}, {0, 1},
                    {0, 0,  //
                     0, 1},
                    {0, 0, 1}, {0, 1}, 1);
  }
  if (name == "midpoint") {
    return assemble("midpoint", 2,
                    {0, 0,  //
                     0.5, 0},
                    {0, 1}, {0, 0.5},
                    {0, 0,  //
                     0, 0.5},
                    {0, 1, 0}, {0, 0.5}, 2);
  }
  if (name == "trapezoid") {
    ButcherPair tb = make_alpha_second_order(0.5, 1.0, 0.0);
    tb.name = "trapezoid";
    return tb;
  }
  if (name == "second_order_l_stable") {
    ButcherPair tb = make_l_stable_second_order(1.0);
    tb.name = "second_order_l_stable";
    return tb;
  }
  if (name == "second_order_embedded") {
    // reformulation of a classical two-stage pair as three semi-IMEX stages;
    // the middle stage supplies the lagged matrix argument of the last one
    const double g = 1.0 - 1.0 / r2;
    return assemble("second_order_embedded", 3,
                    {0, 0, 0,  //
                     0, 0, 0,  //
                     1, 0, 0},
                    {0.5, 0, 0.5}, {0, 0, 1},
                    {g, 0, 0,          //
                     1 - g, 0, 0,      //
                     1 - 2 * g, 0, g},
                    {0.5, 0, 0.5, 0}, {g, 1 - g, 1 - g}, 2);
  }
  if (name == "third_order_4stage") {
    return assemble(
        "third_order_4stage", 4,
        {0, 0, 0, 0,                                                            //
         0.7775079538595848, 0, 0, 0,                                           //
         0.3850382624054263, 0.2733484980719337, 0, 0,                          //
         0.2905474198112961, 0.1784065415104640, 0.1894327991556034, 0},
        {0.2486553715043413, 0.04469938464765911, 0.3828282521031255, 0.3238169917448679},
        {0, 0.7775079538595848, 0.6583867604773560, 0.6583867604773565},
        {0, 0, 0, 0,                                                            //
         0.5668275181562270, 0.2106804357033578, 0, 0,                          //
         0.3481097445529071, 0.1497169356151823, 0.1605600803092672, 0,         //
         0.3299758037920577, 0.1113697479208660, 0.1255619659848192, 0.09147924277961349},
        {0.2486553715043413, 0.04469938464765911, 0.3828282521031255, 0.3238169917448679, 0},
        {0, 0.7775079538595848, 0.6583867604773565, 0.6583867604773565}, 3);
  }
  if (name == "third_order_5stage_v1") {
    // update duplicates the last stage row (u_{n+1} = K_5); the trailing
    // implicit weight is the diagonal entry, so b_5 = 0
    return assemble(
        "third_order_5stage_v1", 5,
        {0, 0, 0, 0, 0,                                                          //
         0.6411692131552690, 0, 0, 0, 0,                                         //
         0.3905895060040396, 0.8631427692385082, 0, 0, 0,                        //
         0.4274711580740817, 0.3555517808854274, 0.21697706104049089, 0, 0,      //
         0.3099153072147496, 0.3259623915325679, -0.2881752086128284, 0.6522975098655108, 0},
        {0.3099153072147496, 0.3259623915325679, -0.2881752086128284, 0.6522975098655108, 0},
        {0, 0.6411692131552690, 1.2537322752425418, 1, 1},
        {0, 0, 0, 0, 0,                                                          //
         0.3031200089371227, 0.3380492042181466, 0, 0, 0,                        //
         0.3905895060040396, 0.4629099915955034, 0.4002327776430044, 0, 0,       //
         0.4341539203752613, 0.3418741772176282, 0.2239719024071105, 0, 0,       //
         0.3099153072147496, 0.3259623915325679, -0.2881752086128284, 0, 0.6522975098655108},
        {0.3099153072147496, 0.3259623915325679, -0.2881752086128284, 0, 0, 0.6522975098655108},
        {0, 0.641169213155269, 1.253732275242547, 1, 1}, 3);
  }
  if (name == "third_order_5stage_v2") {
    return assemble(
        "third_order_5stage_v2", 5,
        {0, 0, 0, 0, 0,                                                          //
         0.3772977846271119, 0, 0, 0, 0,                                         //
         0.3210924473454751, 0.6789075526545275, 0, 0, 0,                        //
         0.2958359189953578, 0.3278679213986500, 0.3762961596059923, 0, 0,       //
         0.05826227065874467, 0.7093884017687849, -0.2070619980550040, 0.4394113256274744, 0},
        {0.05826227065874467, 0.7093884017687849, -0.2070619980550040, 0.4394113256274744, 0},
        {0, 0.3772977846271119, 1, 1, 1},
        {0, 0, 0, 0, 0,                                                          //
         0.2709023139105694, 0.1063954707165423, 0, 0, 0,                        //
         0.3210924473454735, 0.4580508073137827, 0.2208567453407465, 0, 0,       //
         0.4458748098646118, 0.08691986121002987, 0.3372847407465245, 0.1299205881788340, 0,
         0.05826227065874504, 0.7093884017687844, -0.2070619980550035, -0.2178085843289785,
         0.6572199099564526},
        {0.05826227065874504, 0.7093884017687844, -0.2070619980550035, -0.2178085843289785, 0,
         0.6572199099564526},
        {0, 0.3772977846271117, 1, 1, 1}, 3);
  }
  std::string valid;
  for (const auto& n : builtin_scheme_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown scheme '" + name + "' (valid: " + valid + ")");
}

ButcherPair make_alpha_second_order(double alpha, double b4, double a21) {
  if (alpha == 0.0) {
    throw std::invalid_argument("make_alpha_second_order: alpha must be nonzero");
  }
  const double a = alpha;
  return assemble("alpha_second_order", 3,
                  {0, 0, 0,                       //
                   a, 0, 0,                       //
                   (2 * a - 1) / 2, 0.5, 0},
                  {(2 * a - 1) / (2 * a), 1 / (2 * a), 0}, {0, a, a},
                  {0, 0, 0,                       //
                   a21, a - a21, 0,               //
                   (2 * a - 1) / 2, (1 - 2 * a * b4) / 2, a * b4},
                  {(2 * a - 1) / (2 * a), (1 - 2 * a * b4) / (2 * a), 0, b4}, {0, a, a}, 2);
}

ButcherPair make_l_stable_second_order(double alpha) {
  if (!(alpha > 0)) {
    throw std::invalid_argument("make_l_stable_second_order: alpha must be positive");
  }
  const double root = std::sqrt(alpha * alpha + 1.0);
  const double poly = 2 * alpha * alpha - alpha - 1;
  for (const double sign : {+1.0, -1.0}) {
    const double a21 = (poly + sign * root) / (2 * alpha);
    const double b4 = (alpha + 1 - sign * root) / (2 * alpha);
    if (a21 >= 0 && a21 <= 1 && b4 >= 0 && b4 <= 1) {
      ButcherPair tb = make_alpha_second_order(alpha, b4, a21);
      tb.name = "l_stable_second_order";
      return tb;
    }
  }
  throw std::invalid_argument(
      "make_l_stable_second_order: no solution branch with coefficients in [0,1] for alpha = " +
      std::to_string(alpha));
}

bool ConditionReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

ConditionReport check_order_conditions(const ButcherPair& tb, int order) {
  if (order != 1 && order != 2) {
    throw std::invalid_argument("check_order_conditions: order must be 1 or 2");
  }
  const int s = tb.stages;
  const Vector& eb = tb.explicit_b;
  const Vector& ec = tb.explicit_c;
  const Vector& ic = tb.implicit_c;
  const Vector b = tb.implicit_b.head(s);
  const double bs1 = tb.implicit_b[s];

  ConditionReport report;
  report.note =
      "weight sums taken as sum(b_tilde[1..s]) = 1 and sum(b[1..s+1]) = 1; the opposite "
      "pairing of the summation bounds is inconsistent with every catalog tableau";
  auto add = [&](std::string id, double residual) {
    report.checks.push_back({std::move(id), residual, std::abs(residual) < kStructTol});
  };

  add("order1_explicit_weight_sum", eb.sum() - 1.0);
  add("order1_implicit_weight_sum", tb.implicit_b.sum() - 1.0);
  if (order == 1) return report;

  if (s < 2) {
    throw std::invalid_argument("check_order_conditions: order-2 conditions need s >= 2");
  }
  const double heaviside = (s - 2 > 0) ? 1.0 : 0.0;
  const double b_dot_ic = b.dot(ic);
  double b_dot_ec_tail = 0;  // sum_{i=2..s} b_i c~_i
  double eb_dot_ec_tail = 0;
  for (int i = 1; i < s; ++i) {
    b_dot_ec_tail += b[i] * ec[i];
    eb_dot_ec_tail += eb[i] * ec[i];
  }
  add("order2_1", b_dot_ic + bs1 * ic[s - 2] - 0.5);
  add("order2_2", b_dot_ec_tail + bs1 * ec[s - 2] - 0.5);
  add("order2_3", b_dot_ic + heaviside * bs1 * ic[s - 1] - 0.5);
  add("order2_4", eb.dot(ic) - 0.5);
  add("order2_5", b_dot_ec_tail + bs1 * ec[s - 1] - 0.5);
  add("order2_6", eb_dot_ec_tail - 0.5);
  return report;
}

std::optional<double> check_alpha_condition(const ButcherPair& tb, double tol) {
  const int s = tb.stages;
  if (std::abs(tb.explicit_b[s - 1]) > tol) return std::nullopt;

  // pairs (weight, last-row entry) that must satisfy alpha*weight = entry
  std::vector<std::pair<double, double>> pairs;
  for (int j = 0; j < s - 1; ++j) {
    pairs.emplace_back(tb.implicit_b[j], tb.implicit_a(s - 1, j));
    pairs.emplace_back(tb.explicit_b[j], tb.explicit_a(s - 1, j));
  }
  pairs.emplace_back(tb.implicit_b[s], tb.implicit_a(s - 1, s - 1));

  double alpha = 0;
  double best = 0;
  for (const auto& [w, a] : pairs) {
    if (std::abs(w) > best) {
      best = std::abs(w);
      alpha = a / w;
    }
  }
  if (best == 0) return std::nullopt;
  for (const auto& [w, a] : pairs) {
    if (std::abs(alpha * w - a) > tol) return std::nullopt;
  }
  return alpha;
}

Complex eval_stability(const ButcherPair& tb, Complex z) {
  const int s = tb.stages;
  std::vector<Complex> K(s);
  for (int i = 0; i < s; ++i) {
    Complex rhs = 1.0;
    for (int j = 0; j < i; ++j) rhs += z * tb.implicit_a(i, j) * K[j];
    const Complex factor = 1.0 - tb.implicit_a(i, i) * z;
    if (std::abs(factor) == 0.0) {
      throw std::runtime_error("eval_stability: pole at stage " + std::to_string(i + 1) +
                               " (stage factor vanishes)");
    }
    K[i] = rhs / factor;
  }
  Complex u1 = 1.0;
  for (int j = 0; j < s; ++j) u1 += z * tb.implicit_b[j] * K[j];
  u1 += z * tb.implicit_b[s] * K[s - 1];
  return u1;
}

StabilityProbeResult probe_stability(const ButcherPair& tb, const StabilitySampleSpec& spec) {
  StabilityProbeResult result;
  std::vector<double> res(spec.re_points);
  for (int i = 0; i < spec.re_points; ++i) {
    const double t = spec.re_points == 1 ? 0.0 : static_cast<double>(i) / (spec.re_points - 1);
    res[i] = -std::exp(std::log(-spec.re_min) + t * (std::log(-spec.re_max) - std::log(-spec.re_min)));
  }
  std::vector<double> ims = {0.0};
  for (int i = 0; i < spec.im_magnitudes; ++i) {
    const double t =
        spec.im_magnitudes == 1 ? 0.0 : static_cast<double>(i) / (spec.im_magnitudes - 1);
    const double mag = std::exp(std::log(1e-3) + t * (std::log(spec.im_max) - std::log(1e-3)));
    ims.push_back(mag);
    ims.push_back(-mag);
  }
  for (const double re : res) {
    for (const double im : ims) {
      const Complex z{re, im};
      const double mod = std::abs(eval_stability(tb, z));
      if (mod > result.sampled_max_modulus) {
        result.sampled_max_modulus = mod;
        result.worst_z = z;
      }
    }
  }
  result.limit_modulus = std::abs(eval_stability(tb, Complex{spec.limit_abscissa, 0.0}));
  if (result.sampled_max_modulus <= 1.0 + 1e-9) {
    result.classification = result.limit_modulus < 1e-3 ? StabilityClass::LStableEvidence
                                                        : StabilityClass::AStableEvidence;
  } else {
    result.classification = StabilityClass::UnstableSample;
  }
  return result;
}

namespace {

void append_values(std::string& out, const char* key, const double* data, int count) {
  out += key;
  char buf[40];
  for (int i = 0; i < count; ++i) {
    std::snprintf(buf, sizeof(buf), " %.17g", data[i]);
    out += buf;
  }
  out += '\n';
}

}  // namespace

std::string to_scheme_text(const ButcherPair& tb) {
  const int s = tb.stages;
  std::string out;
  out += "# semimex scheme file\n";
  out += "name " + tb.name + "\n";
  out += "stages " + std::to_string(s) + "\n";
  out += "order " + std::to_string(tb.declared_order) + "\n";
  // matrices are stored row-major
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ea = tb.explicit_a;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ia = tb.implicit_a;
  append_values(out, "explicit_a", ea.data(), s * s);
  append_values(out, "explicit_b", tb.explicit_b.data(), s);
  append_values(out, "explicit_c", tb.explicit_c.data(), s);
  append_values(out, "implicit_a", ia.data(), s * s);
  append_values(out, "implicit_b", tb.implicit_b.data(), s + 1);
  append_values(out, "implicit_c", tb.implicit_c.data(), s);
  return out;
}

ButcherPair parse_scheme_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ButcherPair tb;
  bool have_stages = false;
  auto read_values = [](std::istringstream& ls, int count, const std::string& key) {
    Vector v(count);
    for (int i = 0; i < count; ++i) {
      if (!(ls >> v[i])) {
        throw std::invalid_argument("scheme file: expected " + std::to_string(count) +
                                    " values for " + key);
      }
    }
    return v;
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "name") {
      ls >> tb.name;
    } else if (key == "stages") {
      ls >> tb.stages;
      have_stages = true;
    } else if (key == "order") {
      ls >> tb.declared_order;
    } else {
      if (!have_stages) {
        throw std::invalid_argument("scheme file: 'stages' must precede coefficient lists");
      }
      const int s = tb.stages;
      if (key == "explicit_a") {
        Vector v = read_values(ls, s * s, key);
        tb.explicit_a =
            Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                v.data(), s, s);
      } else if (key == "explicit_b") {
        tb.explicit_b = read_values(ls, s, key);
      } else if (key == "explicit_c") {
        tb.explicit_c = read_values(ls, s, key);
      } else if (key == "implicit_a") {
        Vector v = read_values(ls, s * s, key);
        tb.implicit_a =
            Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
                v.data(), s, s);
      } else if (key == "implicit_b") {
        tb.implicit_b = read_values(ls, s + 1, key);
      } else if (key == "implicit_c") {
        tb.implicit_c = read_values(ls, s, key);
      } else {
        throw std::invalid_argument("scheme file: unknown key '" + key + "'");
      }
    }
  }
  tb.validate();
  return tb;
}

ButcherPair load_scheme_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scheme file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scheme_text(ss.str());
}

void save_scheme_file(const ButcherPair& tb, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write scheme file '" + path + "'");
  out << to_scheme_text(tb);
}

}  // namespace semimex
