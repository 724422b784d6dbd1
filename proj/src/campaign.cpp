#include "qflag/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qflag/borelring.hpp"
#include "qflag/quatlab.hpp"

namespace qflag {

using nlohmann::json;

HeightParams CampaignConfig::effective_height_params() const {
  return height_params ? *height_params : HeightParams::standard(n);
}

void validate(const CampaignConfig& cfg) {
  if (cfg.cap < 1) throw ConfigError("permutation cap must be positive");
  if (cfg.n < 1 || cfg.n > cfg.cap) {
    throw ConfigError("n must lie in [1, " + std::to_string(cfg.cap) + "], got " + std::to_string(cfg.n));
  }
  if (cfg.scale != 2 && cfg.scale != 4) throw ConfigError("scale must be 2 or 4");
  if (cfg.max_degree < 0) throw ConfigError("max degree must be non-negative");
  if (cfg.budget == 0) throw ConfigError("budget must be positive");
  if (cfg.height_params) {
    const auto& hp = *cfg.height_params;
    if (hp.size() != cfg.n || hp.r().size() != static_cast<std::size_t>(cfg.n)) {
      throw ConfigError("--a and --r need exactly n entries");
    }
    if (!hp.is_generic()) throw ConfigError("height parameters must have pairwise distinct entries");
  }
}

namespace {

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(q.get_str());
  return out;
}

json integers(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& z : v) {
    if (z.fits_slong_p()) out.push_back(z.get_si());
    else out.push_back(z.get_str());
  }
  return out;
}

json header(const std::string& command, const CampaignConfig& cfg) {
  return {{"command", command}, {"n", cfg.n}};
}

CommandResult config_failure(json report, const std::string& message) {
  report["error"] = message;
  report["pass"] = false;
  return {2, std::move(report)};
}

}  // namespace

CommandResult cmd_verify_theorem(const CampaignConfig& cfg) {
  json rep = header("verify-theorem", cfg);
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    return config_failure(rep, e.what());
  }
  rep["scale"] = cfg.scale;
  rep["convention"] = to_string(cfg.convention);
  rep["maxDegree"] = cfg.max_degree;
  rep["budget"] = cfg.budget;
  rep["degrees"] = json::array();
  rep["ranks"] = json::array();

  bool all = true;
  try {
    auto ctx = make_context(cfg.n, cfg.scale, cfg.convention, cfg.cap);
    for (int d = 0; d <= cfg.max_degree; ++d) {
      const auto dd = static_cast<std::size_t>(d);
      IsomorphismReport r = verify_isomorphism_degree(dd, *ctx, cfg.budget, cfg.exec);
      const Integer predicted = predicted_rank(dd, cfg.n);
      json entry = report_to_json(r);
      entry["cohomologicalDegree"] = d * cfg.scale;
      entry["predictedRank"] = predicted.get_str();
      const bool ok = r.passed() && Integer(static_cast<unsigned long>(r.gkm_rank)) == predicted;
      entry["pass"] = ok;
      all = all && ok;
      rep["degrees"].push_back(std::move(entry));
      rep["ranks"].push_back(r.gkm_rank);
    }
  } catch (const BudgetExceeded& e) {
    return config_failure(rep, e.what());
  }
  rep["pass"] = all;
  return {all ? 0 : 1, std::move(rep)};
}

CommandResult cmd_morse_report(const CampaignConfig& cfg) {
  json rep = header("morse-report", cfg);
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    return config_failure(rep, e.what());
  }
  const HeightParams hp = cfg.effective_height_params();
  rep["scale"] = cfg.scale;
  rep["convention"] = to_string(cfg.convention);
  rep["a"] = rationals(hp.a());
  rep["r"] = rationals(hp.r());
  rep["rows"] = json::array();

  try {
    auto ctx = make_context(cfg.n, cfg.scale, cfg.convention, cfg.cap);
    const auto top = static_cast<std::size_t>(cfg.n * (cfg.n - 1) / 2);
    std::vector<Integer> poincare(top + 1, 0);
    bool euler_ok = true;
    for (const auto& w : ctx->vertices()) {
      const int index = morse_index(w, hp, cfg.convention);
      const IntPolynomial euler = negative_euler_class(w, hp, *ctx);
      const long euler_degree = euler.total_degree();
      euler_ok = euler_ok && !euler.is_zero() && euler_degree == index / 4;
      poincare[static_cast<std::size_t>(index / 4)] += 1;
      rep["rows"].push_back({{"w", w.to_string()},
                             {"height", height(w, hp).get_str()},
                             {"morseIndex", index},
                             {"indexOver4", index / 4},
                             {"scaledIndex", scaled_morse_index(w, hp, *ctx)},
                             {"eulerClass", euler.to_string()}});
    }
    const auto qfac = q_factorial_coefficients(cfg.n);
    rep["poincare"] = integers(poincare);
    rep["qFactorial"] = integers(qfac);
    const bool matches = poincare == qfac;
    const bool unique_ends = poincare.front() == 1 && poincare.back() == 1;
    rep["poincareMatches"] = matches;
    rep["uniqueExtremes"] = unique_ends;
    rep["eulerDegreesMatch"] = euler_ok;
    const bool ok = matches && unique_ends && euler_ok;
    rep["pass"] = ok;
    return {ok ? 0 : 1, std::move(rep)};
  } catch (const NonGenericError& e) {
    return config_failure(rep, e.what());
  } catch (const BudgetExceeded& e) {
    return config_failure(rep, e.what());
  }
}

namespace {

constexpr double kGradientZero = 1e-9;
constexpr double kTangencyTol = 1e-8;
constexpr double kInteriorGradient = 1e-3;
constexpr double kExactTol = 1e-12;
constexpr double kIsometryTol = 1e-10;
constexpr double kFdStep = 1e-4;
constexpr double kFdTol = 1e-5;

class Checks {
 public:
  void add(const std::string& name, double residual, double tolerance, bool pass) {
    if (!std::isfinite(residual)) {
      residual = 1e300;
      pass = false;
    }
    list_.push_back({{"name", name}, {"maxResidual", residual}, {"tolerance", tolerance}, {"pass", pass}});
    all_ = all_ && pass;
  }
  // residual must stay strictly below tolerance
  void upper(const std::string& name, double residual, double tolerance) {
    add(name, residual, tolerance, residual < tolerance);
  }
  // value must reach the floor; the residual is the shortfall
  void lower(const std::string& name, double value, double floor) {
    add(name, std::max(0.0, floor - value), floor, value >= floor);
    list_.back()["value"] = std::isfinite(value) ? value : 1e300;
  }
  const json& list() const { return list_; }
  bool all() const { return all_; }

 private:
  json list_ = json::array();
  bool all_ = true;
};

double max_abs_diff(const QuatMatrix& x, const QuatMatrix& y) { return (x - y).frobenius(); }

QuatMatrix random_traceless_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  QuatMatrix x(n);
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      Quaternion h{g(rng), g(rng), g(rng), g(rng)};
      x(p, q) = h;
      x(q, p) = h.conj();
    }
  double sum = 0;
  std::vector<double> d(static_cast<std::size_t>(n));
  for (auto& v : d) sum += (v = g(rng));
  for (int p = 0; p < n; ++p) x(p, p) = Quaternion::real(d[static_cast<std::size_t>(p)] - sum / n);
  return x;
}

void quaternion_algebra(Checks& checks, std::mt19937_64& rng) {
  const Quaternion one = Quaternion::real(1), i = Quaternion::unit_i(), j = Quaternion::unit_j(),
                   k = Quaternion::unit_k();
  double res = 0;
  res = std::max({res, distance(i * j, k), distance(j * k, i), distance(k * i, j)});
  res = std::max({res, distance(i * i, -one), distance(j * j, -one), distance(k * k, -one),
                  distance(i * j * k, -one)});
  for (int s = 0; s < 200; ++s) {
    Quaternion p = random_unit_quaternion(rng), q = random_unit_quaternion(rng);
    p = 3.0 * p;
    res = std::max(res, distance((p * q).conj(), q.conj() * p.conj()));
    res = std::max(res, std::abs((p * q).norm() - p.norm() * q.norm()));
    res = std::max(res, distance(p * p.inverse(), one));
  }
  checks.upper("quaternion-algebra", res, kExactTol);
}

void symplectic_closure(Checks& checks, int n, std::mt19937_64& rng) {
  const QuatMatrix id = QuatMatrix::identity(n);
  double res = 0;
  for (int s = 0; s < 20; ++s) {
    QuatMatrix a = random_symplectic(n, rng), b = random_symplectic(n, rng);
    QuatMatrix ab = a * b;
    res = std::max({res, max_abs_diff(a * a.adjoint(), id), max_abs_diff(a.adjoint() * a, id),
                    max_abs_diff(ab * ab.adjoint(), id)});
  }
  checks.upper("sp-closure", res, kExactTol);
}

void conjugation_isometry(Checks& checks, int n, std::mt19937_64& rng) {
  double res = 0;
  for (int s = 0; s < 20; ++s) {
    QuatMatrix a = random_symplectic(n, rng);
    QuatMatrix x = random_traceless_hermitian(n, rng), y = random_traceless_hermitian(n, rng);
    QuatMatrix ax = a * x * a.adjoint(), ay = a * y * a.adjoint();
    res = std::max(res, std::abs(inner(ax, ay) - inner(x, y)));
    res = std::max(res, std::abs(ax.trace().re));
    if (!ax.is_hermitian(kIsometryTol)) res = std::max(res, 1.0);
    auto ex = hermitian_eigenvalues(x), eax = hermitian_eigenvalues(ax);
    for (std::size_t e = 0; e < ex.size(); ++e) res = std::max(res, std::abs(ex[e] - eax[e]));
  }
  checks.upper("conjugation-isometry", res, kIsometryTol);
}

void orbit_spectrum(Checks& checks, const std::vector<Permutation>& perms, std::span<const double> r) {
  std::vector<double> sorted(r.begin(), r.end());
  std::sort(sorted.begin(), sorted.end());
  double res = 0;
  for (const auto& w : perms) {
    auto check = [&](const QuatMatrix& x) {
      auto ev = hermitian_eigenvalues(x);
      for (std::size_t e = 0; e < ev.size(); ++e) res = std::max(res, std::abs(ev[e] - sorted[e]));
    };
    check(orbit_point(w, r).x);
    for (int p = 0; p < w.size(); ++p)
      for (int q = p + 1; q < w.size(); ++q) {
        check(sphere_point(w, p, q, 1.1, Quaternion::unit_j(), r).x);
        // the half-turn reaches the other pole
        const QuatMatrix pole = sphere_point(w, p, q, std::numbers::pi, Quaternion::unit_k(), r).x;
        res = std::max(res, max_abs_diff(pole, orbit_point(w.right_transpose(p, q), r).x));
        res = std::max(res, max_abs_diff(sphere_point(w, p, q, 0.0, Quaternion::unit_i(), r).x,
                                         orbit_point(w, r).x));
      }
  }
  checks.upper("orbit-spectrum-and-poles", res, kIsometryTol);
}

void t_fixed_points(Checks& checks, int n, std::mt19937_64& rng) {
  double fixed_res = 0, witness_min = std::numeric_limits<double>::infinity();
  bool decided = true;
  for (int m = 0; m < n; ++m) {
    std::vector<Quaternion> h(static_cast<std::size_t>(n));
    h[static_cast<std::size_t>(m)] = 5.0 * random_unit_quaternion(rng);
    auto c = t_fixed_point_check(h);
    decided = decided && c.fixed;
    fixed_res = std::max(fixed_res, c.residual);
  }
  for (int s = 0; s < 20; ++s) {
    std::vector<Quaternion> h(static_cast<std::size_t>(n));
    for (auto& q : h) q = random_unit_quaternion(rng);
    auto c = t_fixed_point_check(h);
    decided = decided && !c.fixed && c.witness.has_value();
    witness_min = std::min(witness_min, c.residual);
  }
  checks.add("t-fixed-points", fixed_res, kExactTol, decided && fixed_res < kExactTol && witness_min > 1e-3);
}

}  // namespace

CommandResult cmd_geomlab(const CampaignConfig& cfg) {
  json rep = header("geomlab", cfg);
  rep["seed"] = cfg.seed;
  try {
    validate(cfg);
    if (cfg.n < 2) throw ConfigError("geomlab needs n >= 2");
    if (cfg.samples == 0) throw ConfigError("geomlab needs at least one meridian sample");
  } catch (const ConfigError& e) {
    return config_failure(rep, e.what());
  }
  const HeightParams hp = cfg.effective_height_params();
  const auto a = hp.a_double();
  const auto r = hp.r_double();
  rep["a"] = rationals(hp.a());
  rep["r"] = rationals(hp.r());
  rep["samples"] = cfg.samples;

  const auto perms = all_permutations(cfg.n, cfg.cap);
  auto by_height = [&](const Permutation& x, const Permutation& y) { return height(x, hp) < height(y, hp); };
  const Permutation w_max = *std::max_element(perms.begin(), perms.end(), by_height);
  const Permutation w_min = *std::min_element(perms.begin(), perms.end(), by_height);
  rep["maximum"] = w_max.to_string();
  rep["minimum"] = w_min.to_string();

  std::mt19937_64 rng(cfg.seed);
  Checks checks;
  quaternion_algebra(checks, rng);
  symplectic_closure(checks, cfg.n, rng);
  conjugation_isometry(checks, cfg.n, rng);
  orbit_spectrum(checks, perms, r);

  try {
    double grad = 0;
    for (const auto& w : perms) grad = std::max(grad, numeric_gradient(orbit_point(w, r).x, a).norm);
    checks.upper("critical-gradient", grad, kGradientZero);

    int mismatches = 0;
    double separation = std::numeric_limits<double>::infinity();
    for (const auto& w : perms) {
      try {
        HessianIndex hi = numeric_hessian_index(w, hp);
        if (hi.index != morse_index(w, hp)) ++mismatches;
        separation = std::min(separation, hi.min_abs_eigenvalue);
      } catch (const NonGenericError&) {
        ++mismatches;
        separation = 0;
      }
    }
    checks.add("hessian-index", mismatches, 0.5, mismatches == 0);
    checks.lower("hessian-separation", separation, kHessianSeparation);

    const auto gens = sp_basis(cfg.n);
    double fd = 0;
    for (const auto& w : perms) {
      const QuatMatrix x = orbit_point(w, r).x;
      for (const auto& g : gens) {
        const double exact = hessian_form(x, a, g);
        fd = std::max(fd, std::abs(exact - hessian_form_fd(x, a, g, kFdStep)) / (1 + std::abs(exact)));
      }
    }
    checks.upper("hessian-finite-difference", fd, kFdTol);

    // <A,[W,[W,X]]> = 2 (x_q - x_p)(a_p - a_q)|h|^2 for W = h E_pq - conj(h) E_qp.
    double oracle = 0;
    const QuatMatrix xmax = orbit_point(w_max, r).x;
    const Quaternion dirs[4] = {Quaternion::real(1), Quaternion::unit_i(), Quaternion::unit_j(),
                                Quaternion::unit_k()};
    for (int p = 0; p < cfg.n; ++p)
      for (int q = p + 1; q < cfg.n; ++q)
        for (const auto& d : dirs) {
          const Quaternion h = 0.5 * d;
          const QuatMatrix w = QuatMatrix::unit(cfg.n, p, q, h) - QuatMatrix::unit(cfg.n, q, p, h.conj());
          const double expect = 2 * (xmax(q, q).re - xmax(p, p).re) * (a[static_cast<std::size_t>(p)] -
                                a[static_cast<std::size_t>(q)]) * h.norm2();
          oracle = std::max(oracle, std::abs(hessian_form(xmax, a, w) - expect));
        }
    {
      const std::vector<double> a2{-1, 1}, r2{-1, 1};
      const QuatMatrix x2 = orbit_point(Permutation::identity(2), r2).x;
      const QuatMatrix w2 = QuatMatrix::unit(2, 0, 1, Quaternion::unit_i()) -
                            QuatMatrix::unit(2, 1, 0, Quaternion::unit_i().conj());
      oracle = std::max(oracle, std::abs(hessian_form(x2, a2, w2) - (-8.0)));
    }
    checks.upper("hessian-closed-form", oracle, kIsometryTol);

    MeridianReport agg;
    agg.min_interior_gradient = std::numeric_limits<double>::infinity();
    agg.min_sphere_rank = std::numeric_limits<int>::max();
    std::size_t spheres = 0;
    for (const auto& w : perms)
      for (int p = 0; p < cfg.n; ++p)
        for (int q = p + 1; q < cfg.n; ++q) {
          if (!(height(w, hp) > height(w.right_transpose(p, q), hp))) continue;
          MeridianReport m = meridian_tangency_check(w, p, q, cfg.samples, hp, cfg.seed, cfg.exec);
          ++spheres;
          agg.samples += m.samples;
          agg.max_residual = std::max(agg.max_residual, m.max_residual);
          agg.max_pole_gradient = std::max(agg.max_pole_gradient, m.max_pole_gradient);
          agg.max_radius_deviation = std::max(agg.max_radius_deviation, m.max_radius_deviation);
          agg.min_interior_gradient = std::min(agg.min_interior_gradient, m.min_interior_gradient);
          agg.min_sphere_rank = std::min(agg.min_sphere_rank, m.min_sphere_rank);
          agg.max_sphere_rank = std::max(agg.max_sphere_rank, m.max_sphere_rank);
        }
    rep["spheres"] = spheres;
    rep["meridianSamples"] = agg.samples;
    checks.upper("meridian-tangency", agg.max_residual, kTangencyTol);
    checks.upper("pole-gradient", agg.max_pole_gradient, kGradientZero);
    checks.lower("interior-gradient", agg.min_interior_gradient, kInteriorGradient);
    const int rank_dev = std::max(std::abs(agg.min_sphere_rank - 4), std::abs(agg.max_sphere_rank - 4));
    checks.add("sphere-rank", rank_dev, 0.5, rank_dev == 0);
    checks.upper("sphere-roundness", agg.max_radius_deviation, kIsometryTol);
  } catch (const NonGenericError& e) {
    rep["checks"] = checks.list();
    return config_failure(rep, e.what());
  }

  t_fixed_points(checks, cfg.n, rng);

  rep["checks"] = checks.list();
  rep["pass"] = checks.all();
  return {checks.all() ? 0 : 1, std::move(rep)};
}

namespace {

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void table(std::ostringstream& os, const json& rows) {
  if (rows.empty() || !rows.front().is_object()) {
    os << cell(rows) << "\n\n";
    return;
  }
  std::vector<std::string> cols;
  for (const auto& [key, value] : rows.front().items()) cols.push_back(key);
  os << "|";
  for (const auto& c : cols) os << " " << c << " |";
  os << "\n|";
  for (std::size_t c = 0; c < cols.size(); ++c) os << "---|";
  os << "\n";
  for (const auto& row : rows) {
    os << "|";
    for (const auto& c : cols) os << " " << (row.contains(c) ? cell(row[c]) : "") << " |";
    os << "\n";
  }
  os << "\n";
}

}  // namespace

std::string render_markdown(const json& report) {
  std::ostringstream os;
  os << "# " << (report.contains("command") ? cell(report["command"]) : "report") << "\n\n";
  for (const auto& [key, value] : report.items()) {
    if (key == "command" || (value.is_array() && !value.empty() && value.front().is_object())) continue;
    os << "- **" << key << "**: " << cell(value) << "\n";
  }
  os << "\n";
  for (const auto& [key, value] : report.items()) {
    if (!value.is_array() || value.empty() || !value.front().is_object()) continue;
    os << "## " << key << "\n\n";
    table(os, value);
  }
  return os.str();
}

std::string render(const json& report, ReportFormat format) {
  if (format == ReportFormat::markdown) return render_markdown(report);
  return report.dump(2) + "\n";
}

}  // namespace qflag
