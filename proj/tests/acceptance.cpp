// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <random>
#include <set>
#include <string>

#include "qflag/borelring.hpp"
#include "qflag/campaign.hpp"
#include "qflag/quatlab.hpp"

using namespace qflag;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << title << " -- " << detail << std::endl;
  if (!ok) ++failures;
}

template <class F>
void run(int id, const std::string& title, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail += std::string(" exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(id, title, ok, detail + " (" + std::to_string(secs).substr(0, 5) + "s)");
}

std::string capture(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  status = pclose(pipe);
  return out;
}

}  // namespace

int main() {
  run(1, "per-degree isomorphism, both scales", [](std::string& detail) {
    const std::array<std::pair<int, int>, 3> grid{{{2, 6}, {3, 4}, {4, 2}}};
    bool ok = true;
    int degrees = 0;
    for (int scale : {4, 2})
      for (auto [n, top] : grid) {
        CampaignConfig cfg;
        cfg.n = n;
        cfg.scale = scale;
        cfg.max_degree = top;
        auto res = cmd_verify_theorem(cfg);
        ok = ok && res.exit_code == 0;
        for (const auto& d : res.report["degrees"]) {
          ++degrees;
          bool unit = true;
          for (const auto& f : d["invariantFactors"]) unit = unit && f == 1;
          const bool this_ok = d["injective"] == true && d["surjective"] == true && unit &&
                               d["gkmRank"].get<std::size_t>() ==
                                   std::stoul(d["predictedRank"].get<std::string>());
          if (!this_ok) {
            detail += " failed n=" + std::to_string(n) + " scale=" + std::to_string(scale) +
                      " d=" + d["degree"].dump();
          }
          ok = ok && this_ok;
        }
      }
    detail = std::to_string(degrees) + " degrees checked" + detail;
    return ok && degrees == 2 * (7 + 5 + 3);
  });

  run(2, "canonical classes and the edge-convention regression", [](std::string& detail) {
    bool ok = true;
    int classes = 0;
    for (int n = 1; n <= 5; ++n) {
      auto ctx = make_context(n);
      for (int nu = 0; nu < n; ++nu, ++classes) ok = ok && is_gkm_class(canonical_class(nu, ctx)).is_member;
    }
    auto right = make_context(3, 4, EdgeConvention::right);
    auto x1 = canonical_class(0, right);
    const auto w = Permutation::from_one_based({1, 3, 2});
    const auto v = w.right_transpose(0, 1);
    const bool witness = !divrem_linear_diff(x1.at(w) - x1.at(v), 0, 1).divisible;
    const bool rejected = !is_gkm_class(x1).is_member;
    detail = std::to_string(classes) + " classes; right reading rejected at " + w.to_string() + "-" +
             v.to_string() + ": " + (witness && rejected ? "yes" : "no");
    return ok && witness && rejected;
  });

  run(3, "relation identity e_i(x) = e_i(u)", [](std::string& detail) {
    bool ok = true;
    int count = 0;
    for (int n = 1; n <= 5; ++n) {
      auto ctx = make_context(n);
      for (int i = 1; i <= n; ++i, ++count) {
        auto lhs = evaluate_to_gkm(BorelElement::elementary_x(n, i), ctx);
        std::vector<std::size_t> vars(static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < vars.size(); ++k) vars[k] = k;
        auto rhs = GkmClass::constant(ctx, elementary_symmetric(static_cast<std::size_t>(i), vars,
                                                                static_cast<std::size_t>(n)));
        ok = ok && lhs == rhs;
      }
    }
    detail = std::to_string(count) + " identities, exact";
    return ok;
  });

  run(4, "Morse perfectness for n <= 6", [](std::string& detail) {
    bool ok = true;
    for (int n = 1; n <= 6; ++n) {
      CampaignConfig cfg;
      cfg.n = n;
      auto res = cmd_morse_report(cfg);
      ok = ok && res.exit_code == 0 && res.report["poincareMatches"] == true &&
           res.report["uniqueExtremes"] == true;
    }
    detail = "poincare = [n]!_t, unique index 0 and top";
    return ok;
  });

  run(5, "Euler classes and weight products", [](std::string& detail) {
    bool ok = true;
    for (int n = 1; n <= 5; ++n) {
      auto ctx = make_context(n);
      auto hp = HeightParams::standard(n);
      for (const auto& w : ctx->vertices()) {
        auto e = negative_euler_class(w, hp, *ctx);
        auto pairs = descent_pairs(w, hp);
        std::set<std::pair<int, int>> distinct(pairs.begin(), pairs.end());
        ok = ok && !e.is_zero() && e.total_degree() == morse_index(w, hp) / 4 &&
             distinct.size() == pairs.size();
        IntPolynomial rest = e;
        for (auto [p, q] : pairs) {
          auto div = divrem_linear_diff(rest, static_cast<std::size_t>(p), static_cast<std::size_t>(q));
          ok = ok && div.divisible;
          rest = div.quotient;
        }
        ok = ok && rest == IntPolynomial::constant(static_cast<std::size_t>(n), 1);
      }
    }
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long> d(-2, 2), count(1, 5);
    int rejected = 0, accepted = 0;
    for (int t = 0; t < 10000; ++t) {
      std::vector<std::vector<long>> ws(static_cast<std::size_t>(count(rng)), std::vector<long>(4));
      bool zero = false;
      for (auto& v : ws) {
        for (auto& x : v) x = d(rng);
        zero = zero || std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
      }
      if (zero) {
        try {
          weight_product_euler(ws);
          ok = false;
        } catch (const std::invalid_argument&) {
          ++rejected;
        }
      } else {
        ok = ok && !weight_product_euler(ws).is_zero();
        ++accepted;
      }
    }
    detail = "euler classes n<=5; weights: " + std::to_string(accepted) + " nonzero, " +
             std::to_string(rejected) + " rejected";
    return ok && rejected > 0;
  });

  run(6, "geometry lab, n = 2 and 3, seed 42", [](std::string& detail) {
    bool ok = true;
    for (int n : {2, 3}) {
      CampaignConfig cfg;
      cfg.n = n;
      cfg.seed = 42;
      cfg.samples = 50;
      auto res = cmd_geomlab(cfg);
      ok = ok && res.exit_code == 0;
      for (const auto& c : res.report["checks"]) {
        const std::string name = c["name"];
        if (c["pass"] != true) detail += " n=" + std::to_string(n) + ":" + name;
        if (name == "meridian-tangency") {
          detail += " n=" + std::to_string(n) + " tangency=" + c["maxResidual"].dump();
        }
      }
      ok = ok && res.report["meridianSamples"].get<std::size_t>() >= 50 * res.report["spheres"].get<std::size_t>();
    }
    std::vector<double> ar{-1, 1};
    auto x = orbit_point(Permutation::identity(2), ar).x;
    auto omega = QuatMatrix::unit(2, 0, 1, Quaternion::unit_i()) -
                 QuatMatrix::unit(2, 1, 0, Quaternion::unit_i().conj());
    const double form = hessian_form(x, ar, omega);
    detail += " form=" + std::to_string(form);
    return ok && std::abs(form + 8) < 1e-10;
  });

  run(7, "byte-identical reports across runs", [](std::string& detail) {
    const std::string cli = QFLAG_CLI_PATH;
    bool ok = true;
    for (const std::string args : {"geomlab --n 3 --seed 42", "verify-theorem --n 3 --max-degree 3",
                                   "morse-report --n 4"}) {
      int s1 = 0, s2 = 0;
      auto a = capture(cli + " " + args, s1);
      auto b = capture(cli + " " + args, s2);
      ok = ok && s1 == 0 && s2 == 0 && !a.empty() && a == b;
    }
    detail = "three commands run twice via the CLI";
    return ok;
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
