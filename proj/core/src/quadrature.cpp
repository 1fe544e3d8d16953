#include "ogf/quadrature.hpp"

#include <atomic>
#include <cmath>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

namespace ogf {

namespace {

std::mutex g_rule_mutex;
std::map<std::pair<int, mpfr_prec_t>, std::shared_ptr<const GLRule>> g_rules;

// Legendre P_n and P_n' at x by the three-term recurrence.
void legendre(int n, const Real& x, Real& p, Real& dp, mpfr_prec_t wp) {
  Real p0 = Real::of_si(1, wp);
  Real p1 = x.rounded(wp);
  Real tmp(wp);
  for (int k = 2; k <= n; ++k) {
    // p_k = ((2k-1) x p_{k-1} - (k-1) p_{k-2}) / k
    tmp = x * p1;
    tmp *= (2 * k - 1);
    tmp -= p0 * Real::of_si(k - 1, wp);
    tmp /= k;
    p0 = p1;
    p1 = tmp;
  }
  p = p1;
  // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
  dp = (x * p1 - p0) * Real::of_si(n, wp) / (x * x - Real::of_si(1, wp));
}

std::shared_ptr<const GLRule> build_rule(int order, mpfr_prec_t prec) {
  mpfr_prec_t wp = prec + 32;
  auto rule = std::make_shared<GLRule>();
  rule->nodes.reserve(order);
  rule->weights.reserve(order);
  for (int i = 0; i < order; ++i) {
    double guess = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    Real x = Real::of_double(guess, wp);
    Real p(wp), dp(wp);
    for (int it = 0; it < 64; ++it) {
      legendre(order, x, p, dp, wp);
      Real dx = p / dp;
      x -= dx;
      if (exponent_of(dx) < -static_cast<long>(wp) + 8) break;
    }
    legendre(order, x, p, dp, wp);
    Real w = Real::of_si(2, wp) / ((Real::of_si(1, wp) - x * x) * dp * dp);
    rule->nodes.push_back(x.rounded(prec));
    rule->weights.push_back(w.rounded(prec));
  }
  return rule;
}

const GLRule& cached_rule(int order, mpfr_prec_t prec) {
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto key = std::make_pair(order, prec);
  auto it = g_rules.find(key);
  if (it == g_rules.end()) it = g_rules.emplace(key, build_rule(order, prec)).first;
  return *it->second;
}

int pick_threads(int requested, int n_jobs) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int t = requested > 0 ? requested : std::min(hw, 8);
  return std::max(1, std::min(t, n_jobs));
}

// Applies one rule to f over [a, b]; node evaluations may run in parallel,
// the weighted sum is always taken in node order.
ComplexHP apply_rule(const std::function<ComplexHP(const Real&)>& f, const Real& a, const Real& b,
                     const GLRule& rule, mpfr_prec_t wp, int threads, std::uint64_t& evals) {
  int n = static_cast<int>(rule.nodes.size());
  Real half = Real::from_string("0.5", wp);
  Real mid = (a + b) * half;
  Real rad = (b - a) * half;

  std::vector<ComplexHP> vals(n, ComplexHP(wp));
  int tcount = pick_threads(threads, n);
  if (tcount <= 1) {
    for (int i = 0; i < n; ++i) vals[i] = f(mid + rad * rule.nodes[i]);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(tcount);
    for (int w = 0; w < tcount; ++w)
      pool.emplace_back([&] {
        for (;;) {
          int i = next.fetch_add(1);
          if (i >= n) return;
          vals[i] = f(mid + rad * rule.nodes[i]);
        }
      });
    for (auto& th : pool) th.join();
  }
  evals += static_cast<std::uint64_t>(n);

  ComplexHP acc(wp);
  for (int i = 0; i < n; ++i) acc = acc + vals[i] * rule.weights[i];
  return acc * rad;
}

struct Panel {
  Real a, b, tol;
  int depth;
};

}  // namespace

const GLRule& gauss_legendre_rule(int order, mpfr_prec_t prec) {
  return cached_rule(order, prec);
}

QuadratureResult integrate_adaptive(const std::function<ComplexHP(const Real&)>& f,
                                    const std::vector<Real>& breakpoints, const Real& abs_tol,
                                    mpfr_prec_t wp, const QuadratureOptions& opts) {
  if (breakpoints.size() < 2) throw DomainError("integrate_adaptive: need at least one panel");
  QuadratureResult out(wp);
  long n_initial = static_cast<long>(breakpoints.size()) - 1;
  Real per_panel = abs_tol.rounded(wp) / n_initial;

  std::deque<Panel> work;
  for (long i = 0; i < n_initial; ++i)
    work.push_back(Panel{breakpoints[i].rounded(wp), breakpoints[i + 1].rounded(wp), per_panel, 0});

  int splits_left = opts.max_subdivisions;
  while (!work.empty()) {
    Panel p = work.front();
    work.pop_front();
    ++out.panels;

    ComplexHP prev(wp);
    bool have_prev = false;
    bool accepted = false;
    for (int order = opts.base_order; order <= opts.max_order; order *= 2) {
      ComplexHP cur = apply_rule(f, p.a, p.b, cached_rule(order, wp), wp, opts.threads,
                                 out.evaluations);
      if (have_prev) {
        Real diff = cabs(cur - prev);
        if (diff <= p.tol) {
          out.value = out.value + cur;
          out.error_estimate += diff;
          accepted = true;
          break;
        }
      }
      prev = cur;
      have_prev = true;
    }
    if (accepted) continue;

    if (splits_left <= 0)
      throw QuadratureError("adaptive quadrature exhausted its subdivision budget");
    --splits_left;
    Real mid = (p.a + p.b) * Real::from_string("0.5", wp);
    Real child_tol = p.tol * Real::from_string("0.5", wp);
    work.push_front(Panel{mid, p.b, child_tol, p.depth + 1});
    work.push_front(Panel{p.a, mid, child_tol, p.depth + 1});
  }
  return out;
}

}  // namespace ogf
