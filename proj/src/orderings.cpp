#include "normgen/orderings.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

namespace normgen {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kFrontierCap = 4096;

double chord(double a, double b) { return 2.0 * std::abs(std::sin(0.5 * (a - b))); }

struct State {
  std::vector<int> seq;  // classes in order
  std::vector<int> remaining;
};

}  // namespace

OptimalOrdering optimalize(const CircleSpectrum& spec) {
  const int n = spec.size();
  if (n < 2) throw Error(ErrorKind::Domain, "optimalize needs n >= 2");

  // Equal angles are interchangeable; work on value classes.
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return spec.angles[a] < spec.angles[b]; });
  std::vector<double> cls_angle;
  std::vector<std::vector<int>> members;
  for (int k : idx) {
    if (cls_angle.empty() || cls_angle.back() != spec.angles[k]) {
      cls_angle.push_back(spec.angles[k]);
      members.emplace_back();
    }
    members.back().push_back(k);
  }
  const int c = static_cast<int>(cls_angle.size());
  std::vector<int> counts(static_cast<std::size_t>(c));
  for (int a = 0; a < c; ++a) counts[a] = static_cast<int>(members[a].size());
  auto gap = [&](int a, int b) { return chord(cls_angle[a], cls_angle[b]); };

  bool truncated = false;
  std::vector<State> frontier;
  {
    double best = -1.0;
    for (int a = 0; a < c; ++a)
      for (int b = 0; b < c; ++b)
        if (a != b || counts[a] >= 2) best = std::max(best, gap(a, b));
    for (int a = 0; a < c; ++a) {
      for (int b = 0; b < c; ++b) {
        if (a == b && counts[a] < 2) continue;
        if (gap(a, b) < best - kTol.tie) continue;
        State s{{a, b}, counts};
        --s.remaining[a];
        --s.remaining[b];
        frontier.push_back(std::move(s));
      }
    }
  }

  for (int pos = 2; pos < n; ++pos) {
    double best = -1.0;
    for (const State& s : frontier)
      for (int b = 0; b < c; ++b)
        if (s.remaining[b] > 0) best = std::max(best, gap(s.seq.back(), b));
    std::vector<State> next;
    std::map<std::pair<int, std::vector<int>>, bool> seen;
    for (const State& s : frontier) {
      for (int b = 0; b < c; ++b) {
        if (s.remaining[b] == 0 || gap(s.seq.back(), b) < best - kTol.tie) continue;
        State t = s;
        t.seq.push_back(b);
        --t.remaining[b];
        // Futures depend only on the last value and what is left.
        if (!seen.emplace(std::make_pair(b, t.remaining), true).second) continue;
        if (next.size() >= kFrontierCap) {
          truncated = true;
          continue;
        }
        next.push_back(std::move(t));
      }
    }
    frontier = std::move(next);
  }

  const State& win = frontier.front();
  OptimalOrdering out;
  std::vector<std::size_t> used(static_cast<std::size_t>(c), 0);
  std::vector<double> angles;
  for (int cl : win.seq) {
    const int k = members[cl][used[cl]++];
    out.order.push_back(k);
    angles.push_back(spec.angles[k]);
  }
  out.angles = CircleSpectrum{std::move(angles)};
  for (int k = 0; k + 1 < n; ++k) out.diffs.push_back(chord(out.angles.angles[k], out.angles.angles[k + 1]));
  out.sigma.resize(static_cast<std::size_t>(n - 1));
  std::iota(out.sigma.begin(), out.sigma.end(), 0);
  std::stable_sort(out.sigma.begin(), out.sigma.end(), [&](int a, int b) { return out.diffs[a] > out.diffs[b]; });
  out.heuristic = truncated || n > kExhaustiveCutoff;
  return out;
}

AngleSumOrdering angle_sum_optimalize(std::span<const double> alphas) {
  const int n = static_cast<int>(alphas.size());
  AngleSumOrdering out;
  if (n == 0) return out;
  const double total = std::accumulate(alphas.begin(), alphas.end(), 0.0);
  if (std::abs(total) > kTol.zero_sum) {
    throw Error(ErrorKind::Precondition, "angle sum is " + std::to_string(total) + ", expected 0");
  }
  // Arrange for the element of largest modulus to be positive.
  int arg = 0;
  for (int k = 1; k < n; ++k)
    if (std::abs(alphas[k]) > std::abs(alphas[arg])) arg = k;
  const double sign = alphas[arg] < 0.0 ? -1.0 : 1.0;

  std::vector<int> pos;
  std::vector<int> neg;
  std::vector<int> zero;
  for (int k = 0; k < n; ++k) {
    const double a = sign * alphas[k];
    (a > 0.0 ? pos : a < 0.0 ? neg : zero).push_back(k);
  }
  std::stable_sort(pos.begin(), pos.end(), [&](int a, int b) { return sign * alphas[a] > sign * alphas[b]; });
  std::stable_sort(neg.begin(), neg.end(), [&](int a, int b) { return sign * alphas[a] < sign * alphas[b]; });

  std::size_t ip = 0;
  std::size_t in = 0;
  double sum = 0.0;
  auto take = [&](std::vector<int>& from, std::size_t& i) {
    const int k = from[i++];
    out.sigma.push_back(k);
    sum += sign * alphas[k];
  };
  if (!pos.empty()) take(pos, ip);
  bool want_negative = true;
  while (ip < pos.size() || in < neg.size()) {
    if (want_negative) {
      if (in < neg.size()) {
        take(neg, in);
        if (sum < 0.0) want_negative = false;
      } else {
        take(pos, ip);
      }
    } else {
      if (ip < pos.size()) {
        take(pos, ip);
        if (sum > 0.0) want_negative = true;
      } else {
        take(neg, in);
      }
    }
  }
  for (int k : zero) out.sigma.push_back(k);

  double run = 0.0;
  for (int k : out.sigma) {
    out.angles.push_back(alphas[k]);
    run += alphas[k];
    out.prefix_max = std::max(out.prefix_max, std::abs(run));
  }
  return out;
}

std::vector<DiagonalFactor> torus_decompose(const CircleSpectrum& spec) {
  const int n = spec.size();
  const std::vector<cplx> lam = spec.eigenvalues();
  std::vector<DiagonalFactor> out;
  out.emplace_back(static_cast<std::size_t>(n), lam[0]);
  for (int i = 1; i < n; ++i) {
    DiagonalFactor f(static_cast<std::size_t>(n), cplx(1.0, 0.0));
    const cplx step = lam[i] * std::conj(lam[i - 1]);
    for (int p = i; p < n; ++p) f[p] = step;
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<DiagonalFactor> product_decompose(std::span<const double> angles) {
  const int n = static_cast<int>(angles.size());
  if (n == 0) throw Error(ErrorKind::Dimension, "empty spectrum");
  const double total = std::accumulate(angles.begin(), angles.end(), 0.0);
  const double residual = std::abs(std::remainder(total, 2.0 * kPi));
  if (residual > kTol.zero_sum) {
    throw Error(ErrorKind::Precondition, "angle sum residual " + std::to_string(residual));
  }
  std::vector<DiagonalFactor> out;
  double phi = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    phi += angles[i];
    DiagonalFactor f(static_cast<std::size_t>(n), cplx(1.0, 0.0));
    f[i] = unit(phi);
    f[i + 1] = unit(-phi);
    out.push_back(std::move(f));
  }
  return out;
}

CenteredSpectrum center_phase(const CircleSpectrum& spec) {
  const int n = spec.size();
  const auto& a = spec.angles;
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return a[x] < a[y]; });

  // Widest gap; the wrap-around gap is index n-1.
  double widest = 2.0 * kPi - (a[idx.back()] - a[idx.front()]);
  int cut = n - 1;
  for (int k = 0; k + 1 < n; ++k) {
    const double g = a[idx[k + 1]] - a[idx[k]];
    if (g > widest) {
      widest = g;
      cut = k;
    }
  }
  std::vector<double> un(a.begin(), a.end());
  if (cut != n - 1) {
    const double start = a[idx[cut + 1]];
    for (double& x : un)
      if (x < start) x += 2.0 * kPi;
  }
  const double mean = std::accumulate(un.begin(), un.end(), 0.0) / n;
  CenteredSpectrum out;
  out.phase = -mean;
  for (double x : un) out.angles.push_back(x - mean);
  // Remove the rounding residue of the mean from the largest entry so the sum is 0 to the last bit.
  double s = std::accumulate(out.angles.begin(), out.angles.end(), 0.0);
  if (s != 0.0) {
    const auto big = std::max_element(out.angles.begin(), out.angles.end(),
                                      [](double x, double y) { return std::abs(x) < std::abs(y); });
    *big -= s;
  }
  return out;
}

CageReport singular_cage_check(const OptimalOrdering& opt, double tol) {
  const int n = opt.angles.size();
  const SProfile prof = ell_profile(opt.angles);
  const double last = opt.angles.angles.back();
  std::vector<double> mid;
  for (double x : opt.angles.angles) mid.push_back(chord(x, last));
  std::sort(mid.begin(), mid.end(), std::greater<>());

  CageReport rep;
  for (int i = 0; i + 1 < n; ++i) {
    CageRow row;
    row.index = i;
    row.ell = prof.values[i];
    row.mid = mid[i];
    row.upper = opt.diffs[opt.sigma[i]];
    row.has_lower = 2 * i <= n - 2;
    row.lower = row.has_lower ? 0.5 * opt.diffs[opt.sigma[2 * i]] : 0.0;
    row.pass = row.ell <= row.mid + tol && row.mid <= row.upper + tol && (!row.has_lower || row.lower <= row.ell + tol);
    rep.pass = rep.pass && row.pass;
    rep.rows.push_back(row);
  }
  return rep;
}

LemOptReport lem_opt_check(const OptimalOrdering& opt) {
  LemOptReport rep;
  rep.centered = center_phase(opt.angles).angles;
  if (rep.centered.size() >= 2) rep.lhs = 2.0 * std::abs(rep.centered[0] - rep.centered[1]);
  for (double x : rep.centered) rep.rhs = std::max(rep.rhs, std::abs(x));
  rep.holds = rep.lhs + 1e-12 >= rep.rhs;
  return rep;
}

}  // namespace normgen
