#include "quadineq/search.hpp"

#include <algorithm>
#include <numbers>
#include <thread>

#include "quadineq/audit.hpp"
#include "quadineq/kernel.hpp"
#include "quadineq/sampler.hpp"

namespace quadineq {

namespace {

using Vec5 = Eigen::Matrix<double, 5, 1>;

Vec5 to_vec(const DiagonalFrame& f) {
  Vec5 v;
  v << f.p[0], f.p[1], f.p[2], f.p[3], f.w;
  return v;
}

DiagonalFrame to_frame(const Vec5& v) {
  DiagonalFrame f;
  for (int i = 0; i < 4; ++i) f.p[i] = v(i);
  f.w = v(4);
  return f;
}

struct Objective {
  double margin;
  int evaluations = 0;

  std::pair<Vec5, double> operator()(const Vec5& x) {
    ++evaluations;
    const DiagonalFrame f = project_to_domain(to_frame(x), margin);
    return {to_vec(f), normalized_residual(f)};
  }
};

StartTrajectory run_start(std::uint64_t seed, int index, double margin, int budget) {
  const DiagonalFrame start = sample_frame(derive_seed(seed, static_cast<std::uint64_t>(index)), margin);
  StartTrajectory t;
  t.start = start;
  t.start_value = normalized_residual(start);
  t.end = start;
  t.end_value = t.start_value;
  if (budget <= 0) return t;

  Objective objective{margin};
  std::array<Vec5, 6> simplex;
  std::array<double, 6> value{};
  simplex[0] = to_vec(start);
  value[0] = t.start_value;
  const double p_step = 0.1 * (1.0 - 4.0 * margin);
  const double w_step = 0.1 * std::numbers::pi;
  for (int k = 1; k < 6 && objective.evaluations < budget; ++k) {
    const int dim = k - 1;
    const bool is_angle = dim == 4;
    // Step toward the interior: down from above-typical values, up otherwise.
    const double typical = is_angle ? 0.5 * std::numbers::pi : 0.25;
    const double step = is_angle ? w_step : p_step;
    Vec5 x = simplex[0];
    x(dim) += x(dim) > typical ? -step : step;
    std::tie(simplex[k], value[k]) = objective(x);
  }
  int filled = 1 + objective.evaluations;

  auto order = [&] {
    std::array<int, 6> idx{0, 1, 2, 3, 4, 5};
    std::stable_sort(idx.begin(), idx.begin() + filled, [&](int i, int j) { return value[i] < value[j]; });
    std::array<Vec5, 6> s;
    std::array<double, 6> v{};
    for (int i = 0; i < filled; ++i) {
      s[i] = simplex[idx[i]];
      v[i] = value[idx[i]];
    }
    simplex = s;
    value = v;
  };
  order();
  t.best_history.push_back(value[0]);

  while (filled == 6 && objective.evaluations < budget) {
    ++t.iterations;
    Vec5 centroid = Vec5::Zero();
    for (int i = 0; i < 5; ++i) centroid += simplex[i];
    centroid /= 5.0;

    auto [xr, fr] = objective(centroid + (centroid - simplex[5]));
    if (fr < value[0]) {
      if (objective.evaluations < budget) {
        auto [xe, fe] = objective(centroid + 2.0 * (centroid - simplex[5]));
        if (fe < fr) {
          simplex[5] = xe;
          value[5] = fe;
        } else {
          simplex[5] = xr;
          value[5] = fr;
        }
      } else {
        simplex[5] = xr;
        value[5] = fr;
      }
    } else if (fr < value[4]) {
      simplex[5] = xr;
      value[5] = fr;
    } else if (objective.evaluations < budget) {
      const bool outside = fr < value[5];
      auto [xc, fc] = objective(outside ? Vec5(centroid + 0.5 * (xr - centroid))
                                        : Vec5(centroid + 0.5 * (simplex[5] - centroid)));
      if (fc < std::min(fr, value[5])) {
        simplex[5] = xc;
        value[5] = fc;
      } else {
        for (int i = 1; i < 6 && objective.evaluations < budget; ++i) {
          std::tie(simplex[i], value[i]) = objective(simplex[0] + 0.5 * (simplex[i] - simplex[0]));
        }
      }
    }
    order();
    t.best_history.push_back(value[0]);

    double spread = 0.0;
    for (int i = 1; i < 6; ++i) spread = std::max(spread, (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
    if (spread < 1e-15) break;
  }
  t.evaluations = objective.evaluations;
  if (value[0] < t.end_value) {
    t.end = to_frame(simplex[0]);
    t.end_value = value[0];
  }
  return t;
}

}  // namespace

double normalized_residual(const DiagonalFrame& frame) {
  frame.validate();
  const QuadMetrics<double> m = metrics_from_frame<double>(frame.p, frame.w);
  return residual(m, ResidualPath::edge) / m.length_product();
}

DiagonalFrame project_to_domain(const DiagonalFrame& frame, double margin) {
  DiagonalFrame r;
  const double lo = margin * std::numbers::pi;
  const double hi = (1.0 - margin) * std::numbers::pi;
  r.w = std::isnan(frame.w) ? 0.5 * std::numbers::pi : std::clamp(frame.w, lo, hi);
  std::array<double, 4> excess{};
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double v = std::isnan(frame.p[i]) ? margin : frame.p[i];
    total += (excess[i] = std::max(v - margin, 0.0));
  }
  for (int i = 0; i < 4; ++i)
    r.p[i] = margin + (1.0 - 4.0 * margin) * (total > 0.0 ? excess[i] / total : 0.25);
  return r;
}

SearchResult minimize_residual(std::uint64_t seed, int starts, double margin, int budget) {
  if (starts < 1) throw Error("search needs at least one start");
  if (!(margin >= 1e-6 && margin <= 0.2)) throw Error("search margin must lie in [1e-6, 0.2]");
  if (budget < 0) throw Error("search budget must be nonnegative");

  SearchResult result;
  result.seed = seed;
  result.starts = starts;
  result.margin = margin;
  result.budget = budget;
  result.trajectories.resize(static_cast<std::size_t>(starts));

  const unsigned threads = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                                              static_cast<unsigned>(starts));
  auto work = [&](unsigned t) {
    for (int k = static_cast<int>(t); k < starts; k += static_cast<int>(threads))
      result.trajectories[static_cast<std::size_t>(k)] = run_start(seed, k, margin, budget);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  result.best_residual = std::numeric_limits<double>::infinity();
  for (const auto& t : result.trajectories) {
    if (t.end_value < result.best_residual) {
      result.best_residual = t.end_value;
      result.best_frame = t.end;
    }
    if (t.end_value < -kCounterexampleThreshold) {
      CounterexampleCandidate c{t.end, t.end_value, false};
      try {
        const AuditReport r = audit(quad_from_frame(t.end), 1e-9);
        c.confirmed = !r.check("theorem1").pass && r.check("residual_paths").pass;
      } catch (const Error&) {
        c.confirmed = false;
      }
      result.candidates.push_back(c);
    }
  }
  return result;
}

std::vector<SearchResult> margin_schedule(std::uint64_t seed, int starts, const std::vector<double>& margins,
                                          int budget) {
  std::vector<SearchResult> out;
  out.reserve(margins.size());
  for (double m : margins) out.push_back(minimize_residual(seed, starts, m, budget));
  return out;
}

bool schedule_decreasing(const std::vector<SearchResult>& results) {
  for (std::size_t i = 1; i < results.size(); ++i)
    if (!(results[i].best_residual < results[i - 1].best_residual)) return false;
  return true;
}

}  // namespace quadineq
