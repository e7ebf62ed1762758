#include "sors/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>
#include <utility>

#include "sors/oracle.hpp"

namespace sors {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    default: return "limit_reached";
  }
}

namespace detail {

std::vector<Index> ratio_order(const SorsModel& model) {
  const Index n = model.size();
  std::vector<Index> order(n);
  for (Index i = 0; i < n; ++i) order[i] = i;
  std::vector<double> ratio(n);
  for (Index i = 0; i < n; ++i) {
    const Requirement& r = model.requirements[i];
    ratio[i] = r.cost > 0.0 ? r.values[0] / r.cost
                            : std::numeric_limits<double>::infinity();
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return ratio[a] > ratio[b]; });
  return order;
}

double upper_bound(const SorsModel& model, std::span<const Fix> fixed,
                   std::span<const Index> ratio_order) {
  double bound = 0.0;
  double cost = 0.0;
  for (Index i = 0; i < fixed.size(); ++i) {
    if (fixed[i] == Fix::One) {
      bound += model.requirements[i].values[0];
      cost += model.requirements[i].cost;
    }
  }
  if (cost > model.budget) return -std::numeric_limits<double>::infinity();
  double residual = model.budget - cost;
  for (Index i : ratio_order) {
    if (fixed[i] != Fix::Free) continue;
    const Requirement& r = model.requirements[i];
    if (r.cost <= residual) {
      bound += r.values[0];
      residual -= r.cost;
    } else {
      // r.cost > residual >= 0, so the division is safe
      bound += r.values[0] * (residual / r.cost);
      break;
    }
  }
  return bound;
}

}  // namespace detail

namespace {

using detail::Fix;

constexpr double kBoundGuard = 1e-12;  // never prune within rounding of the incumbent

struct Incumbent {
  bool found = false;
  double objective = 0.0;
  Selection x;
  std::vector<double> trace;
};

// Strictly better objective wins; exact ties resolve to the smaller
// selection vector (x_1 compared first).
bool improves(const Incumbent& inc, double objective, const Selection& x) {
  if (!inc.found) return true;
  if (objective > inc.objective) return true;
  return objective == inc.objective &&
         std::lexicographical_compare(x.begin(), x.end(), inc.x.begin(), inc.x.end());
}

struct SearchContext {
  const SorsModel& model;
  const std::vector<InfluenceMatrix>& influences;
  std::vector<Index> order;
  // Implications fired when a variable is fixed to one / to zero.
  std::vector<std::vector<std::pair<Index, std::uint8_t>>> on_one;
  std::vector<std::vector<std::pair<Index, std::uint8_t>>> on_zero;
  bool trace = false;

  std::optional<std::uint64_t> node_limit;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::atomic<std::uint64_t>* nodes = nullptr;
  std::atomic<bool>* abort = nullptr;
};

bool propagate(const SearchContext& ctx, std::vector<Fix>& fixed, Index var,
               std::uint8_t value) {
  std::vector<std::pair<Index, std::uint8_t>> queue{{var, value}};
  while (!queue.empty()) {
    const auto [v, b] = queue.back();
    queue.pop_back();
    const Fix want = b ? Fix::One : Fix::Zero;
    if (fixed[v] == want) continue;
    if (fixed[v] != Fix::Free) return false;
    fixed[v] = want;
    for (const auto& implied : b ? ctx.on_one[v] : ctx.on_zero[v]) {
      queue.push_back(implied);
    }
  }
  return true;
}

// A social bound is hopeless if even selecting every open requirement
// penalty-free cannot reach it.
bool social_hopeless(const SearchContext& ctx, const std::vector<Fix>& fixed) {
  const Index types = ctx.model.type_count();
  for (Index k = 1; k < types; ++k) {
    double optimistic = 0.0;
    for (Index i = 0; i < fixed.size(); ++i) {
      if (fixed[i] != Fix::Zero) optimistic += ctx.model.requirements[i].values[k];
    }
    if (optimistic < ctx.model.social_bounds[k - 1]) return true;
  }
  return false;
}

// Depth-first search over the subtree rooted at `fixed`. `open_max` collects
// an upper bound on everything left unexplored when a limit fires.
void dfs(const SearchContext& ctx, std::vector<Fix> fixed, Index order_pos,
         Incumbent& inc, double& open_max) {
  const std::uint64_t node = ctx.nodes->fetch_add(1, std::memory_order_relaxed) + 1;
  if (ctx.node_limit && node >= *ctx.node_limit) {
    ctx.abort->store(true, std::memory_order_relaxed);
  }
  if (ctx.deadline && (node & 511u) == 0 &&
      std::chrono::steady_clock::now() >= *ctx.deadline) {
    ctx.abort->store(true, std::memory_order_relaxed);
  }

  if (social_hopeless(ctx, fixed)) return;
  const double bound = detail::upper_bound(ctx.model, fixed, ctx.order);
  if (std::isinf(bound) && bound < 0) return;  // fixed items already over budget
  if (inc.found && bound < inc.objective - kBoundGuard) return;

  if (ctx.abort->load(std::memory_order_relaxed)) {
    if (bound > open_max) open_max = bound;
    return;
  }

  while (order_pos < ctx.order.size() && fixed[ctx.order[order_pos]] != Fix::Free) {
    ++order_pos;
  }
  if (order_pos == ctx.order.size()) {
    Selection x(fixed.size());
    for (Index i = 0; i < fixed.size(); ++i) x[i] = fixed[i] == Fix::One ? 1 : 0;
    Evaluation ev = evaluate(ctx.model, ctx.influences, x);
    if (ev.feasible && improves(inc, ev.objective, x)) {
      inc.found = true;
      inc.objective = ev.objective;
      inc.x = std::move(x);
      if (ctx.trace) inc.trace.push_back(ev.objective);
    }
    return;
  }

  const Index var = ctx.order[order_pos];
  for (std::uint8_t value : {std::uint8_t{1}, std::uint8_t{0}}) {
    if (ctx.abort->load(std::memory_order_relaxed)) {
      if (bound > open_max) open_max = bound;
      return;
    }
    std::vector<Fix> child = fixed;
    if (propagate(ctx, child, var, value)) {
      dfs(ctx, std::move(child), order_pos + 1, inc, open_max);
    }
  }
}

// Fixed decomposition of the tree into subtree tasks by enumerating the first
// `depth` branch variables (one-branch first, propagation applied, no bound
// pruning so the task set never depends on incumbents or thread interleaving).
void make_tasks(const SearchContext& ctx, const std::vector<Fix>& fixed, Index order_pos,
                Index depth, std::vector<std::pair<std::vector<Fix>, Index>>& out) {
  Index pos = order_pos;
  while (pos < ctx.order.size() && fixed[ctx.order[pos]] != Fix::Free) ++pos;
  if (depth == 0 || pos == ctx.order.size()) {
    out.emplace_back(fixed, pos);
    return;
  }
  const Index var = ctx.order[pos];
  for (std::uint8_t value : {std::uint8_t{1}, std::uint8_t{0}}) {
    std::vector<Fix> child = fixed;
    if (propagate(ctx, child, var, value)) {
      make_tasks(ctx, child, pos + 1, depth - 1, out);
    }
  }
}

Incumbent warm_start(const SorsModel& model,
                     const std::vector<InfluenceMatrix>& influences,
                     const std::vector<Index>& order) {
  const Index n = model.size();
  std::vector<Selection> candidates;
  candidates.emplace_back(n, 0);
  Selection greedy(n, 0);
  double cost = 0.0;
  for (Index i : order) {
    if (cost + model.requirements[i].cost <= model.budget) {
      greedy[i] = 1;
      cost += model.requirements[i].cost;
    }
  }
  candidates.push_back(std::move(greedy));

  Incumbent inc;
  for (const Selection& x : candidates) {
    Evaluation ev = evaluate(model, influences, x);
    if (ev.feasible && improves(inc, ev.objective, x)) {
      inc.found = true;
      inc.objective = ev.objective;
      inc.x = x;
    }
  }
  if (inc.found) inc.trace.push_back(inc.objective);
  return inc;
}

Solution solve_branch_and_bound(const SorsModel& model,
                                const std::vector<InfluenceMatrix>& influences,
                                const SolverConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  const Index n = model.size();

  SearchContext ctx{model, influences};
  ctx.order = detail::ratio_order(model);
  ctx.on_one.resize(n);
  ctx.on_zero.resize(n);
  for (const PrecedenceConstraint& c : model.structural) {
    if (c.kind == StructuralKind::Precedes) {
      // x_i <= x_j
      ctx.on_one[c.i].emplace_back(c.j, 1);
      ctx.on_zero[c.j].emplace_back(c.i, 0);
    } else {
      ctx.on_one[c.i].emplace_back(c.j, 0);
      ctx.on_one[c.j].emplace_back(c.i, 0);
    }
  }
  ctx.trace = cfg.trace_incumbents;
  ctx.node_limit = cfg.node_limit;
  if (cfg.time_limit) {
    ctx.deadline = started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 *cfg.time_limit);
  }
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> abort{false};
  ctx.nodes = &nodes;
  ctx.abort = &abort;

  const Incumbent seed = warm_start(model, influences, ctx.order);

  // The split depth depends on the instance only, never on cfg.threads, so
  // node counts and results are identical for every thread count.
  const Index split_depth = n > 10 ? std::min<Index>(6, n - 10) : 0;
  std::vector<std::pair<std::vector<Fix>, Index>> tasks;
  make_tasks(ctx, std::vector<Fix>(n, Fix::Free), 0, split_depth, tasks);

  std::vector<Incumbent> results(tasks.size(), seed);
  std::vector<double> open_bounds(tasks.size(), -std::numeric_limits<double>::infinity());

  const unsigned workers =
      std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(std::max<std::size_t>(
                                                       tasks.size(), 1))));
  std::atomic<std::size_t> next{0};
  auto run_tasks = [&] {
    for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1)) {
      dfs(ctx, tasks[t].first, tasks[t].second, results[t], open_bounds[t]);
    }
  };
  if (workers == 1) {
    run_tasks();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_tasks);
    for (std::thread& th : pool) th.join();
  }

  Incumbent best = seed;
  double open_max = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const Incumbent& r = results[t];
    if (r.found && improves(best, r.objective, r.x)) {
      best.found = true;
      best.objective = r.objective;
      best.x = r.x;
    }
    if (cfg.trace_incumbents) {
      best.trace.insert(best.trace.end(), r.trace.begin(), r.trace.end());
    }
    open_max = std::max(open_max, open_bounds[t]);
  }

  Solution sol;
  const bool limited = abort.load();
  Evaluation ev = evaluate(model, influences, best.found ? best.x : Selection(n, 0));
  sol.x = ev.x;
  sol.objective = ev.objective;
  sol.per_type_totals = ev.per_type_totals;
  sol.penalty = ev.penalty;
  sol.feasible = ev.feasible;
  sol.violations = ev.violations;
  if (limited) {
    sol.status = SolveStatus::LimitReached;
    sol.stats.best_bound = std::max(open_max, best.found ? best.objective : 0.0);
  } else if (best.found) {
    sol.status = SolveStatus::Optimal;
    sol.stats.best_bound = best.objective;
  } else {
    sol.status = SolveStatus::Infeasible;
    sol.stats.best_bound = 0.0;
  }
  sol.stats.backend = "bnb";
  sol.stats.nodes = nodes.load();
  sol.stats.incumbent_trace = std::move(best.trace);
  sol.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return sol;
}

}  // namespace

Solution solve(const SorsModel& model, const SolverConfig& cfg) {
  return solve(model, compute_influences(model), cfg);
}

Solution solve(const SorsModel& model, const std::vector<InfluenceMatrix>& influences,
               const SolverConfig& cfg) {
  validate_model(model);
  if (cfg.threads == 0) throw ValidationError("solver threads must be positive");
  if (cfg.node_limit && *cfg.node_limit == 0) {
    throw ValidationError("node limit must be positive");
  }
  if (cfg.time_limit && cfg.time_limit->count() <= 0.0) {
    throw ValidationError("time limit must be positive");
  }
  if (cfg.backend == Backend::Exhaustive) {
    return exhaustive_solve(model, influences);
  }
  return solve_branch_and_bound(model, influences, cfg);
}

}  // namespace sors
