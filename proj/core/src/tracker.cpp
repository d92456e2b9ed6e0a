#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "kent/errors.hpp"
#include "kent/solver.hpp"

namespace kent {

namespace {

struct Node {
  WaveType type;
  double birth_x;
  double birth_t;
  double speed;
  double left_state;
  double right_state;
  int prev = -1;
  int next = -1;
  bool alive = true;

  double position(double t) const { return birth_x + speed * (t - birth_t); }
};

struct Event {
  double t;
  double x;
  int left;
  int right;

  bool operator>(const Event& o) const {
    if (t != o.t) return t > o.t;
    if (x != o.x) return x > o.x;
    return left > o.left;
  }
};

}  // namespace

struct FrontTracker::Impl {
  FluxModel flux;
  double delta;
  std::uint64_t budget;
  double now = 0.0;
  std::uint64_t interactions = 0;
  std::vector<Node> nodes;
  int head = -1;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue;

  Impl(const FluxModel& f, double d, std::uint64_t b) : flux(f), delta(d), budget(b) {}

  // Appends the fan born at (x, t) after node 'after'; returns the first and
  // last new ids, or {-1, -1} for an empty fan.
  std::pair<int, int> insert_fan(const WaveFan& fan, double x, double t, int after, int before) {
    int first = -1;
    int last = after;
    for (const auto& w : fan.waves) {
      const int id = static_cast<int>(nodes.size());
      nodes.push_back({w.type, x, t, w.speed, w.left_state, w.right_state, last, -1, true});
      if (last >= 0) {
        nodes[last].next = id;
      } else {
        head = id;
      }
      if (first < 0) first = id;
      last = id;
    }
    if (first < 0) {
      if (after >= 0) {
        nodes[after].next = before;
      } else {
        head = before;
      }
      if (before >= 0) nodes[before].prev = after;
      return {-1, -1};
    }
    nodes[last].next = before;
    if (before >= 0) nodes[before].prev = last;
    return {first, last};
  }

  void schedule(int l, int r) {
    if (l < 0 || r < 0) return;
    const Node& a = nodes[l];
    const Node& b = nodes[r];
    if (!(a.speed > b.speed)) return;
    const double gap = b.position(now) - a.position(now);
    const double t = now + std::max(0.0, gap) / (a.speed - b.speed);
    queue.push({t, a.position(t), l, r});
  }

  void resolve(const Event& e) {
    now = std::max(now, e.t);
    if (++interactions > budget) {
      throw StallError("front interaction budget of " + std::to_string(budget) +
                       " exceeded; delta is too coarse for this data");
    }
    const double x = 0.5 * (nodes[e.left].position(now) + nodes[e.right].position(now));
    const double tol = 1e-11 * (1.0 + std::abs(x));
    int first = e.left;
    int last = e.right;
    while (nodes[first].prev >= 0 && std::abs(nodes[nodes[first].prev].position(now) - x) <= tol) {
      first = nodes[first].prev;
    }
    while (nodes[last].next >= 0 && std::abs(nodes[nodes[last].next].position(now) - x) <= tol) {
      last = nodes[last].next;
    }
    const int before = nodes[first].prev;
    const int after = nodes[last].next;
    const double uL = nodes[first].left_state;
    const double uR = nodes[last].right_state;
    for (int id = first;; id = nodes[id].next) {
      nodes[id].alive = false;
      if (id == last) break;
    }
    const auto [f, l] = insert_fan(riemann(flux, uL, uR, delta), x, now, before, after);
    if (f < 0) {
      schedule(before, after);
    } else {
      schedule(before, f);
      schedule(l, after);
    }
  }

  void advance_to(double t) {
    if (t < now) throw DomainError("front tracker cannot move backwards in time");
    while (!queue.empty() && queue.top().t <= t) {
      const Event e = queue.top();
      queue.pop();
      if (!nodes[e.left].alive || !nodes[e.right].alive || nodes[e.left].next != e.right) continue;
      resolve(e);
    }
    now = t;
  }

  std::vector<Front> fronts() const {
    std::vector<Front> out;
    double floor = -std::numeric_limits<double>::infinity();
    for (int id = head; id >= 0; id = nodes[id].next) {
      const Node& n = nodes[id];
      // Fronts about to meet can cross by a rounding error.
      floor = std::max(floor, n.position(now));
      out.push_back({n.type, floor, n.left_state, n.right_state, n.speed});
    }
    return out;
  }
};

FrontTracker::FrontTracker(const FluxModel& flux, const PiecewiseConstantFn& u0, EvolveOptions options) {
  const double delta = options.delta > 0.0 ? options.delta : 1e-3 * flux.M();
  impl_ = std::make_unique<Impl>(flux, delta, options.max_interactions);
  const auto x = u0.breakpoints();
  const auto v = u0.values();
  int tail = -1;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double left = k == 0 ? 0.0 : v[k - 1];
    const double right = k < v.size() ? v[k] : 0.0;
    const auto [f, l] = impl_->insert_fan(riemann(flux, left, right, delta), x[k], 0.0, tail, -1);
    if (l >= 0) tail = l;
    (void)f;
  }
  for (int id = impl_->head; id >= 0; id = impl_->nodes[id].next) impl_->schedule(id, impl_->nodes[id].next);
}

FrontTracker::~FrontTracker() = default;
FrontTracker::FrontTracker(FrontTracker&&) noexcept = default;
FrontTracker& FrontTracker::operator=(FrontTracker&&) noexcept = default;

void FrontTracker::advance_to(double t) { impl_->advance_to(t); }
double FrontTracker::time() const { return impl_->now; }
double FrontTracker::delta() const { return impl_->delta; }
std::uint64_t FrontTracker::interactions() const { return impl_->interactions; }

FrontState FrontTracker::state() const {
  return {impl_->now, impl_->delta, impl_->fronts(), impl_->interactions};
}

PiecewiseConstantFn FrontTracker::profile() const { return state().profile(); }

PiecewiseConstantFn FrontState::profile() const {
  if (fronts.empty()) return {};
  std::vector<double> x;
  std::vector<double> v;
  x.reserve(fronts.size());
  v.reserve(fronts.size());
  for (std::size_t k = 0; k < fronts.size(); ++k) {
    x.push_back(fronts[k].position);
    if (k + 1 < fronts.size()) v.push_back(fronts[k].right_state);
  }
  return PiecewiseConstantFn(std::move(x), std::move(v));
}

PiecewiseConstantFn evolve(const FluxModel& flux, const PiecewiseConstantFn& u0, double T, EvolveOptions options) {
  if (!(T >= 0.0)) throw DomainError("evolution time must be nonnegative");
  FrontTracker tracker(flux, u0, options);
  tracker.advance_to(T);
  return tracker.profile();
}

std::vector<PiecewiseConstantFn> evolve_snapshots(const FluxModel& flux, const PiecewiseConstantFn& u0,
                                                  const std::vector<double>& times, EvolveOptions options) {
  FrontTracker tracker(flux, u0, options);
  std::vector<PiecewiseConstantFn> out;
  out.reserve(times.size());
  for (double t : times) {
    tracker.advance_to(t);
    out.push_back(tracker.profile());
  }
  return out;
}

}  // namespace kent
