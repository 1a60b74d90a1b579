#include "rsched/adversary.hpp"

#include <algorithm>
#include <array>

#include "rsched/offline.hpp"

namespace rsched {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

Instance make(int m, std::vector<std::pair<Rat, Rat>> release_size) {
  Instance inst{m, {}};
  JobId id = 1;
  for (auto& [r, p] : release_size) inst.jobs.push_back({id++, r, p});
  inst.validate();
  return inst;
}

Counterexample candidate1(const CounterexampleParams& p) {
  const Rat rho = p.rho.value_or(Rat(1, 2));
  require(rho.is_positive() && rho < Rat(1), "c1: rho must lie in (0, 1)");
  require(p.xi.is_positive() && p.xi < rho, "c1: xi must lie in (0, rho)");
  const std::int64_t k = ceil(Rat(1) / rho);
  require(p.m >= k + 1, "c1: m must be at least ceil(1/rho) + 1 = " + std::to_string(k + 1));
  std::vector<std::pair<Rat, Rat>> jobs;
  for (int i = 0; i < p.m; ++i) jobs.emplace_back(Rat(0), Rat(1));
  for (std::int64_t i = 1; i < k; ++i) jobs.emplace_back(Rat(i) * rho, Rat(1) + Rat(i) * p.xi);
  // Lands just before the unit jobs finish, so the replacement still fires.
  jobs.emplace_back(Rat(1) - p.xi, Rat(1) + Rat(k) * p.xi);
  for (std::int64_t i = 0; i < p.m - k; ++i) jobs.emplace_back(Rat(1), Rat(1));
  return {"c1", make(p.m, std::move(jobs)), Candidate1Config{rho}};
}

Counterexample candidate2(const CounterexampleParams& p) {
  const Rat rho = p.rho.value_or(Rat(1, 2));
  const Rat mu = p.mu.value_or(Rat(3, 2));
  require(p.m >= 1, "c2: m must be >= 1");
  require(rho.is_positive() && rho < Rat(1) && mu > Rat(1) && mu < Rat(2), "c2: need 0 < rho < 1 < mu < 2");
  require(mu + rho <= Rat(2), "c2: need mu + rho <= 2");
  const int m = p.m;
  std::vector<std::pair<Rat, Rat>> jobs;
  for (int i = 1; i <= m; ++i) jobs.emplace_back(Rat(0), Rat(m + i));
  jobs.emplace_back(Rat(m), Rat(3 * m));
  for (int i = 1; i < m; ++i) jobs.emplace_back(Rat(m), Rat(2 * m + i));
  return {"c2", make(m, std::move(jobs)), Candidate2Config{rho, mu}};
}

Counterexample candidate3(const CounterexampleParams& p) {
  const Rat gamma = p.gamma.value_or(Rat(1, 10));
  require(p.m >= 2, "c3: m must be >= 2");
  require(gamma.is_positive(), "c3: gamma must be > 0");
  const int m = p.m;
  std::vector<std::pair<Rat, Rat>> jobs;
  for (int i = 0; i < m; ++i) jobs.emplace_back(Rat(0), Rat(2 * m + i));
  for (int i = 0; i < m; ++i) jobs.emplace_back(Rat(0), Rat(3 * m + i));
  jobs.emplace_back(Rat(3 * m - 1), Rat(3 * m));
  return {"c3", make(m, std::move(jobs)), Candidate3Config{gamma}};
}

Counterexample candidate4(const CounterexampleParams& p) {
  const Rat alpha = p.alpha.value_or(Rat(1, 200));
  const Rat beta = p.beta.value_or(Rat(3, 5));
  require(p.m >= 4, "c4: m must be >= 4");
  require(p.xi.is_positive() && p.xi < Rat(1, 2), "c4: xi must lie in (0, 1/2)");
  require(alpha.is_positive(), "c4: alpha must be > 0");
  require(beta >= Rat(1, 2) + p.xi, "c4: beta must be at least 1/2 + xi");
  std::vector<std::pair<Rat, Rat>> jobs;
  for (int i = 0; i < p.m; ++i) jobs.emplace_back(Rat(0), Rat(1));
  for (int i = 0; i < p.m; ++i) jobs.emplace_back(Rat(0), Rat(3, 2) + p.xi);
  jobs.emplace_back(Rat(1), Rat(2));
  return {"c4", make(p.m, std::move(jobs)), RestartParams{alpha, beta}};
}

Counterexample candidate5(const CounterexampleParams& p) {
  const Rat alpha = p.alpha.value_or(Rat(1, 2));
  const Rat beta = p.beta.value_or(Rat(1, 5));
  require(p.m == 1, "c5: m must be 1");
  require(p.jobs >= 1 && p.jobs <= static_cast<int>(kDefaultOracleCap), "c5: jobs must lie in [1, 14]");
  require(p.xi.is_positive() && p.xi < Rat(1, 2), "c5: xi must lie in (0, 1/2)");
  require(alpha >= Rat(1, 2), "c5: alpha must be >= 1/2");
  require(beta.is_positive() && beta < Rat(1, 2), "c5: beta must lie in (0, 1/2)");
  std::vector<std::pair<Rat, Rat>> jobs;
  Rat r;
  Rat size(1);
  for (int i = 0; i < p.jobs; ++i) {
    jobs.emplace_back(r, size);
    r = r + size - p.xi;
    size = size * Rat(2);
  }
  return {"c5", make(1, std::move(jobs)), RestartParams{alpha, beta}};
}

}  // namespace

Instance lpt_tight(int m, const Rat& eps) {
  require(m >= 1, "lpt_tight: m must be >= 1");
  require(eps.is_positive() && eps < Rat(1, 2), "lpt_tight: eps must lie in (0, 1/2)");
  std::vector<std::pair<Rat, Rat>> jobs(static_cast<std::size_t>(m), {Rat(0), Rat(1, 2)});
  jobs.emplace_back(eps, Rat(1));
  return make(m, std::move(jobs));
}

Instance leftover_tight(int m, const Rat& eps) {
  require(m >= 2 && m % 2 == 0, "leftover_tight: m must be a positive even number");
  require(eps.is_positive() && eps < Rat(1, 2), "leftover_tight: eps must lie in (0, 1/2)");
  std::vector<std::pair<Rat, Rat>> jobs(static_cast<std::size_t>(m), {Rat(0), Rat(1, 2)});
  for (int i = 0; i < m / 2; ++i) jobs.emplace_back(eps, Rat(1) - eps);
  return make(m, std::move(jobs));
}

Counterexample candidate_counterexample(const std::string& name, const CounterexampleParams& params) {
  if (name == "c1") return candidate1(params);
  if (name == "c2") return candidate2(params);
  if (name == "c3") return candidate3(params);
  if (name == "c4") return candidate4(params);
  if (name == "c5") return candidate5(params);
  throw InputError("unknown counterexample '" + name + "' (expected c1..c5)");
}

Rat default_hardness_q() { return Rat(2449489742783, 1000000000000); }

AdversarySpec hardness_adversary(const Rat& q) {
  require(q > Rat(2) && q < Rat(3), "hardness: q must lie in (2, 3)");
  AdversarySpec spec;
  spec.q = q;
  spec.machines = 2;
  spec.seeds = {{1, Rat(0), Rat(1)}, {2, Rat(0), Rat(1)}, {3, Rat(3) - q, q - Rat(1)}};
  spec.adversary.triggers = {Rat(1)};
  spec.adversary.observe = [q](const EngineState& s) -> std::vector<Job> {
    bool early = false;
    for (const Segment& seg : s.closed_segments) early = early || (seg.job == 3 && seg.start < Rat(1));
    for (const auto& slot : s.machines) early = early || (slot && slot->job == 3 && slot->started_at < Rat(1));
    if (!early) return {};
    return {{4, Rat(1), q - Rat(1)}};
  };
  return spec;
}

HardnessOutcome run_hardness(const PolicyConfig& policy, const Rat& q) {
  const AdversarySpec spec = hardness_adversary(q);
  HardnessOutcome out;
  out.trace = run_with_adversary(spec.seeds, spec.machines, policy, spec.adversary);
  out.branch = out.trace.instance.jobs.size() > 3 ? 2 : 1;
  out.alg = makespan(out.trace);
  out.opt = optimal_schedule(out.trace.instance).makespan;
  out.ratio = out.alg / out.opt;
  out.target = out.branch == 1 ? q / Rat(2) : Rat(3) / q;
  return out;
}

// ---- fuzzing ----

namespace {

class Draw {
 public:
  Draw(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    rng_.seed(seq);
  }

  // Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng_() % span);
  }
  bool chance(int percent) { return between(1, 100) <= percent; }
  template <class C>
  const auto& pick(const C& c) {
    return c[static_cast<std::size_t>(between(0, static_cast<std::int64_t>(c.size()) - 1))];
  }

 private:
  std::mt19937_64 rng_;
};

constexpr std::array<std::int64_t, 6> kDenominators{1, 2, 4, 5, 8, 10};

Rat small_positive(Draw& d, std::int64_t den, std::int64_t max_units) {
  return Rat(d.between(1, max_units * den), den);
}

Rat small_release(Draw& d, std::int64_t den, std::int64_t max_units) { return Rat(d.between(0, max_units * den), den); }

// Ratios on both sides of 1 + beta for the shipped parameter sets, plus the
// boundaries used by the counterexamples.
const std::array<Rat, 8>& staircase_ratios() {
  static const std::array<Rat, 8> r{Rat(577, 408), Rat(239, 169), Rat(121, 100), Rat(119, 100),
                                    Rat(6, 5),     Rat(3, 2),     Rat(2),        Rat(101, 100)};
  return r;
}

}  // namespace

Instance fuzz_instance(std::uint64_t seed, std::uint64_t index, int n_max, const std::vector<int>& m_choices) {
  require(!m_choices.empty(), "fuzz: no machine counts given");
  require(n_max >= 1 && n_max <= static_cast<int>(kDefaultOracleCap), "fuzz: n_max must lie in [1, 14]");
  Draw d(seed, index);
  Instance inst{d.pick(m_choices), {}};
  const auto n = d.between(1, n_max);
  const std::int64_t den = d.pick(kDenominators);
  const int shape = static_cast<int>(d.between(0, 5));

  std::vector<Rat> centers;
  for (int c = 0; c < 3; ++c) centers.push_back(small_release(d, den, 3));
  const Rat base = small_positive(d, den, 2);
  const Rat& ratio = d.pick(staircase_ratios());
  Rat clock;

  for (std::int64_t i = 0; i < n; ++i) {
    Rat r;
    Rat p;
    switch (shape) {
      case 0:  // uniform
        r = small_release(d, den, 3);
        p = small_positive(d, den, 4);
        break;
      case 1:  // clustered releases
        r = d.pick(centers) + Rat(d.between(0, 3), 100);
        p = small_positive(d, den, 4);
        break;
      case 2:  // near-equal sizes
        r = d.chance(50) ? Rat(0) : small_release(d, den, 2);
        p = base + Rat(d.between(0, 4), 100);
        break;
      case 3:  // one giant job among small ones
        r = small_release(d, den, 2);
        p = i == 0 ? base * Rat(d.between(2, 2 + n)) : small_positive(d, den, 1);
        if (i == 0 && d.chance(50)) r = r + Rat(d.between(1, 9), 1000);
        break;
      case 4: {  // staircase arriving in quick succession
        const auto e = d.between(0, 2);
        p = base;
        for (std::int64_t k = 0; k < e; ++k) p = p * ratio;
        if (i >= inst.machines) clock = clock + (d.chance(80) ? Rat(d.between(0, 4), 1000) : small_positive(d, den, 1));
        r = clock;
        break;
      }
      default:  // halves and units, the tight LPT pattern with noise
        p = d.chance(60) ? Rat(1, 2) : Rat(1) - Rat(d.between(0, 2), 100);
        r = d.chance(60) ? Rat(0) : Rat(d.between(1, 20), 1000);
        break;
    }
    inst.jobs.push_back({i + 1, r, p});
  }
  inst.validate();
  return inst;
}

std::vector<Instance> fuzz_instances(std::uint64_t seed, std::size_t count, int n_max,
                                     const std::vector<int>& m_choices) {
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(fuzz_instance(seed, i, n_max, m_choices));
  return out;
}

Rat fuzz_factor(std::uint64_t seed, std::uint64_t index) {
  Draw d(seed ^ 0x5ca1eULL, index);
  return Rat(d.between(1, 40), d.pick(std::array<std::int64_t, 5>{1, 3, 7, 10, 12}));
}

// ---- Claim 3 sampling ----

namespace {

constexpr std::int64_t kHGrid = 64;
constexpr std::int64_t kAGrid = 16;
constexpr std::int64_t kBGrid = 1024;

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

bool admissible(const Claim3Triple& t) {
  Rat ah;
  Rat ab;
  for (std::size_t i = 0; i < t.a.size(); ++i) {
    if (!t.a[i].is_positive() || !t.b[i].is_positive()) return false;
    if (t.h[i].is_negative() || t.h[i] > Rat(1) || (i > 0 && t.h[i] < t.h[i - 1])) return false;
    ah += t.a[i] * t.h[i];
    ab += t.a[i] + t.b[i];
    if (ah * Rat(4) < ab) return false;
  }
  return true;
}

}  // namespace

Rat claim3_slack(const Claim3Triple& t) {
  Rat total;
  Rat lhs;
  for (std::size_t i = 0; i < t.a.size(); ++i) {
    total += t.a[i] + t.b[i];
    lhs += t.b[i] * (Rat(1) - t.h[i]);
  }
  return total / Rat(4) - lhs;
}

Claim3Triple random_claim3_triple(std::mt19937_64& rng, int k_max) {
  while (true) {
    const auto k = static_cast<std::size_t>(uniform(rng, 1, k_max));
    std::vector<std::int64_t> hs(k);
    for (auto& x : hs) x = uniform(rng, 0, kHGrid);
    std::sort(hs.begin(), hs.end());

    Claim3Triple t;
    Rat ah;
    Rat a_sum;
    Rat b_sum;
    for (std::size_t j = 0; j < k; ++j) {
      const Rat h(hs[j], kHGrid);
      const Rat a(uniform(rng, 1, 4 * kAGrid), kAGrid);
      const Rat cap = Rat(4) * (ah + a * h) - (a_sum + a) - b_sum;
      if (!cap.is_positive()) break;
      const std::int64_t units = floor(cap * Rat(kBGrid));
      const Rat b = units == 0 || uniform(rng, 0, 3) == 0 ? cap : Rat(uniform(rng, 1, units), kBGrid);
      t.a.push_back(a);
      t.b.push_back(b);
      t.h.push_back(h);
      ah += a * h;
      a_sum += a;
      b_sum += b;
    }
    if (!t.a.empty()) return t;
  }
}

Claim3Triple hill_climb_claim3(Claim3Triple start, std::mt19937_64& rng, int steps) {
  Claim3Triple best = std::move(start);
  Rat best_slack = claim3_slack(best);
  const std::size_t k = best.a.size();
  for (int s = 0; s < steps; ++s) {
    Claim3Triple cand = best;
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(k) - 1));
    const Rat sign(uniform(rng, 0, 1) == 0 ? -1 : 1);
    switch (uniform(rng, 0, 2)) {
      case 0:
        cand.h[i] += sign * Rat(1, kHGrid);
        break;
      case 1:
        cand.a[i] += sign * Rat(1, kAGrid);
        break;
      default:
        cand.b[i] += sign * Rat(1, kBGrid);
        break;
    }
    if (!admissible(cand)) continue;
    const Rat slack = claim3_slack(cand);
    if (slack <= best_slack) {
      best = std::move(cand);
      best_slack = slack;
    }
  }
  return best;
}

}  // namespace rsched
