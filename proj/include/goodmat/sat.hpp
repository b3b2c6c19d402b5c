#pragma once

// A small conflict-driven clause-learning solver with a programmatic hook.
//
// The hook (Propagator::on_fixpoint) runs after every propagation fixpoint
// that did not end in a conflict. It may return a clause that the current
// assignment falsifies; the solver backjumps and learns from it like any
// other conflict. Clauses are never deleted, which keeps blocking clauses
// permanent and makes all-solutions enumeration by blocking terminate.
//
// Literals use the usual 2*var + negated encoding. Variables are 0-based.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "goodmat/error.hpp"

namespace goodmat::sat {

struct Lit {
  int code = -2;

  static constexpr Lit make(int var, bool negated = false) { return Lit{2 * var + (negated ? 1 : 0)}; }
  constexpr int var() const { return code >> 1; }
  constexpr bool negated() const { return code & 1; }
  constexpr Lit operator~() const { return Lit{code ^ 1}; }
  // DIMACS form: 1-based, sign = polarity.
  constexpr int dimacs() const { return negated() ? -(var() + 1) : var() + 1; }
  static constexpr Lit from_dimacs(int v) { return make((v > 0 ? v : -v) - 1, v < 0); }

  friend constexpr bool operator==(Lit, Lit) = default;
  friend constexpr auto operator<=>(Lit, Lit) = default;
};

inline constexpr Lit kNoLit{};

enum class Value : std::int8_t { False = -1, Undef = 0, True = 1 };

class Solver;

class Propagator {
 public:
  virtual ~Propagator() = default;
  /// Return a clause falsified by the current assignment, or nothing.
  virtual std::optional<std::vector<Lit>> on_fixpoint(const Solver& solver) = 0;
};

enum class Status { sat, unsat, limit };

struct Stats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t theory_clauses = 0;
  std::uint64_t restarts = 0;
};

struct Limits {
  std::uint64_t max_conflicts = 0;  // 0 = unlimited
};

class Solver {
 public:
  explicit Solver(int num_vars, std::uint64_t seed = 0)
      : assigns_(static_cast<std::size_t>(num_vars), Value::Undef),
        level_(static_cast<std::size_t>(num_vars), 0),
        reason_(static_cast<std::size_t>(num_vars), -1),
        activity_(static_cast<std::size_t>(num_vars), 0.0),
        phase_(static_cast<std::size_t>(num_vars), false),
        seen_(static_cast<std::size_t>(num_vars), 0),
        watches_(2 * static_cast<std::size_t>(num_vars)),
        rng_(seed) {
    if (seed != 0) {
      std::uniform_real_distribution<double> jitter(0.0, 1e-3);
      std::bernoulli_distribution coin(0.5);
      for (auto& a : activity_) a = jitter(rng_);
      for (std::size_t v = 0; v < phase_.size(); ++v) phase_[v] = coin(rng_);
    }
  }

  int num_vars() const noexcept { return static_cast<int>(assigns_.size()); }
  int decision_level() const noexcept { return static_cast<int>(trail_lim_.size()); }
  const Stats& stats() const noexcept { return stats_; }
  std::size_t num_clauses() const noexcept { return clauses_.size(); }
  bool inconsistent() const noexcept { return unsat_; }

  Value value(int var) const { return assigns_[static_cast<std::size_t>(var)]; }
  Value value(Lit l) const {
    const Value v = assigns_[static_cast<std::size_t>(l.var())];
    return l.negated() ? static_cast<Value>(-static_cast<int>(v)) : v;
  }
  int level(int var) const { return level_[static_cast<std::size_t>(var)]; }

  /// Adds an original clause. Only valid at decision level 0. Returns false
  /// once the formula is known to be unsatisfiable.
  bool add_clause(std::vector<Lit> lits) {
    if (decision_level() != 0) cancel_until(0);
    if (unsat_) return false;
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::vector<Lit> kept;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      check_var(lits[i]);
      if (i + 1 < lits.size() && lits[i + 1] == ~lits[i]) return true;  // tautology
      const Value v = value(lits[i]);
      if (v == Value::True) return true;
      if (v == Value::Undef) kept.push_back(lits[i]);
    }
    if (kept.empty()) {
      unsat_ = true;
      return false;
    }
    if (kept.size() == 1) {
      enqueue(kept[0], -1);
      if (propagate() != -1) unsat_ = true;
      return !unsat_;
    }
    attach(std::move(kept));
    return true;
  }

  /// Runs until the formula (plus everything the propagator adds) is
  /// unsatisfiable, a model survives the propagator, or a limit is hit.
  Status solve(Propagator* prop = nullptr, Limits limits = {}) {
    if (unsat_) return Status::unsat;
    const std::uint64_t start_conflicts = stats_.conflicts;
    std::uint64_t restart_budget = luby(restart_index_) * kRestartUnit;
    std::uint64_t since_restart = 0;
    for (;;) {
      const int confl = propagate();
      if (confl != -1) {
        ++stats_.conflicts;
        ++since_restart;
        if (decision_level() == 0) {
          unsat_ = true;
          return Status::unsat;
        }
        learn_from_conflict(confl);
        continue;
      }
      if (prop) {
        if (auto clause = prop->on_fixpoint(*this)) {
          ++stats_.theory_clauses;
          ++stats_.conflicts;
          ++since_restart;
          if (!add_falsified_clause(std::move(*clause))) return Status::unsat;
          continue;
        }
      }
      if (limits.max_conflicts && stats_.conflicts - start_conflicts >= limits.max_conflicts) {
        return Status::limit;
      }
      if (since_restart >= restart_budget) {
        ++stats_.restarts;
        cancel_until(0);
        since_restart = 0;
        restart_budget = luby(++restart_index_) * kRestartUnit;
        continue;
      }
      const int v = pick_branch_var();
      if (v < 0) return Status::sat;
      ++stats_.decisions;
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(Lit::make(v, !phase_[static_cast<std::size_t>(v)]), -1);
    }
  }

 private:
  static constexpr std::uint64_t kRestartUnit = 64;
  static constexpr double kVarDecay = 0.95;

  static std::uint64_t luby(std::uint64_t i) {
    // Luby sequence 1,1,2,1,1,2,4,... indexed from 0.
    std::uint64_t size = 1, seq = 0;
    while (size < i + 1) {
      ++seq;
      size = 2 * size + 1;
    }
    while (size - 1 != i) {
      size = (size - 1) >> 1;
      --seq;
      i = i % size;
    }
    return std::uint64_t{1} << seq;
  }

  void check_var(Lit l) const {
    if (l.var() < 0 || l.var() >= num_vars()) throw InvalidInput("literal refers to unknown variable");
  }

  int attach(std::vector<Lit> lits) {
    const int cr = static_cast<int>(clauses_.size());
    watches_[static_cast<std::size_t>((~lits[0]).code)].push_back(cr);
    watches_[static_cast<std::size_t>((~lits[1]).code)].push_back(cr);
    clauses_.push_back(std::move(lits));
    return cr;
  }

  void enqueue(Lit l, int reason) {
    const auto v = static_cast<std::size_t>(l.var());
    assigns_[v] = l.negated() ? Value::False : Value::True;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    const auto stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(lvl)]);
    for (std::size_t i = trail_.size(); i-- > stop;) {
      const auto v = static_cast<std::size_t>(trail_[i].var());
      phase_[v] = !trail_[i].negated();
      assigns_[v] = Value::Undef;
      reason_[v] = -1;
    }
    trail_.resize(stop);
    trail_lim_.resize(static_cast<std::size_t>(lvl));
    qhead_ = std::min(qhead_, trail_.size());
  }

  int propagate() {
    while (qhead_ < trail_.size()) {
      const Lit p = trail_[qhead_++];
      ++stats_.propagations;
      auto& ws = watches_[static_cast<std::size_t>(p.code)];
      const Lit false_lit = ~p;
      std::size_t i = 0, j = 0;
      while (i < ws.size()) {
        const int cr = ws[i];
        auto& c = clauses_[static_cast<std::size_t>(cr)];
        if (c[0] == false_lit) std::swap(c[0], c[1]);
        if (value(c[0]) == Value::True) {
          ws[j++] = ws[i++];
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) != Value::False) {
            std::swap(c[1], c[k]);
            watches_[static_cast<std::size_t>((~c[1]).code)].push_back(cr);
            moved = true;
            break;
          }
        }
        if (moved) {
          ++i;
          continue;
        }
        ws[j++] = ws[i++];
        if (value(c[0]) == Value::False) {
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead_ = trail_.size();
          return cr;
        }
        enqueue(c[0], cr);
      }
      ws.resize(j);
    }
    return -1;
  }

  void bump(int v) {
    auto& a = activity_[static_cast<std::size_t>(v)];
    a += var_inc_;
    if (a > 1e100) {
      for (auto& x : activity_) x *= 1e-100;
      var_inc_ *= 1e-100;
    }
  }

  // First-UIP analysis; the conflict clause must have a literal at the
  // current decision level.
  void learn_from_conflict(int confl) {
    std::vector<Lit> learnt{kNoLit};
    int path = 0;
    Lit p = kNoLit;
    std::size_t idx = trail_.size();
    do {
      for (Lit q : clauses_[static_cast<std::size_t>(confl)]) {
        if (p != kNoLit && q.var() == p.var()) continue;
        const auto v = static_cast<std::size_t>(q.var());
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        bump(q.var());
        if (level_[v] >= decision_level()) {
          ++path;
        } else {
          learnt.push_back(q);
        }
      }
      do {
        --idx;
      } while (!seen_[static_cast<std::size_t>(trail_[idx].var())]);
      p = trail_[idx];
      confl = reason_[static_cast<std::size_t>(p.var())];
      seen_[static_cast<std::size_t>(p.var())] = 0;
      --path;
    } while (path > 0);
    learnt[0] = ~p;
    for (std::size_t i = 1; i < learnt.size(); ++i) seen_[static_cast<std::size_t>(learnt[i].var())] = 0;
    var_inc_ /= kVarDecay;

    int back = 0;
    if (learnt.size() > 1) {
      std::size_t best = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i) {
        if (level(learnt[i].var()) > level(learnt[best].var())) best = i;
      }
      std::swap(learnt[1], learnt[best]);
      back = level(learnt[1].var());
    }
    cancel_until(back);
    if (learnt.size() == 1) {
      enqueue(learnt[0], -1);
    } else {
      const Lit asserting = learnt[0];
      const int cr = attach(std::move(learnt));
      enqueue(asserting, cr);
    }
  }

  // Clause from the propagator; every literal must currently be false.
  bool add_falsified_clause(std::vector<Lit> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    int top = 0;
    for (Lit l : lits) {
      check_var(l);
      if (value(l) != Value::False) throw ConsistencyError("propagator clause is not falsified");
      top = std::max(top, level(l.var()));
    }
    if (lits.empty() || top == 0) {
      unsat_ = true;
      return false;
    }
    cancel_until(top);
    // Highest levels first so the watches sit on the last-falsified literals.
    std::sort(lits.begin(), lits.end(),
              [this](Lit a, Lit b) { return level(a.var()) > level(b.var()); });
    if (lits.size() == 1) {
      cancel_until(0);
      enqueue(lits[0], -1);
      return true;
    }
    if (level(lits[1].var()) < top) {
      // Exactly one literal at the top level: the clause is asserting.
      cancel_until(level(lits[1].var()));
      const Lit asserting = lits[0];
      const int cr = attach(std::move(lits));
      enqueue(asserting, cr);
      return true;
    }
    learn_from_conflict(attach(std::move(lits)));
    return true;
  }

  int pick_branch_var() const {
    int best = -1;
    for (int v = 0; v < num_vars(); ++v) {
      if (assigns_[static_cast<std::size_t>(v)] != Value::Undef) continue;
      if (best < 0 || activity_[static_cast<std::size_t>(v)] > activity_[static_cast<std::size_t>(best)]) best = v;
    }
    return best;
  }

  std::vector<std::vector<Lit>> clauses_;
  std::vector<Value> assigns_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<double> activity_;
  std::vector<bool> phase_;  // saved polarity: true = positive
  std::vector<char> seen_;
  std::vector<std::vector<int>> watches_;  // indexed by the literal whose truth falsifies a watch
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  std::uint64_t restart_index_ = 0;
  bool unsat_ = false;
  Stats stats_;
  std::mt19937_64 rng_;
};

}  // namespace goodmat::sat
