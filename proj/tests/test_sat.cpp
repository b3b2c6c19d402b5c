#include <gtest/gtest.h>

#include <random>
#include <set>

#include "goodmat/sat.hpp"

using namespace goodmat;
using namespace goodmat::sat;

namespace {

using Cnf = std::vector<std::vector<Lit>>;

bool satisfied(const Cnf& cnf, std::uint32_t bits) {
  for (const auto& c : cnf) {
    bool any = false;
    for (Lit l : c) any = any || (((bits >> l.var()) & 1U) != 0) != l.negated();
    if (!any) return false;
  }
  return true;
}

std::set<std::uint32_t> brute_models(const Cnf& cnf, int vars) {
  std::set<std::uint32_t> out;
  for (std::uint32_t bits = 0; bits < (1U << vars); ++bits) {
    if (satisfied(cnf, bits)) out.insert(bits);
  }
  return out;
}

Cnf random_cnf(std::mt19937_64& rng, int vars, int clauses, int width) {
  Cnf cnf;
  for (int i = 0; i < clauses; ++i) {
    std::vector<Lit> c;
    const int len = 1 + static_cast<int>(rng() % static_cast<unsigned>(width));
    for (int j = 0; j < len; ++j) c.push_back(Lit::make(static_cast<int>(rng() % static_cast<unsigned>(vars)), rng() & 1U));
    cnf.push_back(c);
  }
  return cnf;
}

// Blocks every complete assignment, recording it.
class Enumerator final : public Propagator {
 public:
  std::optional<std::vector<Lit>> on_fixpoint(const Solver& s) override {
    std::vector<Lit> block;
    std::uint32_t bits = 0;
    for (int v = 0; v < s.num_vars(); ++v) {
      if (s.value(v) == Value::Undef) return std::nullopt;
      const bool t = s.value(v) == Value::True;
      if (t) bits |= 1U << v;
      block.push_back(Lit::make(v, t));
    }
    models.push_back(bits);
    return block;
  }
  std::vector<std::uint32_t> models;
};

class NotFalsified final : public Propagator {
 public:
  std::optional<std::vector<Lit>> on_fixpoint(const Solver& s) override {
    for (int v = 0; v < s.num_vars(); ++v) {
      if (s.value(v) == Value::Undef) return std::vector<Lit>{Lit::make(v)};
    }
    return std::nullopt;
  }
};

}  // namespace

TEST(Lit, DimacsConversion) {
  EXPECT_EQ(Lit::make(0).dimacs(), 1);
  EXPECT_EQ(Lit::make(4, true).dimacs(), -5);
  EXPECT_EQ(Lit::from_dimacs(-5), Lit::make(4, true));
  EXPECT_EQ(~Lit::make(2), Lit::make(2, true));
}

TEST(Solver, TrivialFormulas) {
  Solver empty(3);
  EXPECT_EQ(empty.solve(), Status::sat);

  Solver contradiction(1);
  EXPECT_TRUE(contradiction.add_clause({Lit::make(0)}));
  EXPECT_FALSE(contradiction.add_clause({Lit::make(0, true)}));
  EXPECT_EQ(contradiction.solve(), Status::unsat);

  Solver tautology(1);
  EXPECT_TRUE(tautology.add_clause({Lit::make(0), Lit::make(0, true)}));
  EXPECT_EQ(tautology.solve(), Status::sat);

  Solver empty_clause(1);
  EXPECT_FALSE(empty_clause.add_clause({}));
  EXPECT_EQ(empty_clause.solve(), Status::unsat);
}

TEST(Solver, PigeonholeThreeIntoTwoIsUnsat) {
  Solver s(6);  // p(i, h) = 2i + h
  auto p = [](int i, int h, bool neg = false) { return Lit::make(2 * i + h, neg); };
  for (int i = 0; i < 3; ++i) s.add_clause({p(i, 0), p(i, 1)});
  for (int h = 0; h < 2; ++h) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) s.add_clause({p(i, h, true), p(j, h, true)});
    }
  }
  EXPECT_EQ(s.solve(), Status::unsat);
  EXPECT_GT(s.stats().conflicts, 0U);
}

TEST(Solver, AgreesWithBruteForceOnRandomFormulas) {
  std::mt19937_64 rng(61);
  int sat_count = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int vars = 3 + static_cast<int>(rng() % 10);
    const auto cnf = random_cnf(rng, vars, 2 + static_cast<int>(rng() % (4 * static_cast<unsigned>(vars))), 3);
    Solver s(vars, trial % 2 ? rng() : 0);
    for (const auto& c : cnf) s.add_clause(c);
    const bool expected = !brute_models(cnf, vars).empty();
    const Status st = s.solve();
    ASSERT_EQ(st == Status::sat, expected) << "trial " << trial;
    if (st == Status::sat) {
      ++sat_count;
      std::uint32_t bits = 0;
      for (int v = 0; v < vars; ++v) {
        ASSERT_NE(s.value(v), Value::Undef);
        if (s.value(v) == Value::True) bits |= 1U << v;
      }
      ASSERT_TRUE(satisfied(cnf, bits));
    }
  }
  EXPECT_GT(sat_count, 100);
}

TEST(Solver, PropagatorEnumeratesEveryModelOnce) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 1000; ++trial) {
    const int vars = 2 + static_cast<int>(rng() % 9);
    const auto cnf = random_cnf(rng, vars, static_cast<int>(rng() % (3 * static_cast<unsigned>(vars))), 3);
    Solver s(vars, rng() % 4);
    for (const auto& c : cnf) s.add_clause(c);
    Enumerator e;
    ASSERT_EQ(s.solve(&e), Status::unsat);
    const std::set<std::uint32_t> got(e.models.begin(), e.models.end());
    ASSERT_EQ(got.size(), e.models.size()) << "model reported twice";
    ASSERT_EQ(got, brute_models(cnf, vars)) << "trial " << trial;
  }
}

TEST(Solver, ModelAtLevelZeroIsBlockedAndSearchTerminates) {
  Solver s(2);
  s.add_clause({Lit::make(0)});
  s.add_clause({Lit::make(1, true)});
  Enumerator e;
  EXPECT_EQ(s.solve(&e), Status::unsat);
  EXPECT_EQ(e.models, (std::vector<std::uint32_t>{1U}));
}

TEST(Solver, RejectsPropagatorClauseThatIsNotFalsified) {
  Solver s(2);
  NotFalsified p;
  EXPECT_THROW(s.solve(&p), ConsistencyError);
}

TEST(Solver, ConflictLimit) {
  // Pigeonhole 6 into 5 needs many conflicts.
  const int pigeons = 6, holes = 5;
  Solver s(pigeons * holes);
  auto p = [&](int i, int h, bool neg = false) { return Lit::make(i * holes + h, neg); };
  for (int i = 0; i < pigeons; ++i) {
    std::vector<Lit> c;
    for (int h = 0; h < holes; ++h) c.push_back(p(i, h));
    s.add_clause(c);
  }
  for (int h = 0; h < holes; ++h) {
    for (int i = 0; i < pigeons; ++i) {
      for (int j = i + 1; j < pigeons; ++j) s.add_clause({p(i, h, true), p(j, h, true)});
    }
  }
  EXPECT_EQ(s.solve(nullptr, Limits{10}), Status::limit);
  EXPECT_EQ(s.solve(), Status::unsat);
}

TEST(Solver, RejectsOutOfRangeVariable) {
  Solver s(2);
  EXPECT_THROW(s.add_clause({Lit::make(5)}), InvalidInput);
}
