#include <cmath>
#include <map>

#include "doctest.h"
#include "oracles.hpp"
#include "wiresafe/audit.hpp"

using namespace wiresafe;

namespace {

const FieldSpec gf8 = FieldSpec::standard(3);
const BaseMatrix example_b = BaseMatrix::from_rows({{1, 0, 1}, {0, 1, 1}});

/// H(S|W) in bits, from a table filled by plain loops and evaluated in floating point.
double conditional_entropy_oracle(const CosetScheme& scheme, const BaseMatrix& b) {
  const FieldSpec& f = scheme.spec();
  const std::size_t k = scheme.k(), mu = scheme.mu();
  const std::uint64_t q = f.order();
  std::map<std::vector<Word>, std::map<std::uint64_t, double>> table;
  std::uint64_t total = 0;
  std::uint64_t messages = 1, draws = 1;
  for (std::size_t i = 0; i < k; ++i) messages *= q;
  for (std::size_t i = 0; i < mu; ++i) draws *= q;
  for (std::uint64_t s = 0; s < messages; ++s)
    for (std::uint64_t r = 0; r < draws; ++r) {
      ExtVector sv(f, k), rv(f, mu);
      for (std::size_t i = 0; i < k; ++i) sv[i] = (s / static_cast<std::uint64_t>(std::pow(q, i))) % q;
      for (std::size_t i = 0; i < mu; ++i) rv[i] = (r / static_cast<std::uint64_t>(std::pow(q, i))) % q;
      const ExtVector x = scheme.encode_with(sv, rv);
      std::vector<Word> w(b.rows(), 0);
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
          if (b.get(i, j)) w[i] ^= x[j];
      table[w][s] += 1;
      ++total;
    }
  double h = 0;
  for (const auto& [w, row] : table) {
    double nw = 0;
    for (const auto& [s, c] : row) nw += c;
    for (const auto& [s, c] : row) h -= (c / static_cast<double>(total)) * std::log2(c / nw);
  }
  return h;
}

}  // namespace

TEST_CASE("exact entropies from counts") {
  const Entropy uniform8 = entropy_from_counts(std::vector<std::uint64_t>(8, 5));
  CHECK(uniform8.exact);
  CHECK(uniform8.bits == Rational::make(3, 1));
  CHECK(uniform8.approx == doctest::Approx(3.0));

  const Entropy skewed = entropy_from_counts({2, 1, 1});  // 1.5 bits
  CHECK(skewed.exact);
  CHECK(skewed.bits == Rational::make(3, 2));
  CHECK((uniform8 - skewed).bits == Rational::make(3, 2));

  const Entropy inexact = entropy_from_counts({1, 2});
  CHECK_FALSE(inexact.exact);
  CHECK(inexact.approx == doctest::Approx(0.9182958340544896));
  CHECK(entropy_from_counts({7}).bits == Rational::make(0, 1));
  CHECK(Rational::make(6, 4).to_string() == "3/2");
  CHECK(Rational::make(4, 2).to_string() == "2");
}

TEST_CASE("worked example: every (S, W) pair has probability 1/64 given S") {
  const CosetScheme scheme(build_gabidulin(gf8, 3, 1));
  const auto jd = joint_distribution(scheme, ExtMatrix::embed(gf8, example_b));
  CHECK(jd.total == 512);
  CHECK(jd.message_count == 8);
  CHECK(jd.observations.size() == 64);
  CHECK(jd.entries.size() == 512);
  for (const auto& [s, w, c] : jd.entries) REQUIRE(c == 1);  // N(S, W) / N(S) = 1 / 64
  for (auto c : jd.s_marginal) CHECK(c == 64);

  const SecrecyEntry e = exhaustive_secrecy(scheme, example_b);
  CHECK(e.independent);
  CHECK(e.stack_nonsingular);
  CHECK(e.rank_b == 2);
  CHECK(e.h_s.exact);
  CHECK(e.h_s.bits == Rational::make(3, 1));
  CHECK(e.h_s_given_w.bits == Rational::make(3, 1));
  CHECK(e.h_x.bits == Rational::make(9, 1));  // H(S) + mu m
  CHECK(e.h_s_given_x.bits == Rational::make(0, 1));
  CHECK(e.pairs == 512);
}

TEST_CASE("stack nonsingularity examples") {
  const auto code = build_gabidulin(gf8, 3, 1);
  CHECK(check_stack_nonsingular(code, example_b));
  const auto all = enumerate_full_rank(2, 3);
  REQUIRE(all.size() == 42);
  for (const auto& b : all) CHECK(check_stack_nonsingular(code, b));
  CHECK_FALSE(find_singular_stack(code.parity_check()).has_value());

  const ExtMatrix bad = ExtMatrix::from_rows(gf8, {{1, 1, 0}});
  CHECK_FALSE(check_stack_condition(bad, BaseMatrix::from_rows({{1, 1, 0}, {0, 0, 1}})));
  const auto witness = find_singular_stack(bad);
  REQUIRE(witness.has_value());
  CHECK_FALSE(check_stack_condition(bad, *witness));
  CHECK_THROWS_AS(check_stack_nonsingular(code, BaseMatrix::from_rows({{1, 0, 1}})), Error);
}

TEST_CASE("stack nonsingularity holds for every small Gabidulin code") {
  for (int m = 1; m <= 4; ++m) {
    const FieldSpec f = FieldSpec::standard(m);
    for (std::size_t n = 1; n <= static_cast<std::size_t>(m); ++n)
      for (std::size_t k = 1; k < n; ++k) {
        const auto code = build_gabidulin(f, n, k);
        for (const auto& b : enumerate_full_rank(n - k, n)) REQUIRE(check_stack_nonsingular(code, b));
      }
  }
}

TEST_CASE("secrecy holds exactly when the stack is nonsingular") {
  // MRD, clear-text and binary parity checks at n = 3 over GF(8) and GF(4).
  std::vector<CosetScheme> schemes{CosetScheme(build_gabidulin(gf8, 3, 1)), cleartext_scheme(gf8, 3, 1),
                                   CosetScheme::from_parity_check(ExtMatrix::from_rows(gf8, {{1, 1, 0}})),
                                   CosetScheme::from_parity_check(ExtMatrix::from_rows(gf8, {{1, 2, 3}})),
                                   CosetScheme(build_gabidulin(FieldSpec::standard(2), 2, 1)),
                                   CosetScheme(build_gabidulin(gf8, 3, 2))};
  for (const auto& scheme : schemes) {
    for (const auto& b : enumerate_full_rank(scheme.mu(), scheme.n())) {
      const SecrecyEntry e = exhaustive_secrecy(scheme, b);
      REQUIRE(e.independent == e.stack_nonsingular);
      REQUIRE(e.independent == check_stack_condition(scheme.parity_check(), b));
      REQUIRE(e.h_s_given_w.exact);
      REQUIRE(e.independent == (e.h_s_given_w == e.h_s));
      REQUIRE_FALSE(e.h_s.bits < e.h_s_given_w.bits);
      REQUIRE(e.h_s_given_w.approx == doctest::Approx(conditional_entropy_oracle(scheme, b)));
      REQUIRE(e.h_x.bits == e.h_s.bits + Rational::make(static_cast<std::int64_t>(scheme.mu() * 3), 1) -
                                Rational::make(static_cast<std::int64_t>(scheme.mu() * (3 - scheme.spec().m())), 1));
      REQUIRE(e.h_s_given_x.bits == Rational::make(0, 1));
    }
  }
}

TEST_CASE("degenerate observations") {
  const CosetScheme scheme(build_gabidulin(gf8, 3, 1));
  const SecrecyEntry none = exhaustive_secrecy(scheme, BaseMatrix(0, 3));
  CHECK(none.independent);
  CHECK(none.h_s_given_w == none.h_s);

  const SecrecyEntry all = exhaustive_secrecy(scheme, BaseMatrix::identity(3));
  CHECK_FALSE(all.independent);
  CHECK(all.h_s_given_w.bits == Rational::make(0, 1));
}

TEST_CASE("rank-deficient observations reduce without changing the verdict") {
  const BaseMatrix dup = BaseMatrix::from_rows({{1, 1, 0}, {1, 1, 0}});
  CHECK(reduce_rank_deficient(dup) == BaseMatrix::from_rows({{1, 1, 0}}));
  CHECK(reduce_rank_deficient(BaseMatrix(2, 3)).rows() == 0);
  const auto ext = reduce_rank_deficient(ExtMatrix::embed(gf8, dup));
  CHECK(ext.mu_eff == 1);

  std::vector<CosetScheme> schemes{CosetScheme(build_gabidulin(gf8, 3, 1)), cleartext_scheme(gf8, 3, 1)};
  for (const auto& scheme : schemes)
    for (std::uint64_t bits = 0; bits < 64; ++bits) {
      const BaseMatrix b(3, {bits & 7, bits >> 3});
      const BaseMatrix reduced = reduce_rank_deficient(b);
      REQUIRE(reduced.rows() == rank_base_matrix(b));
      const auto full = exhaustive_secrecy(scheme, b), small = exhaustive_secrecy(scheme, reduced);
      REQUIRE(full.independent == small.independent);
      REQUIRE(full.h_s_given_w == small.h_s_given_w);
      REQUIRE(full.rank_b == reduced.rows());
    }
}

TEST_CASE("one symbol above capacity leaks") {
  const CosetScheme over(build_gabidulin(gf8, 3, 2));  // k = n - mu + 1 with mu = 2
  bool leak = false;
  for (const auto& b : enumerate_full_rank(2, 3)) {
    const SecrecyEntry e = exhaustive_secrecy(over, b);
    leak = leak || e.h_s_given_w.bits < e.h_s.bits;
  }
  CHECK(leak);
}

TEST_CASE("full-rank audit over every observation matrix") {
  const SecrecyReport mrd = audit_full_rank(CosetScheme(build_gabidulin(gf8, 3, 1)), 2);
  CHECK(mrd.secure);
  CHECK(mrd.sets_audited == 42);
  CHECK(mrd.singular_stacks == 0);

  const SecrecyReport clear = audit_full_rank(cleartext_scheme(gf8, 3, 1), 2);
  CHECK_FALSE(clear.secure);
  CHECK_FALSE(clear.failures.empty());
  CHECK(clear.singular_stacks == clear.failures.size());

  CHECK_THROWS_AS(audit_full_rank(CosetScheme(build_gabidulin(gf8, 3, 1)), 2, Budget::uniform(100)), BudgetExceeded);
}

TEST_CASE("network audit on the butterfly") {
  const FieldSpec gf4 = FieldSpec::standard(2);
  const CosetScheme mrd(build_gabidulin(gf4, 2, 1));
  CHECK(mrd.parity_check() == ExtMatrix::from_rows(gf4, {{1, 2}}));
  const CosetScheme clear = cleartext_scheme(gf4, 2, 1);

  int feasible = 0;
  for (std::uint64_t seed = 0; feasible < 5 && seed < 1000; ++seed) {
    const auto code = assign_random_code(butterfly_network(), 2, seed);
    if (!is_feasible(code)) continue;
    ++feasible;
    const SecrecyReport r = audit_network(code, mrd, 1);
    CHECK(r.secure);
    CHECK(r.sets_audited == 7);
    CHECK(r.entries[0].edges == std::vector<int>{0});
    CHECK_FALSE(audit_network(code, clear, 1).secure);
  }
  CHECK(feasible == 5);

  // mu = n: the wiretapper may see everything, so no scheme with k >= 1 survives.
  const auto code = LinearNetworkCode(butterfly_network(), 2, {0b01, 0b01, 0b10, 0b10, 0b11, 0b1, 0b1});
  CHECK_FALSE(audit_network(code, mrd, 2).secure);
  CHECK_THROWS_AS(audit_network(code, mrd, 2, Budget{.enumeration = 1 << 24, .joint = 1 << 20, .wiretap_sets = 5}),
                  BudgetExceeded);
}

TEST_CASE("field-valued observations break the MDS baseline but not the Gabidulin scheme") {
  const FieldSpec gf4 = FieldSpec::standard(2);
  const CosetScheme mds = build_mds_baseline(gf4, 3, 2);
  const auto witness = find_singular_stack_over_field(mds.parity_check());
  REQUIRE(witness.has_value());
  CHECK(rank_ext(*witness) == 2);
  CHECK_FALSE(check_stack_condition(mds.parity_check(), *witness));
  const SecrecyEntry e = exhaustive_secrecy(mds, *witness);
  CHECK(e.h_s_given_w.approx < e.h_s.approx);

  // Binary observations of a base-field code can also fail once n exceeds m.
  CHECK(find_singular_stack(mds.parity_check()).has_value());
  CHECK_FALSE(find_singular_stack(build_gabidulin(gf8, 3, 1).parity_check()).has_value());
}
