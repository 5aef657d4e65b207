#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "doctest.h"
#include "support.hpp"
#include "vote_ensemble/problems/lp_example.hpp"
#include "vote_ensemble/problems/regression.hpp"
#include "vote_ensemble/theory/bounds.hpp"
#include "vote_ensemble/theory/kl.hpp"
#include "vote_ensemble/theory/selection_probability.hpp"

using namespace vote_ensemble;
using namespace vote_ensemble::theory;
using ve_test::Gen;
using Big = boost::multiprecision::cpp_dec_float_50;

namespace {

Big big_kl(const Big& p, const Big& q) {
  using boost::multiprecision::log;
  Big d = 0;
  if (p > 0) d += p * log(p / q);
  if (p < 1) d += (1 - p) * log((1 - p) / (1 - q));
  return d;
}

// The four-term bound at 50 decimal digits; interior arguments only.
Big big_move_bound(double p_max, double eta, double n, double k, double B, double card) {
  using boost::multiprecision::exp;
  const Big p(p_max), e(eta), r = Big(n) / (2 * Big(k)), b = Big(B) / 24;
  const Big quarter = e / 4, three_quarter = 3 * e / 4;
  Big total = exp(-r * big_kl(p - three_quarter, p - e));
  total += 2 * exp(-r * big_kl(p - quarter, p));
  const Big m = p < 1 - p ? p : 1 - p;
  total += exp(-b * e * e / (m + three_quarter));
  if (p + quarter <= 1) {
    total += exp(-r * big_kl(p + quarter, p) - b * e * e / (1 - p + quarter));
  }
  return Big(card) * total;
}

core::BaseLearner<double> lp_learner() {
  return [](std::span<const double> z, Rng&) { return problems::lp_example_saa(z); };
}

}  // namespace

TEST_CASE("kl divergence hand values and conventions") {
  CHECK(kl_bernoulli(0.3, 0.3) == 0.0);
  CHECK(kl_bernoulli(0.5, 0.25) ==
        doctest::Approx(0.5 * std::log(2.0) + 0.5 * std::log(2.0 / 3.0)).epsilon(1e-14));
  CHECK(std::abs(kl_bernoulli(0.5, 0.25) - 0.14384) <= 1e-5);
  CHECK(kl_bernoulli(0.0, 0.5) == doctest::Approx(std::log(2.0)));
  CHECK(kl_bernoulli(1.0, 1.0) == 0.0);
  CHECK(kl_bernoulli(0.0, 0.0) == 0.0);
  CHECK(std::isinf(kl_bernoulli(0.5, 0.0)));
  CHECK(std::isinf(kl_bernoulli(0.5, 1.0)));
  CHECK_THROWS_AS(kl_bernoulli(-0.1, 0.5), InvalidArgument);
  CHECK_THROWS_AS(kl_bernoulli(0.5, 1.1), InvalidArgument);
}

TEST_CASE("kl divergence is nonnegative and satisfies both lower bounds") {
  Gen gen(1);
  for (int t = 0; t < 1000; ++t) {
    const double p = gen.coin() ? gen.real(0.0, 1.0) : static_cast<double>(gen.integer(0, 1));
    const double q = gen.real(1e-6, 1.0 - 1e-6);
    const double d = kl_bernoulli(p, q);
    CHECK(d >= 0.0);
    if (p == q) CHECK(d == 0.0);
    // D(p||q) >= p ln(p/q) + q - p
    const double ratio = (p > 0.0 ? p * std::log(p / q) : 0.0) + q - p;
    CHECK(d >= ratio - 1e-12);
    // D(p||q) >= -ln(2 (q(1-q))^γ) for p in [γ, 1-γ]
    const double gamma = std::min(p, 1.0 - p);
    if (gamma > 0.0) {
      CHECK(d >= -std::log(2.0 * std::pow(q * (1.0 - q), gamma)) - 1e-12);
    }
  }
}

TEST_CASE("move bound matches an extended-precision evaluation") {
  const BoundInputs in{0.95, 0.9, 10000, 10, 200, 2};
  const double value = move_bound(in);
  const double oracle = big_move_bound(0.95, 0.9, 10000, 10, 200, 2).convert_to<double>();
  CHECK(std::abs(value - oracle) <= 1e-12 * std::max(1.0, std::abs(oracle)));

  Gen gen(2);
  for (int t = 0; t < ve_test::kCases; ++t) {
    const double p = gen.real(0.05, 0.99);
    const double eta = gen.real(0.01, 1.0) * p;
    const auto k = static_cast<std::uint64_t>(gen.integer(1, 50));
    const auto n = k + static_cast<std::uint64_t>(gen.integer(0, 5000));
    const auto B = static_cast<std::uint64_t>(gen.integer(1, 2000));
    const auto card = static_cast<std::uint64_t>(gen.integer(1, 10));
    const BoundInputs random_in{p, eta, n, k, B, card};
    const auto terms = move_bound_terms(random_in);
    const double big = big_move_bound(p, eta, n, k, B, card).convert_to<double>();
    CHECK(std::abs(terms.total - big) <= 1e-9 * std::max(1.0, big));
    CHECK(terms.total >= 0.0);
    CHECK(terms.total <= 5.0 * card);
    CHECK(terms.total == doctest::Approx(card * (terms.lower_tail + terms.upper_tail +
                                                 terms.monte_carlo + terms.joint)));
  }
}

TEST_CASE("move bound is monotone in n and B and linear in the cardinality") {
  Gen gen(3);
  for (int t = 0; t < ve_test::kCases; ++t) {
    const double p = gen.real(0.05, 1.0);
    const double eta = gen.real(0.01, 1.0) * p;
    const auto k = static_cast<std::uint64_t>(gen.integer(1, 20));
    const auto n = k + static_cast<std::uint64_t>(gen.integer(0, 2000));
    const auto B = static_cast<std::uint64_t>(gen.integer(1, 500));
    const BoundInputs base{p, eta, n, k, B, 1};
    BoundInputs more_n = base;
    more_n.n += static_cast<std::uint64_t>(gen.integer(1, 1000));
    BoundInputs more_b = base;
    more_b.B += static_cast<std::uint64_t>(gen.integer(1, 1000));
    BoundInputs triple = base;
    triple.cardinality = 3;
    CHECK(move_bound(more_n) <= move_bound(base));
    CHECK(move_bound(more_b) <= move_bound(base));
    CHECK(move_bound(triple) == doctest::Approx(3.0 * move_bound(base)));
  }
}

TEST_CASE("move bound degenerate inputs and validation") {
  const auto terms = move_bound_terms({1.0, 1.0, 100, 10, 1'000'000, 2});
  CHECK(terms.lower_tail == 0.0);
  CHECK(terms.upper_tail == 0.0);
  CHECK(terms.joint == 0.0);
  CHECK(terms.monte_carlo <= 1e-300);
  const auto field_of = [](BoundInputs in) {
    try {
      in.validate();
    } catch (const InvalidField& e) {
      return e.field();
    }
    return std::string();
  };
  CHECK(field_of({0.0, 0.1, 10, 1, 1, 1}) == "p_max");
  CHECK(field_of({0.5, 0.6, 10, 1, 1, 1}) == "eta");
  CHECK(field_of({0.5, 0.0, 10, 1, 1, 1}) == "eta");
  CHECK(field_of({0.5, 0.1, 10, 11, 1, 1}) == "k");
  CHECK(field_of({0.5, 0.1, 10, 1, 0, 1}) == "B");
  CHECK(field_of({0.5, 0.1, 10, 1, 1, 0}) == "cardinality");
}

TEST_CASE("binomial coefficients saturate") {
  CHECK(binomial(8, 3) == 56);
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK(binomial(200, 100) == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("exact enumeration counts subsets") {
  const core::SampleBatch<double> four({1.0, -2.0, 3.0, 0.5});
  const auto point = exact_phat_enumeration(lp_learner(), four, 4);
  REQUIRE(point.entries.size() == 1);
  CHECK(point.entries[0].p_hat == 1.0);
  CHECK(point.entries[0].se == 0.0);

  // Pairs of {2, -1, -3, 0.5, 4, -0.2} with a negative sum: (2,-3), (-1,-3),
  // (-1,0.5), (-1,-0.2), (-3,0.5), (-3,-0.2) -> 6 of 15.
  const core::SampleBatch<double> six({2.0, -1.0, -3.0, 0.5, 4.0, -0.2});
  const auto table = exact_phat_enumeration(lp_learner(), six, 2);
  CHECK(table.trials == 15);
  CHECK(table.probability(Model::discrete({1}).key()) == doctest::Approx(6.0 / 15.0));
  CHECK(table.probability(Model::discrete({0}).key()) == doctest::Approx(9.0 / 15.0));
  CHECK(table.entries.front().model == Model::discrete({0}));

  std::vector<double> big(40, 1.0);
  CHECK_THROWS_AS(exact_phat_enumeration(lp_learner(), core::SampleBatch<double>(big), 20),
                  InvalidArgument);
}

TEST_CASE("p_k estimates") {
  BatchSampler<double> lp_sampler = [](std::size_t k, Rng& rng) {
    return problems::gen_lp_example(k, 2.1, rng);
  };
  core::BaseLearner<double> constant = [](std::span<const double>, Rng&) {
    return Model::discrete({7});
  };
  Rng rng(4);
  const auto c = estimate_pk(constant, lp_sampler, 5, 1000, rng);
  REQUIRE(c.entries.size() == 1);
  CHECK(c.entries[0].p_hat == 1.0);
  CHECK(c.entries[0].se == 0.0);

  core::BaseLearner<double> coin = [](std::span<const double>, Rng& r) {
    return Model::discrete({static_cast<std::int64_t>(r.uniform_index(2))});
  };
  const auto fair = estimate_pk(coin, lp_sampler, 1, 100000, rng);
  REQUIRE(fair.entries.size() == 2);
  for (const auto& e : fair.entries) CHECK(std::abs(e.p_hat - 0.5) <= 0.01);

  // Entry for θ = 0 against a direct estimate of P(Σ z_i > 0) on separate draws.
  const std::uint64_t trials = 100000;
  const auto table = estimate_pk(lp_learner(), lp_sampler, 10, trials, rng);
  CHECK(table.entries.size() == 2);
  Rng direct_rng(5);
  std::uint64_t positive = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    double s = 0.0;
    for (double z : problems::gen_lp_example(10, 2.1, direct_rng)) s += z;
    positive += s >= 0.0;
  }
  const double q_direct = positive / static_cast<double>(trials);
  const double q_table = table.probability(Model::discrete({0}).key());
  const double se = std::sqrt(q_direct * (1 - q_direct) / trials + q_table * (1 - q_table) / trials);
  CHECK(std::abs(q_direct - q_table) <= 3.0 * se);
  CHECK(q_table > 0.5);
  double sum = 0.0;
  for (const auto& e : table.entries) sum += e.p_hat;
  CHECK(sum == doctest::Approx(1.0));
}

TEST_CASE("p_k estimates on the empirical measure converge to exact enumeration") {
  const core::SampleBatch<double> data({2.0, -1.0, -3.0, 0.5, 4.0, -0.2, 1.5, -2.5});
  BatchSampler<double> empirical = [&data](std::size_t k, Rng& rng) {
    std::vector<double> out;
    for (auto i : core::subsample_indices(data.size(), k, rng)) out.push_back(data[i]);
    return core::SampleBatch<double>(std::move(out));
  };
  Rng rng(6);
  const auto estimate = estimate_pk(lp_learner(), empirical, 3, 100000, rng);
  const auto exact = exact_phat_enumeration(lp_learner(), data, 3);
  for (const auto& e : exact.entries) {
    CHECK(std::abs(estimate.probability(e.model.key()) - e.p_hat) <= 0.01);
  }
}

TEST_CASE("eta from a p_k table") {
  PkTable table;
  table.entries = {{Model::discrete({0}), 0.8, 0.0}, {Model::discrete({1}), 0.2, 0.0}};
  const auto zero = Model::discrete({0}).key();
  const auto one = Model::discrete({1}).key();
  CHECK(eta_from_pk(table, {zero}) == doctest::Approx(0.6));
  CHECK(eta_from_pk(table, {zero, one}) == doctest::Approx(0.8));
  PkTable tie;
  tie.entries = {{Model::discrete({0}), 0.5, 0.0}, {Model::discrete({1}), 0.5, 0.0}};
  CHECK(eta_from_pk(tie, {zero}) == 0.0);
}

TEST_CASE("T_k estimates") {
  core::LossOracle<double> identity = [](const Model&, double z) { return z; };
  BatchSampler<double> uniform = [](std::size_t k, Rng& rng) {
    std::vector<double> z(k);
    for (auto& v : z) v = rng.uniform01();
    return core::SampleBatch<double>(std::move(z));
  };
  const std::vector<Model> models{Model::discrete({0})};
  const std::vector<double> risks{0.5};
  Rng rng(7);
  CHECK(estimate_tk(identity, std::span<const Model>(models), std::span<const double>(risks),
                    uniform, 5, 0.0, 1000, rng)
            .p_hat == 1.0);
  CHECK(estimate_tk(identity, std::span<const Model>(models), std::span<const double>(risks),
                    uniform, 5, 0.5, 1000, rng)
            .p_hat == 0.0);

  // Regression at k = 1024, t = 0.5 against (8 μ4 + 32 σ²)/(k t²).
  const double alpha = 2.1;
  const problems::RegressionNoise noise{alpha};
  core::LossOracle<problems::RegressionObservation> loss = problems::regression_loss;
  BatchSampler<problems::RegressionObservation> sampler = [alpha](std::size_t k, Rng& r) {
    return problems::gen_regression(k, alpha, r);
  };
  std::vector<Model> grid;
  std::vector<double> true_risks;
  for (int i = -4; i <= 4; ++i) {
    grid.push_back(Model::continuous({i / 4.0}));
    true_risks.push_back(i * i / 16.0 + noise.variance());
  }
  const auto est = estimate_tk(loss, std::span<const Model>(grid),
                               std::span<const double>(true_risks), sampler, 1024, 0.5, 2000, rng);
  const double bound = (8.0 * noise.fourth_moment() + 32.0 * noise.variance()) / (1024 * 0.25);
  CHECK(est.p_hat <= bound + 3.0 * est.se);
  CHECK(est.trials == 2000);
}
