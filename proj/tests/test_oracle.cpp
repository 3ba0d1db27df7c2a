#include <doctest.h>

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "persuasion/oracle.hpp"

using namespace persuasion;

namespace {

PopulationProfile random_profile(std::mt19937_64& eng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  // Keep q_low either exactly 1/2 or clearly informative so boundary noise
  // cannot fake near-optimal shares.
  std::uniform_real_distribution<double> uq(0.51, 0.95);
  double q_low = u01(eng) < 0.15 ? 0.5 : uq(eng);
  double q_high = uq(eng);
  if (q_high < q_low) std::swap(q_low, q_high);
  return PopulationProfile(u01(eng), q_low, q_high);
}

// Rejection sampler for Bayes-plausible signals with n realizations.
MultiSignal random_multi_signal(std::mt19937_64& eng, int n) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (;;) {
    std::vector<double> post;
    for (int i = 0; i < n; ++i) post.push_back(u01(eng));
    std::sort(post.begin(), post.end(), std::greater<>());
    bool distinct = post.front() > 0.5 + 1e-3 && post.back() < 0.5 - 1e-3;
    for (int i = 0; i + 1 < n; ++i)
      distinct = distinct && post[i] - post[i + 1] > 1e-3;
    if (!distinct) continue;

    std::vector<double> weights;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      weights.push_back(-std::log(u01(eng)));  // Dirichlet(1,...,1)
      total += weights.back();
    }
    for (double& w : weights) w /= total;

    // Shift mass between the extreme realizations to hit the prior mean.
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += post[i] * weights[i];
    const double spread = post.front() - post.back();
    const double delta = (mean - 0.5) / spread;
    if (delta >= 0.0) {
      if (weights.front() - delta <= 1e-6) continue;
      weights.front() -= delta;
      weights.back() += delta;
    } else {
      if (weights.back() + delta <= 1e-6) continue;
      weights.front() -= delta;
      weights.back() += delta;
    }
    return MultiSignal(post, weights);
  }
}

}  // namespace

TEST_CASE("multi-signal construction and validation") {
  CHECK_THROWS_AS(MultiSignal({0.8, 0.3}, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(MultiSignal({0.8, 0.2}, {0.7, 0.7}), std::invalid_argument);
  // Equal posteriors merge; zero-probability realizations drop.
  const MultiSignal merged({0.8, 0.5, 0.5, 0.2}, {0.25, 0.2, 0.3, 0.25});
  CHECK(merged.size() == 3);
  CHECK(merged.probs()[1] == doctest::Approx(0.5));
  const MultiSignal dropped({0.8, 0.6, 0.2}, {0.5, 0.0, 0.5});
  CHECK(dropped.size() == 2);

  const MultiSignal binary = MultiSignal::from_binary(
      SignalSpec::from_posteriors(0.7, 0.3));
  CHECK(binary.size() == 2);
  CHECK(binary.probs()[0] == doctest::Approx(0.5));
  CHECK_FALSE(MultiSignal::from_binary(SignalSpec::uninformative()).informative());
}

TEST_CASE("multi-signal vote share agrees with the binary cell summation") {
  std::mt19937_64 eng(211);
  std::uniform_real_distribution<double> ua(0.5 + 1e-3, 1.0);
  std::uniform_real_distribution<double> ub(0.0, 0.5 - 1e-3);
  for (int i = 0; i < 300; ++i) {
    const PopulationProfile profile = random_profile(eng);
    const SignalSpec signal = SignalSpec::from_posteriors(ua(eng), ub(eng));
    const MultiSignal lifted = MultiSignal::from_binary(signal);
    for (const StateOfWorld state :
         {StateOfWorld::kThetaA, StateOfWorld::kThetaB}) {
      CHECK(multi_vote_share(profile, lifted, state) ==
            doctest::Approx(exact_vote_share(profile, signal, state))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("grid search on the worked profiles") {
  // Above sqrt(2)/2 nothing works.
  const GridReport blocked =
      grid_search(PopulationProfile(0.0, 0.72, 0.72), 0.005);
  CHECK(blocked.optimal_set.empty());
  CHECK(blocked.max_share < 0.5);
  CHECK(blocked.classification == Manipulability::kNotManipulable);

  // Homogeneous 0.7: the unbiased candidate is in the optimal set.
  const GridReport open = grid_search(PopulationProfile(0.0, 0.7, 0.7), 0.005);
  CHECK(open.classification == Manipulability::kManipulable);
  CHECK(open.max_share >= 0.51 - 1e-12);
  bool has_unbiased = false;
  for (const GridSignal& g : open.optimal_set)
    has_unbiased |= std::abs(g.signal.alpha() - 0.7) < 1e-12 &&
                    std::abs(g.signal.beta() - 0.3) < 1e-12;
  CHECK(has_unbiased);

  // Negative-bias regime: the whole optimal set is negatively biased.
  const GridReport negative =
      grid_search(PopulationProfile(0.4, 0.69, 0.7), 0.002);
  REQUIRE(negative.bias_range.has_value());
  CHECK(negative.bias_range->second < 0.0);

  CHECK_THROWS_AS(grid_search(PopulationProfile(0.0, 0.7, 0.7), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(grid_search(PopulationProfile(0.0, 0.7, 0.7), 0.02),
                  std::invalid_argument);
}

TEST_CASE("optimal set is nonempty exactly when the max share reaches half") {
  std::mt19937_64 eng(223);
  for (int i = 0; i < 20; ++i) {
    const GridReport r = grid_search(random_profile(eng), 0.01);
    CHECK(r.optimal_set.empty() != at_least_half(r.max_share));
  }
}

TEST_CASE("max share is monotone under grid refinement") {
  // Halving steps keep grids nested, so the maximum cannot fall.
  for (const auto& profile :
       {PopulationProfile(0.0, 0.7, 0.7), PopulationProfile(0.3, 0.6, 0.7),
        PopulationProfile(0.32, 0.51, 0.7)}) {
    const double coarse = grid_search(profile, 0.01).max_share;
    const double mid = grid_search(profile, 0.005).max_share;
    const double fine = grid_search(profile, 0.0025).max_share;
    CHECK(coarse <= mid + 1e-15);
    CHECK(mid <= fine + 1e-15);
  }
}

TEST_CASE("B-favorable ties keep manipulable profiles manipulable via perturbed signals") {
  // With favor-b ties the exact candidates sit on losing knife edges, but
  // nearby grid signals (candidate plus a small epsilon in both coordinates)
  // still win. The epsilon must be small enough for the profile's slack: the
  // two bias-regime profiles are marginal and need a 0.001 grid.
  for (const auto& profile :
       {PopulationProfile(0.0, 0.7, 0.7), PopulationProfile(0.32, 0.51, 0.7),
        PopulationProfile(0.4, 0.69, 0.7), PopulationProfile(0.95, 0.6, 0.7)}) {
    const GridReport favor_b = grid_search(profile, 0.001, TieRule::kFavorB);
    CHECK_FALSE(favor_b.optimal_set.empty());
    bool strictly_above = false;
    for (const GridSignal& g : favor_b.optimal_set)
      strictly_above |= g.a_share_theta_b > 0.5;
    CHECK(strictly_above);
  }
}

TEST_CASE("candidate closure verifies on the worked profiles") {
  CHECK(verify_lemma1(PopulationProfile(0.0, 0.7, 0.7), 0.005).verified);
  CHECK(verify_lemma1(PopulationProfile(0.3, 0.6, 0.7), 0.005).verified);
  CHECK(verify_lemma1(PopulationProfile(0.0, 0.72, 0.72), 0.005).verified);
  // AlwaysA profile: everything rounds down to the uninformative signal.
  CHECK(verify_lemma1(PopulationProfile(0.9, 0.5, 0.9), 0.01).verified);
}

TEST_CASE("candidate closure verifies on random profiles") {
  std::mt19937_64 eng(227);
  for (int i = 0; i < 50; ++i) {
    const PopulationProfile profile = random_profile(eng);
    const Lemma1Report r = verify_lemma1(profile, 0.01);
    if (!r.verified)
      for (const auto& d : r.discrepancies) MESSAGE(d);
    CHECK(r.verified);
  }
}

TEST_CASE("decompose worked example: equal ratio case") {
  const MultiSignal s({0.8, 0.5, 0.2}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const Decomposition d = decompose(s);
  CHECK(d.eta == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  REQUIRE(d.s1.size() == 2);
  CHECK(d.s1.posteriors()[0] == doctest::Approx(0.8));
  CHECK(d.s1.posteriors()[1] == doctest::Approx(0.2));
  CHECK(d.s1.probs()[0] == doctest::Approx(0.5));
  REQUIRE(d.s2.size() == 1);
  CHECK(d.s2.posteriors()[0] == doctest::Approx(0.5));
}

TEST_CASE("decompose rejects binary and passes through uninformative") {
  CHECK_THROWS_AS(decompose(MultiSignal({0.7, 0.3}, {0.5, 0.5})),
                  std::invalid_argument);
  const Decomposition d = decompose(MultiSignal({0.5}, {1.0}));
  CHECK(d.s1.size() == 1);
  CHECK(d.s2.size() == 1);
}

namespace {

// Gathers P(posterior value | state) maps for the mixture identity check.
std::map<double, double> conditional_law(const MultiSignal& s,
                                         StateOfWorld state) {
  std::map<double, double> law;
  for (std::size_t i = 0; i < s.size(); ++i)
    law[s.posteriors()[i]] += s.conditional_prob(i, state);
  return law;
}

void check_lemma3_properties(const MultiSignal& s) {
  const std::size_t n = s.size();
  const Decomposition d = decompose(s);

  // Property 1: eta s1 + (1 - eta) s2 reproduces s state-conditionally.
  for (const StateOfWorld state :
       {StateOfWorld::kThetaA, StateOfWorld::kThetaB}) {
    std::map<double, double> mix;
    for (const auto& [post, p] : conditional_law(d.s1, state))
      mix[post] += d.eta * p;
    for (const auto& [post, p] : conditional_law(d.s2, state))
      mix[post] += (1.0 - d.eta) * p;
    const auto original = conditional_law(s, state);
    for (const auto& [post, p] : mix) {
      const auto it = original.find(post);
      REQUIRE(it != original.end());
      CHECK(std::abs(it->second - p) <= 1e-12);
    }
    CHECK(mix.size() == original.size());
  }

  // Property 2: both supports shrink.
  CHECK(d.s1.size() < n);
  CHECK(d.s2.size() < n);

  // Properties 3 and 4: at most one shared realization, with equal
  // posteriors there (shared realizations are identified by posterior).
  int shared = 0;
  for (const double p1 : d.s1.posteriors())
    for (const double p2 : d.s2.posteriors())
      shared += p1 == p2;
  CHECK(shared <= 1);

  // Bayes plausibility survives in both parts.
  for (const MultiSignal* part : {&d.s1, &d.s2}) {
    double mean = 0.0, total = 0.0;
    for (std::size_t i = 0; i < part->size(); ++i) {
      mean += part->posteriors()[i] * part->probs()[i];
      total += part->probs()[i];
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK(std::abs(mean - 0.5) <= 1e-12);
  }

  // Mixture linearity of the A-share, the engine behind the reduction.
  const PopulationProfile probe(0.3, 0.6, 0.8);
  const double whole = multi_vote_share(probe, s, StateOfWorld::kThetaB);
  const double parts =
      d.eta * multi_vote_share(probe, d.s1, StateOfWorld::kThetaB) +
      (1.0 - d.eta) * multi_vote_share(probe, d.s2, StateOfWorld::kThetaB);
  CHECK(std::abs(whole - parts) <= 1e-12);
}

}  // namespace

TEST_CASE("decompose satisfies the mixture properties on random signals") {
  std::mt19937_64 eng(229);
  std::uniform_int_distribution<int> nn(3, 6);
  for (int i = 0; i < 100; ++i) check_lemma3_properties(random_multi_signal(eng, nn(eng)));
}

TEST_CASE("reduce_to_binary never lowers the A-share in theta_B") {
  // Binary input is a fixed point.
  const PopulationProfile homog(0.0, 0.6, 0.6);
  const MultiSignal binary = MultiSignal::from_binary(
      SignalSpec::from_posteriors(0.7, 0.3));
  const SignalSpec back = reduce_to_binary(binary, homog);
  CHECK(back.alpha() == doctest::Approx(0.7));
  CHECK(back.beta() == doctest::Approx(0.3));

  // Worked three-realization signal.
  const MultiSignal tri({0.8, 0.5, 0.2}, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  const SignalSpec reduced = reduce_to_binary(tri, homog);
  const double before = multi_vote_share(homog, tri, StateOfWorld::kThetaB);
  const double after = exact_vote_share(homog, reduced, StateOfWorld::kThetaB);
  CHECK(after >= before - 1e-12);

  std::mt19937_64 eng(233);
  std::uniform_int_distribution<int> nn(3, 6);
  for (int i = 0; i < 100; ++i) {
    const PopulationProfile profile = random_profile(eng);
    const MultiSignal s = random_multi_signal(eng, nn(eng));
    const double input_share = multi_vote_share(profile, s, StateOfWorld::kThetaB);
    const SignalSpec out = reduce_to_binary(s, profile);
    const double output_share =
        out.informative()
            ? exact_vote_share(profile, out, StateOfWorld::kThetaB)
            : exact_vote_share(profile, SignalSpec::uninformative(),
                               StateOfWorld::kThetaB);
    CHECK(output_share >= input_share - 1e-12);
  }
}
