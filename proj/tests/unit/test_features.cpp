#include <doctest.h>

#include <numeric>
#include <random>

#include "core/error.hpp"
#include "core/texture_features.hpp"
#include "support/oracles.hpp"

using namespace scriptid;

namespace {

CodedSequence seq(const char* s) { return parse_coded_text(s); }

}  // namespace

TEST_CASE("coded text parsing") {
  CHECK(seq(" 01\n23 ").to_string() == "0123");
  CHECK_THROWS_AS(seq("0124"), Error);
  CHECK_THROWS_AS(CodedSequence(std::vector<std::uint8_t>{0, 4}), Error);
}

TEST_CASE("run-length matrix") {
  const auto m = run_length_matrix(seq("001222"));
  CHECK(m.count(0, 2) == 1);
  CHECK(m.count(1, 1) == 1);
  CHECK(m.count(2, 3) == 1);
  CHECK(m.count(0, 1) == 0);
  CHECK(m.run_count() == 3);
  CHECK(m.pixel_count() == 6);
  CHECK(m.max_run_length() == 3);

  const auto one = run_length_matrix(seq("0"));
  CHECK(one.count(0, 1) == 1);
  CHECK(one.run_count() == 1);

  const auto flat = run_length_matrix(seq("3333"));
  CHECK(flat.count(3, 4) == 1);
  CHECK(flat.run_count() == 1);
  CHECK(flat.pixel_count() == 4);

  CHECK_THROWS_AS(run_length_matrix(CodedSequence{}), Error);
  CHECK_THROWS_AS(flat.count(4, 1), Error);
  CHECK_THROWS_AS(flat.count(0, 5), Error);
}

TEST_CASE("run-length features on a worked example") {
  const auto f = run_length_features(run_length_matrix(seq("001222")));
  // frozen from the dense-matrix oracle
  CHECK(f.sre == doctest::Approx(0.4537037037037037).epsilon(1e-12));
  CHECK(f.lre == doctest::Approx(14.0 / 3.0).epsilon(1e-12));
  CHECK(f.gln == doctest::Approx(1.0));
  CHECK(f.rln == doctest::Approx(1.0));
  CHECK(f.rp == doctest::Approx(0.5));
  CHECK(f.lgre == doctest::Approx(0.4537037037037037).epsilon(1e-12));
  CHECK(f.hgre == doctest::Approx(14.0 / 3.0).epsilon(1e-12));

  const auto g = run_length_features(run_length_matrix(seq("0")));
  for (double v : g.as_array()) CHECK(v == doctest::Approx(1.0));

  for (int k : {2, 5, 17}) {
    const auto c = run_length_features(run_length_matrix(CodedSequence(std::vector<std::uint8_t>(static_cast<std::size_t>(k), 2))));
    CHECK(c.rp == doctest::Approx(1.0 / k));
    CHECK(c.lre == doctest::Approx(static_cast<double>(k * k)));
    CHECK(c.sre == doctest::Approx(1.0 / (k * k)));
  }
}

TEST_CASE("run-length properties on random sequences") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<std::size_t> len(1, 200);
  for (int t = 0; t < 500; ++t) {
    const auto s = oracle::random_symbols(rng, len(rng));
    const CodedSequence cs(s);
    const auto m = run_length_matrix(cs);
    std::size_t runs = 0, mass = 0;
    for (int g = 0; g < 4; ++g)
      for (int j = 1; j <= m.max_run_length(); ++j) {
        runs += m.count(g, j);
        mass += static_cast<std::size_t>(j) * m.count(g, j);
      }
    CHECK(runs == m.run_count());
    CHECK(mass == m.pixel_count());
    CHECK(mass == s.size());

    const auto f = run_length_features(m);
    CHECK(f.sre <= 1.0);
    CHECK(f.lre >= 1.0);
    CHECK(f.rp > 0.0);
    CHECK(f.rp <= 1.0);
    CHECK(f.lrhge >= f.srlge);
    bool all_single = true;
    for (std::size_t i = 1; i < s.size(); ++i) all_single = all_single && s[i] != s[i - 1];
    CHECK((f.rp == 1.0) == all_single);
    for (double v : f.as_array()) CHECK(v > 0.0);
  }
  // without symbol 0 every level weight i^2 exceeds 1/i^2
  for (int t = 0; t < 200; ++t) {
    auto s = oracle::random_symbols(rng, len(rng));
    for (auto& v : s) v = static_cast<std::uint8_t>(1 + v % 3);
    const auto f = run_length_features(run_length_matrix(CodedSequence(s)));
    CHECK(f.hgre >= f.lgre);
  }
}

TEST_CASE("run-length features match the dense oracle") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> len(1, 200);
  for (int t = 0; t < 1000; ++t) {
    const auto s = oracle::random_symbols(rng, len(rng));
    const auto got = run_length_features(run_length_matrix(CodedSequence(s))).as_array();
    const auto want = oracle::run_length_features(oracle::run_length(s));
    for (std::size_t i = 0; i < 11; ++i) CHECK(std::fabs(got[i] - want[i]) <= 1e-12 * std::max(1.0, std::fabs(want[i])));
  }
}

TEST_CASE("lbp") {
  CHECK(lbp_1d(seq("000"), 1) == 3);
  CHECK(lbp_1d(seq("010"), 1) == 0);
  CHECK(lbp_1d(seq("103"), 1) == 3);
  CHECK(lbp_1d(seq("213"), 1) == 3);
  CHECK(lbp_1d(seq("120"), 1) == 0);
  CHECK(lbp_1d(seq("021"), 1) == 0);
  CHECK(lbp_1d(seq("102"), 1) == 3);
  CHECK(lbp_1d(seq("312"), 1) == 3);
  CHECK(lbp_1d(seq("210"), 1) == 1);
  CHECK(lbp_1d(seq("012"), 1) == 2);
  CHECK_THROWS_AS(lbp_1d(seq("000"), 0), Error);
  CHECK_THROWS_AS(lbp_1d(seq("000"), 2), Error);
}

TEST_CASE("albp histogram") {
  const auto c = albp_histogram(seq("00000"));
  CHECK(c.valid_positions == 2);
  CHECK(c.bins[15] == 1.0);

  const auto alt = albp_histogram(seq("010101"));
  CHECK(alt.bins[3] + alt.bins[12] == doctest::Approx(1.0));
  CHECK(alt.bins[3] > 0);
  CHECK(alt.bins[12] > 0);

  const auto single = albp_histogram(seq("0001"));
  CHECK(single.valid_positions == 1);
  CHECK(std::count(single.bins.begin(), single.bins.end(), 1.0) == 1);
  CHECK(single.bins[15] == 1.0);

  const auto counts = albp_histogram(seq("0000000"), AlbpMode::kCounts);
  CHECK(counts.bins[15] == 4.0);

  const auto tiny = albp_histogram(seq("012"));
  CHECK(tiny.valid_positions == 0);
  for (double b : tiny.bins) CHECK(b == 0.0);
}

TEST_CASE("albp matches per-position enumeration") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> len(4, 120);
  for (int t = 0; t < 500; ++t) {
    const auto s = oracle::random_symbols(rng, len(rng));
    const auto want = oracle::albp_counts(s);
    const auto counts = albp_histogram(CodedSequence(s), AlbpMode::kCounts);
    const auto norm = albp_histogram(CodedSequence(s));
    CHECK(counts.valid_positions == s.size() - 3);
    double sum = 0;
    for (std::size_t b = 0; b < 16; ++b) {
      CHECK(counts.bins[b] == want[b]);
      CHECK(norm.bins[b] == doctest::Approx(want[b] / static_cast<double>(s.size() - 3)));
      sum += norm.bins[b];
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("feature vector layout") {
  const auto s = seq("0123301220");
  const auto v = feature_vector(s);
  CHECK(v.size() == 27);
  CHECK(v == feature_vector(s));
  const auto rl = run_length_features(run_length_matrix(s)).as_array();
  const auto albp = albp_histogram(s);
  for (std::size_t i = 0; i < 11; ++i) CHECK(v[i] == rl[i]);
  for (std::size_t i = 0; i < 16; ++i) CHECK(v[11 + i] == albp.bins[i]);
  CHECK_THROWS_AS(feature_vector(CodedSequence{}), Error);
  CHECK(is_degenerate(seq("012")));
  CHECK_FALSE(is_degenerate(seq("0123")));
}

TEST_CASE("relabeling 0-3 1-2 reverses comparisons") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto s = oracle::random_symbols(rng, 50);
    auto r = s;
    for (auto& v : r) v = static_cast<std::uint8_t>(3 - v);
    const auto fs = feature_vector(CodedSequence(s));
    const auto fr = feature_vector(CodedSequence(r));
    for (std::size_t i : {0u, 1u, 2u, 3u, 4u}) CHECK(fs[i] == doctest::Approx(fr[i]));
    // equal neighbours keep their bit; strict comparisons flip
    const auto cs = oracle::albp_counts(s);
    std::array<double, 16> expect{};
    for (std::size_t c = 1; c + 2 < r.size(); ++c) {
      auto bit = [&](std::size_t a, std::size_t b) { return s[a] <= s[b] ? 1 : 0; };
      expect[static_cast<std::size_t>(bit(c - 1, c) + 2 * bit(c + 1, c) + 4 * bit(c, c + 1) + 8 * bit(c + 2, c + 1))] += 1;
    }
    const auto cr = oracle::albp_counts(r);
    for (std::size_t b = 0; b < 16; ++b) CHECK(cr[b] == expect[b]);
    CHECK(std::accumulate(cs.begin(), cs.end(), 0.0) == std::accumulate(cr.begin(), cr.end(), 0.0));
  }
}
