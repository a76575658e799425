#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "vbeam/metrics.hpp"
#include "vbeam/slopes.hpp"

using namespace vbeam;

namespace {

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("[metrics] burst error probability is exp of the scaled sum") {
    SnrTrace tr;
    tr.per_packet = {1.0, 2.0, 0.5};
    tr.sum = 3.5;
    const PepModel model{0.8, 1.5};
    const double want = std::exp(-0.8 * 1.5 * 3.5);
    CHECK(std::abs(burst_error_probability(tr, model) - want) <=
          1e-12 * want);
}

TEST_CASE("[metrics] a fully nulled burst always fails") {
    SnrTrace tr;
    tr.per_packet = {0.0, 0.0, 0.0, 0.0};
    CHECK(burst_error_probability(tr, PepModel{2.0, 3.0}) == 1.0);
}

TEST_CASE("[metrics] equal burst sums give equal error bounds") {
    SnrTrace a, b;
    a.per_packet = {1.0, 1.0};
    b.per_packet = {2.0, 0.0};
    const PepModel model{1.0, 1.0};
    CHECK(std::abs(burst_error_probability(a, model) -
                   burst_error_probability(b, model)) <= 1e-15);
}

TEST_CASE("[metrics] error model validation") {
    SnrTrace tr;
    tr.per_packet = {1.0};
    CHECK_THROWS_AS(burst_error_probability(tr, PepModel{0.0, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(burst_error_probability(tr, PepModel{1.0, -1.0}),
                    std::invalid_argument);
    tr.per_packet = {-0.5};
    CHECK_THROWS_AS(burst_error_probability(tr, PepModel{1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("[metrics] psi policy names") {
    CHECK(psi_policy_from_string("worst") == PsiPolicy::Worst);
    CHECK(psi_policy_from_string("uniform") == PsiPolicy::Uniform);
    CHECK(psi_policy_from_string("zero") == PsiPolicy::Zero);
    CHECK_THROWS_AS(psi_policy_from_string("median"), std::invalid_argument);
}

TEST_CASE("[metrics] cdf is sorted with uniform step probabilities") {
    CdfOptions opt;
    opt.scheme = Scheme::Abn;
    opt.cfg = make_config(4, 0.1, 0.001, 1, 2);
    opt.slopes = SlopeSet{{0.0}, {0.0, 7.0}, "explicit"};
    const AntennaPattern ripple = synthesize(
        PatternKind::RippleOmni, {{"depth_db", 6.0}, {"ripples", 3.0}});
    opt.tx_patterns = {synthesize(PatternKind::IdealOmni, {})};
    opt.rx_patterns = {ripple, rotated(ripple, 1.0)};
    opt.samples = 250;
    opt.policy = PsiPolicy::Uniform;
    opt.seed = 5;

    const Cdf cdf = snr_cdf(opt);
    REQUIRE(cdf.values_db.size() == 250);
    REQUIRE(cdf.probs.size() == 250);
    for (std::size_t i = 1; i < cdf.values_db.size(); ++i)
        CHECK(cdf.values_db[i - 1] <= cdf.values_db[i]);
    CHECK(std::abs(cdf.probs.front() - 1.0 / 250.0) <= 1e-15);
    CHECK(cdf.probs.back() == 1.0);

    opt.samples = 99;
    CHECK_THROWS_AS(snr_cdf(opt), std::invalid_argument);
    opt.samples = 250;
    opt.rx_patterns = {ripple};
    CHECK_THROWS_AS(snr_cdf(opt), std::invalid_argument);
}

TEST_CASE("[metrics] optimal slopes collapse every psi policy to the "
          "ceiling") {
    // Omni elements make the ceiling angle-independent, so all three
    // policies produce a point mass at 10*log10(K).
    CdfOptions opt;
    opt.cfg = make_config(4, 0.1, 0.001, 2, 2);
    opt.slopes = abn_construct(2, 2, 4, opt.cfg.T);
    const AntennaPattern omni = synthesize(PatternKind::IdealOmni, {});
    opt.tx_patterns = {omni, omni};
    opt.rx_patterns = {omni, omni};
    opt.samples = 120;
    opt.psi_points = 9;
    const double want_db = 10.0 * std::log10(4.0);
    for (PsiPolicy policy :
         {PsiPolicy::Worst, PsiPolicy::Uniform, PsiPolicy::Zero}) {
        opt.policy = policy;
        const Cdf cdf = snr_cdf(opt);
        CHECK(std::abs(cdf.values_db.front() - want_db) <= 1e-9);
        CHECK(std::abs(cdf.values_db.back() - want_db) <= 1e-9);
    }
}

TEST_CASE("[metrics] worst and zero policies agree for an optimal set") {
    // Both consume the same random stream, and an optimal set's burst sum
    // does not depend on the phases, so the curves match sample by sample
    // even with direction-dependent gains.
    CdfOptions opt;
    opt.cfg = make_config(4, 0.1, 0.001, 2, 2);
    opt.slopes = abn_construct(2, 2, 4, opt.cfg.T);
    const AntennaPattern ripple = synthesize(
        PatternKind::RippleOmni, {{"depth_db", 8.0}, {"ripples", 5.0}});
    opt.tx_patterns = {ripple, rotated(ripple, 0.7)};
    opt.rx_patterns = {ripple, rotated(ripple, 2.1)};
    opt.samples = 150;
    opt.seed = 11;
    opt.psi_points = 9;

    opt.policy = PsiPolicy::Worst;
    const Cdf worst = snr_cdf(opt);
    opt.policy = PsiPolicy::Zero;
    const Cdf zero = snr_cdf(opt);
    REQUIRE(worst.values_db.size() == zero.values_db.size());
    for (std::size_t i = 0; i < worst.values_db.size(); ++i)
        CHECK(std::abs(worst.values_db[i] - zero.values_db[i]) <= 1e-9);
}

TEST_CASE("[metrics] single transmit antenna gives identical curves for "
          "beamforming and switching") {
    CdfOptions opt;
    opt.cfg = make_config(3, 0.1, 0.001, 1, 2);
    const AntennaPattern ripple = synthesize(
        PatternKind::RippleOmni, {{"depth_db", 6.0}, {"ripples", 4.0}});
    opt.tx_patterns = {synthesize(PatternKind::IdealOmni, {})};
    opt.rx_patterns = {ripple, rotated(ripple, 1.3)};
    opt.samples = 200;
    opt.seed = 42;
    opt.policy = PsiPolicy::Uniform;

    opt.scheme = Scheme::Abn;
    opt.slopes = SlopeSet{{0.0}, {0.0, 5.0}, "explicit"};
    const Cdf abn = snr_cdf(opt);
    opt.scheme = Scheme::Asn;
    opt.slopes = SlopeSet{{}, {0.0, 5.0}, "explicit"};
    const Cdf asn = snr_cdf(opt);
    REQUIRE(abn.values_db.size() == asn.values_db.size());
    for (std::size_t i = 0; i < abn.values_db.size(); ++i)
        CHECK(std::abs(abn.values_db[i] - asn.values_db[i]) <= 1e-9);
}

TEST_CASE("[metrics] duplicating the receive subarray shifts the curve by "
          "3 dB") {
    const AntennaPattern ripple = synthesize(
        PatternKind::RippleOmni, {{"depth_db", 10.0}, {"ripples", 4.0}});
    const AntennaPattern omni = synthesize(PatternKind::IdealOmni, {});

    CdfOptions one;
    one.cfg = make_config(4, 0.1, 0.001, 1, 1);
    one.slopes = SlopeSet{{0.0}, {0.0}, "explicit"};
    one.tx_patterns = {omni};
    one.rx_patterns = {ripple};
    one.samples = 150;
    one.seed = 3;
    one.policy = PsiPolicy::Zero;
    const Cdf single = snr_cdf(one);

    const PortPartition part = contiguous_partition({1, 1});
    CdfOptions two = one;
    two.cfg = make_config(4, 0.1, 0.001, 1, 2);
    two.slopes = SlopeSet{{0.0}, {0.0, 0.0}, "explicit"};
    two.rx_patterns = {ripple, ripple};
    two.ports = &part;
    const Cdf doubled = snr_cdf(two);

    const double shift = 10.0 * std::log10(2.0);
    REQUIRE(single.values_db.size() == doubled.values_db.size());
    for (std::size_t i = 0; i < single.values_db.size(); ++i)
        CHECK(std::abs(doubled.values_db[i] - single.values_db[i] - shift) <=
              1e-9);
}

TEST_CASE("[metrics] equivalent transmit pattern averages element powers") {
    const AntennaPattern sec = synthesize(
        PatternKind::Sector, {{"beamwidth_deg", 240.0}, {"floor_db", -15.0}});
    const AntennaPattern back = rotated(sec, std::numbers::pi);
    const auto eq = equivalent_tx_pattern({sec, back});
    REQUIRE(eq.size() == static_cast<std::size_t>(kAzimuthSamples));
    // Back-to-back identical beams give a pattern symmetric under a half
    // turn.
    const int half = kAzimuthSamples / 2;
    for (int i = 0; i < half; i += 13)
        CHECK(std::abs(eq[static_cast<std::size_t>(i)] -
                       eq[static_cast<std::size_t>(i + half)]) <= 1e-12);
    // Spot check the average against direct lookups.
    for (int i : {0, 250, 900, 1800}) {
        const double phi = 2.0 * std::numbers::pi * i / kAzimuthSamples;
        const double want = 0.5 * (std::norm(pattern_value(sec, phi)) +
                                   std::norm(pattern_value(back, phi)));
        CHECK(std::abs(eq[static_cast<std::size_t>(i)] - want) <= 1e-12);
    }
    CHECK_THROWS_AS(equivalent_tx_pattern({}), std::invalid_argument);
}

TEST_CASE("[metrics] quantiles walk the sorted samples") {
    Cdf cdf;
    cdf.values_db = {0.0, 1.0, 2.0, 3.0};
    cdf.probs = {0.25, 0.5, 0.75, 1.0};
    CHECK(quantile_db(cdf, 0.0) == 0.0);
    CHECK(quantile_db(cdf, 0.25) == 0.0);
    CHECK(quantile_db(cdf, 0.26) == 1.0);
    CHECK(quantile_db(cdf, 0.5) == 1.0);
    CHECK(quantile_db(cdf, 0.75) == 2.0);
    CHECK(quantile_db(cdf, 1.0) == 3.0);
    CHECK_THROWS_AS(quantile_db(cdf, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(quantile_db(cdf, 1.1), std::invalid_argument);
    CHECK_THROWS_AS(quantile_db(Cdf{}, 0.5), std::invalid_argument);
}

TEST_CASE("[metrics] cdf csv rows carry two decimals and six decimals") {
    Cdf cdf;
    cdf.values_db = {-3.14159, 6.0206};
    cdf.probs = {0.5, 1.0};
    const std::string path = "test_cdf_out.csv";
    write_cdf_csv(path, cdf);
    const auto lines = read_lines(path);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "snr_db,prob");
    CHECK(lines[1] == "-3.14,0.500000");
    CHECK(lines[2] == "6.02,1.000000");
    std::remove(path.c_str());
}

TEST_CASE("[metrics] pattern csv rows carry azimuth and linear gain") {
    const std::vector<double> pattern = {1.0, 0.25, 2.0, 0.5};
    const std::string path = "test_pattern_out.csv";
    write_pattern_csv(path, pattern);
    const auto lines = read_lines(path);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "azimuth_deg,gain_linear");
    CHECK(lines[1] == "0.0000,1");
    CHECK(lines[2] == "90.0000,0.25");
    CHECK(lines[3] == "180.0000,2");
    CHECK(lines[4] == "270.0000,0.5");
    std::remove(path.c_str());
}
