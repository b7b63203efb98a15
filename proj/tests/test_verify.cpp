#include "qrim/verify.hpp"

#include <gtest/gtest.h>

namespace v = qrim::verify;

namespace {

const v::CheckResult* find(const v::Report& rep, std::string_view name) {
    for (const v::CheckResult& c : rep.checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

}  // namespace

TEST(Worst, TracksExtremumAndConfiguration) {
    v::detail::Worst w(v::Relation::at_most);
    qrim::MachineConfig a, b;
    b.tau = 1.25;
    w.add(0.1, a);
    w.add(0.3, b);
    w.add(0.2, a);
    const v::CheckResult ok = w.finish("x", 0.5);
    EXPECT_EQ(ok.status, v::Status::pass);
    EXPECT_EQ(ok.worst, 0.3);
    EXPECT_TRUE(ok.offending.empty());
    const v::CheckResult bad = w.finish("x", 0.25);
    EXPECT_EQ(bad.status, v::Status::fail);
    EXPECT_EQ(bad.offending, qrim::describe(b));
}

TEST(Worst, NanPoisonsAndEmptyFails) {
    v::detail::Worst w(v::Relation::at_least);
    w.add(1.0, {});
    w.add(std::nan(""), {});
    w.add(2.0, {});
    EXPECT_EQ(w.finish("x", 0.0).status, v::Status::fail);
    v::detail::Worst empty(v::Relation::at_least);
    empty.skip();
    const v::CheckResult r = empty.finish("x", 0.0);
    EXPECT_EQ(r.status, v::Status::fail);
    EXPECT_EQ(r.skipped, 1u);
}

TEST(Verify, QuickBatteryPasses) {
    const v::Report rep = v::run(v::Options::quick());
    for (const v::CheckResult& c : rep.checks) {
        EXPECT_NE(c.status, v::Status::fail) << c.name << " worst=" << c.worst << " " << c.offending;
        EXPECT_GT(c.samples, 0u) << c.name;
    }
    for (std::string_view name :
         {"alternating_population_oracle", "alternating_thermo_oracle", "alternating_energy_closure",
          "alternating_no_refrigeration", "alternating_campaign_no_refrigeration",
          "alternating_population_bounds",
          "simultaneous_no_refrigeration", "simultaneous_population_bounds", "first_law",
          "physicality", "alternating_no_engine", "simultaneous_no_engine", "trotter_equivalence",
          "dyson_validity", "dyson_out_of_regime"}) {
        EXPECT_NE(find(rep, name), nullptr) << name;
    }
    EXPECT_EQ(find(rep, "dyson_out_of_regime")->status, v::Status::info);
    EXPECT_TRUE(rep.passed());
}

TEST(Verify, DetectsSignFlipInColdHeat) {
    v::Options o = v::Options::quick();
    o.alternating_thermo = [](const qrim::MachineConfig& cfg) {
        qrim::ThermoCycle t = qrim::alternating::thermo_limit_cycle(cfg);
        t.q_cold = -t.q_cold;
        return t;
    };
    const auto checks = v::check_alternating_oracle(o);
    const v::CheckResult& thermo = checks[1];
    ASSERT_EQ(thermo.name, "alternating_thermo_oracle");
    EXPECT_EQ(thermo.status, v::Status::fail);
    EXPECT_NE(thermo.offending.find("tau="), std::string::npos);
    EXPECT_EQ(checks[2].status, v::Status::fail);  // energy closure
}

TEST(Verify, DetectsSmallWorkBias) {
    v::Options o = v::Options::quick();
    o.alternating_thermo = [](const qrim::MachineConfig& cfg) {
        qrim::ThermoCycle t = qrim::alternating::thermo_limit_cycle(cfg);
        t.w_total += 1e-8;
        return t;
    };
    const auto checks = v::check_alternating_oracle(o);
    EXPECT_EQ(checks[2].status, v::Status::fail);
    EXPECT_EQ(v::check_trotter(o).status, v::Status::pass);
}

TEST(Verify, RejectsInvalidCampaignBase) {
    v::Options o = v::Options::quick();
    o.campaign_base.tau = -1.0;
    EXPECT_THROW(v::run(o), std::invalid_argument);
}

TEST(Verify, TrotterConfigurationFollowsCut) {
    const qrim::MachineConfig cfg = v::trotter_config({}, 0.5);
    EXPECT_DOUBLE_EQ(cfg.hot.coupling.jxx, 50.0);
    EXPECT_DOUBLE_EQ(cfg.hot.coupling.jyy, 12.5);
    EXPECT_DOUBLE_EQ(cfg.cold.coupling.jxx, 25.0);
    EXPECT_DOUBLE_EQ(cfg.cold.coupling.jyy, 6.25);
    EXPECT_EQ(cfg.tau, v::kTrotterTau);
}

TEST(Verify, DysonOutsideRegimeDisagrees) {
    const v::CheckResult r = v::dyson_comparison(v::Options::quick(), v::kDysonOutOfRegimeTau, false);
    EXPECT_EQ(r.status, v::Status::info);
    // The allowance 10 (J tau)^3 is of order 10^3 here; the absolute disagreement is order one.
    const double scale = 16.0 * v::kDysonOutOfRegimeTau;
    EXPECT_GT(r.worst * 10.0 * scale * scale * scale, 0.1);
}
