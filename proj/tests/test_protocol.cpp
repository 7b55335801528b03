#include <doctest.h>

#include <cmath>

#include "teleclone/analysis.hpp"
#include "teleclone/protocol.hpp"
#include "test_util.hpp"

using namespace teleclone;
using testutil::max_abs_diff;

TEST_CASE("fresh channel") {
  ChannelState ch = ChannelState::fresh(2);
  CHECK(ch.rho.layout.names() ==
        std::vector<std::string>{"P", "A1", "C1", "C2"});
  CHECK(ch.remaining_receivers() == std::vector<std::string>{"C1", "C2"});
  CHECK(ch.round_index == 0);

  ChannelState b = ChannelState::fresh(1);
  CHECK(b.rho.layout.names() == std::vector<std::string>{"P", "C1"});
}

TEST_CASE("sharp first-round fidelities") {
  CHECK(avg_fidelity(ChannelState::fresh(1), 1.0, "C1") ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(avg_fidelity(ChannelState::fresh(2), 1.0, "C1") ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(avg_fidelity(ChannelState::fresh(2), 1.0, "C2") ==
        doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(avg_fidelity(ChannelState::fresh(3), 1.0, "C1") ==
        doctest::Approx(7.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("teleported_state at lambda = 1, M = 1 is the identity channel") {
  ChannelState ch = ChannelState::fresh(1);
  InputQubit q(Complex(0.6, 0.0), Complex(0.0, 0.8));
  DensityMatrix out = teleported_state(ch, 1.0, "C1", q);
  CHECK(max_abs_diff(out.mat, q.projector()) < 1e-13);
}

TEST_CASE("recycle") {
  SUBCASE("all-refuse keeps the layout, acceptance shrinks it") {
    ChannelState ch = ChannelState::fresh(2);
    ChannelState r1 = recycle(ch, 0.7, AcceptanceMask::all_refuse(2));
    CHECK(r1.rho.layout.names() ==
          std::vector<std::string>{"P", "A1", "C1", "C2"});
    CHECK(r1.round_index == 1);
    CHECK(r1.history.size() == 1);

    AcceptanceMask take_c1 = AcceptanceMask::all_refuse(2);
    take_c1.bits[0] = true;
    ChannelState r2 = recycle(r1, 0.8, take_c1);
    CHECK(r2.rho.layout.names() == std::vector<std::string>{"P", "A1", "C2"});
    CHECK(r2.remaining_receivers() == std::vector<std::string>{"C2"});
  }
  SUBCASE("trace preserved across rounds") {
    ChannelState ch = ChannelState::fresh(2);
    for (double lam : {0.4, 0.9}) {
      ch = recycle(ch, lam, AcceptanceMask::all_refuse(2));
      CHECK(std::abs(ch.rho.mat.trace().real() - 1.0) < 1e-12);
    }
  }
  SUBCASE("matches the dense Kraus-operator computation") {
    ChannelState ch = ChannelState::fresh(2);
    AcceptanceMask mask = AcceptanceMask::all_refuse(2);
    mask.bits[1] = true;
    const double lam = 0.65;
    ChannelState fast = recycle(ch, lam, mask);

    SubsystemLayout full =
        SubsystemLayout::qubits({"X", "P", "A1", "C1", "C2"});
    KrausSet set = kraus_set(lam, mask, full);
    ComplexMatrix rho_in = kron(identity(2) / 2.0, ch.rho.mat);
    ComplexMatrix dense = ComplexMatrix::Zero(32, 32);
    for (const auto& op : set.ops) dense += op * rho_in * op.adjoint();
    ComplexMatrix reduced = partial_trace_raw(dense, full, {"X", "C2"});
    CHECK(max_abs_diff(fast.rho.mat, reduced) < 1e-13);
  }
  SUBCASE("protocol exhausted") {
    ChannelState ch = ChannelState::fresh(1);
    AcceptanceMask take{std::vector<bool>{true}};
    ChannelState done = recycle(ch, 1.0, take);
    CHECK(done.remaining_receivers().empty());
    CHECK_THROWS_AS(recycle(done, 1.0, AcceptanceMask::all_refuse(0)),
                    std::domain_error);
  }
  SUBCASE("mask length mismatch") {
    ChannelState ch = ChannelState::fresh(2);
    CHECK_THROWS_AS(recycle(ch, 0.5, AcceptanceMask::all_refuse(3)),
                    std::invalid_argument);
  }
}

TEST_CASE("multi-round fidelity follows the attenuation kernel") {
  // f_n = 1/2 + K P(l1)..P(l_{n-1}) l_n for the all-refuse history.
  const std::vector<double> lams{0.6, 0.85, 0.95};
  ChannelState ch = ChannelState::fresh(2);
  std::vector<double> used;
  for (double lam : lams) {
    used.push_back(lam);
    CHECK(avg_fidelity(ch, lam, "C1") ==
          doctest::Approx(closed_fidelity(2, used)).epsilon(1e-10));
    ch = recycle(ch, lam, AcceptanceMask::all_refuse(2));
  }
}

TEST_CASE("kernel also survives an acceptance event") {
  // After C1 accepts in round 1, C2's round-2 fidelity still follows
  // 1/2 + K P(l1) l2 with the same K.
  const double l1 = 0.8, l2 = 0.9;
  ChannelState ch = ChannelState::fresh(2);
  AcceptanceMask take_c1 = AcceptanceMask::all_refuse(2);
  take_c1.bits[0] = true;
  ChannelState r1 = recycle(ch, l1, take_c1);
  const double expect = 0.5 + (1.0 / 3.0) * p_kernel(l1) * l2;
  CHECK(avg_fidelity(r1, l2, "C2") == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("run_schedule") {
  SUBCASE("optimal state, two all-refuse rounds") {
    RoundSchedule sched{{0.7, AcceptanceMask::all_refuse(2)},
                        {0.9, AcceptanceMask::all_refuse(2)}};
    auto reports = run_schedule(2, DisentangleParams::optimal(2), sched);
    REQUIRE(reports.size() == 4);
    for (const auto& r : reports) {
      CHECK(r.abs_diff < tol::oracle_match);
      CHECK(r.f_closed > 0.5);
    }
    CHECK(reports[0].round == 1);
    CHECK(reports[2].round == 2);
  }
  SUBCASE("unequal receiver etas give per-receiver closed forms") {
    DisentangleParams etas = DisentangleParams::optimal(2);
    etas.eta_C = {0.6, 0.9};
    RoundSchedule sched{{0.8, AcceptanceMask::all_refuse(2)},
                        {0.95, AcceptanceMask::all_refuse(2)}};
    auto reports = run_schedule(2, etas, sched);
    REQUIRE(reports.size() == 4);
    for (const auto& r : reports) CHECK(r.abs_diff < tol::oracle_match);
    CHECK(reports[0].f_closed != doctest::Approx(reports[1].f_closed));
  }
  SUBCASE("port eta") {
    DisentangleParams etas = DisentangleParams::optimal(2);
    etas.eta_P = 0.7;
    RoundSchedule sched{{0.9, AcceptanceMask::all_refuse(2)}};
    auto reports = run_schedule(2, etas, sched);
    for (const auto& r : reports) CHECK(r.abs_diff < tol::oracle_match);
  }
  SUBCASE("empty schedule rejected") {
    CHECK_THROWS_AS(run_schedule(2, DisentangleParams::optimal(2), {}),
                    std::domain_error);
  }
}

TEST_CASE("unknown receiver") {
  ChannelState ch = ChannelState::fresh(2);
  CHECK_THROWS_AS(avg_fidelity(ch, 1.0, "C7"), std::invalid_argument);
}
