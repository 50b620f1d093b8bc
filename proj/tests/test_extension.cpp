#include "bider/bider.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace bider;

namespace {

const Scalar half(1, 2);
const Window small(8, 4);

HomBilinearMap entry_map(const std::string& name, const AlgebraSpec& g, int n, const Window& w = small) {
    return restrict_bilinear(catalog_entry(name), WindowAlgebra(g, w), n);
}

}  // namespace

TEST(Quotient, InducesTheBaseEntries) {
    EXPECT_EQ(quotient_induce(AlgebraSpec::virasoro(), entry_map("pi~", AlgebraSpec::virasoro(), 0)).table,
              entry_map("pi", AlgebraSpec::witt(), 0).table);
    const auto ext = AlgebraSpec::wtilde(0, -1);
    EXPECT_EQ(quotient_induce(ext, entry_map("Theta~", ext, 0)).table, entry_map("Theta", AlgebraSpec::w(0, -1), 0).table);
}

TEST(Quotient, CentralValuedEntryInducesZero) {
    const auto g = AlgebraSpec::wtilde(0, 1);
    EXPECT_TRUE(quotient_induce(g, entry_map("A", g, 0)).table.empty());
    EXPECT_THROW(quotient_induce(AlgebraSpec::witt(), HomBilinearMap{0, {}}), std::invalid_argument);
}

TEST(Lift, WittThetaZeroDoesNotLift) {
    EXPECT_FALSE(lift_check(AlgebraSpec::witt(), entry_map("theta_n", AlgebraSpec::witt(), 0), AlgebraSpec::virasoro(),
                            half, small)
                     .feasible);
}

TEST(Lift, PsiZeroDoesNotLiftOnZeroZero) {
    EXPECT_FALSE(lift_check(AlgebraSpec::w(0, 0), entry_map("psi0_n", AlgebraSpec::w(0, 0), 0), AlgebraSpec::wtilde(0, 0),
                            1, small)
                     .feasible);
}

TEST(Lift, PhiAndPsiDoNotLift) {
    const auto g = AlgebraSpec::w(0, -1), ext = AlgebraSpec::wtilde(0, -1);
    EXPECT_FALSE(lift_check(g, entry_map("Phi_n", g, 0), ext, half, small).feasible);
    EXPECT_FALSE(lift_check(g, entry_map("Psi_n", g, 0), ext, half, small).feasible);
}

TEST(Lift, ThetaLiftsToThetaTilde) {
    const auto g = AlgebraSpec::w(0, -1), ext = AlgebraSpec::wtilde(0, -1);
    const auto r = lift_check(g, entry_map("Theta", g, 0), ext, 1, small);
    ASSERT_TRUE(r.feasible);
    EXPECT_TRUE(r.is_lift(entry_map("Theta~", ext, 0)));
    EXPECT_FALSE(r.is_lift(entry_map("pi~", ext, 0)));
    EXPECT_EQ(oracle::biderivation_violations(ext, 1, r.lift, small.N), 0u);
    EXPECT_EQ(quotient_induce(ext, r.lift).table, entry_map("Theta", g, 0).table);
}

// Lifting zero leaves exactly the central-valued biderivations of the extension.
TEST(Lift, ZeroLiftsWithCentralCorrections) {
    const auto g = AlgebraSpec::w(0, 1), ext = AlgebraSpec::wtilde(0, 1);
    const auto r = lift_check(g, HomBilinearMap{0, {}}, ext, 1, small);
    ASSERT_TRUE(r.feasible);
    EXPECT_TRUE(r.is_lift(HomBilinearMap{0, {}}));
    const auto rep = Solver(ext, small, 1).biderivations(0);
    const auto cv = central_valued_part(rep);
    EXPECT_EQ(r.corrections.dimension(), cv.dimension());
    for (const auto& row : r.corrections.rows()) EXPECT_TRUE(cv.contains(row));
    EXPECT_TRUE(r.is_lift(entry_map("A", ext, 0)));
    EXPECT_TRUE(r.is_lift(entry_map("C", ext, 0)));
}

TEST(Lift, RejectsMismatchedFamilies) {
    EXPECT_THROW(lift_check(AlgebraSpec::witt(), HomBilinearMap{0, {}}, AlgebraSpec::wtilde(0, 1), 1, small),
                 std::invalid_argument);
    EXPECT_THROW(lift_check(AlgebraSpec::w(0, 1), HomBilinearMap{0, {}}, AlgebraSpec::wtilde(0, -1), 1, small),
                 std::invalid_argument);
}

// Lifts found by the solver satisfy both equations on the extension and induce the base map.
TEST(LiftProperty, FeasibleLiftsAreBiderivations) {
    const std::vector<std::pair<AlgebraSpec, AlgebraSpec>> pairs{{AlgebraSpec::witt(), AlgebraSpec::virasoro()},
                                                                {AlgebraSpec::w(0, -1), AlgebraSpec::wtilde(0, -1)},
                                                                {AlgebraSpec::w(half, 0), AlgebraSpec::wtilde(half, 0)}};
    for (const auto& [g, ext] : pairs)
        for (const auto& e : catalog()) {
            if (e.kind != EntryKind::Biderivation || !e.exists_on(g)) continue;
            for (const auto& delta : {Scalar(1), half})
                if (e.applies(g, delta))
                    for (int n : e.per_n() ? std::vector<int>{0, 2} : std::vector<int>{*e.fixed_degree}) {
                        const auto f = entry_map(e.name, g, n);
                        const auto r = lift_check(g, f, ext, delta, small);
                        if (!r.feasible) continue;
                        EXPECT_EQ(oracle::biderivation_violations(ext, delta, r.lift, small.N), 0u) << e.name;
                        EXPECT_EQ(quotient_induce(ext, r.lift).table, f.table) << e.name;
                    }
        }
}

TEST(CenterInteraction, PerfectFamiliesSendCenterToCenter) {
    for (const auto& g : oracle::sampled_algebras()) {
        if (!g.perfect() || !g.quotient()) continue;
        for (const auto& delta : {Scalar(1), half, Scalar(2)}) {
            const auto rep = Solver(g, small, delta).biderivations(0);
            const auto ci = center_interaction(rep);
            EXPECT_TRUE(ci.values_central) << g.name() << " " << ci.first_failure;
            EXPECT_TRUE(ci.vanish_on_derived) << g.name() << " " << ci.first_failure;
        }
    }
}

TEST(CentralValued, PartIsContainedInRawAndHasCentralValues) {
    const auto g = AlgebraSpec::wtilde(0, 1);
    const auto rep = Solver(g, small, 1).biderivations(0);
    const auto cv = central_valued_part(rep);
    EXPECT_GT(cv.dimension(), 0u);
    for (const auto& row : cv.rows()) {
        EXPECT_TRUE(rep.raw.contains(row));
        const auto f = rep.bilinear_coords->materialize(row);
        for (const auto& [uv, val] : f.table)
            for (const auto& [t, c] : val.terms()) EXPECT_TRUE(t.is_central());
    }
    EXPECT_EQ(central_valued_part(Solver(AlgebraSpec::witt(), small, 1).biderivations(0)).dimension(), 0u);
}

// Quotients of extension solutions are biderivations of the base.
TEST(QuotientProperty, InducedMapsSolveTheBaseSystem) {
    for (const auto& ext : {AlgebraSpec::virasoro(), AlgebraSpec::wtilde(0, -1), AlgebraSpec::wtilde(0, 1)})
        for (const auto& delta : {Scalar(1), half}) {
            const auto rep = Solver(ext, small, delta).biderivations(0);
            for (const auto& f : rep.raw_maps())
                EXPECT_EQ(oracle::biderivation_violations(*ext.quotient(), delta, quotient_induce(ext, f), small.N), 0u)
                    << ext.name();
        }
}
