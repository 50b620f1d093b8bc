#include "bider/algebra.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace bider;

namespace {

const BasisVector C0 = BasisVector::central(CentralTag::C0);

Element elem(std::initializer_list<std::pair<BasisVector, Scalar>> terms) {
    Element e;
    for (const auto& [v, c] : terms) e.add(v, c);
    return e;
}

}  // namespace

TEST(Bracket, VirasoroCentralTerm) {
    const auto e = bracket(AlgebraSpec::virasoro(), BasisVector::L(2), BasisVector::L(-2));
    EXPECT_EQ(e, elem({{BasisVector::L(0), 4}, {C0, Scalar(1, 2)}}));
    EXPECT_EQ(to_string(e), "4·L[0] + 1/2·C0");
}

TEST(Bracket, LOnICurrent) {
    for (const auto& [a, b] : oracle::sampled_parameters()) {
        const auto g = AlgebraSpec::w(a, b);
        EXPECT_EQ(bracket(g, BasisVector::L(1), BasisVector::I(2)), Element(BasisVector::I(3), -(a + 2 + b)));
    }
}

TEST(Bracket, HalfZeroCentralTerm) {
    const auto g = AlgebraSpec::wtilde(Scalar(1, 2), 0);
    EXPECT_EQ(bracket(g, BasisVector::I(3), BasisVector::I(-4)),
              Element(BasisVector::central(CentralTag::C2_half0), 7));
}

TEST(Bracket, SelfBracketVanishes) {
    for (const auto& g : oracle::sampled_algebras()) EXPECT_TRUE(bracket(g, BasisVector::L(0), BasisVector::L(0)).is_zero());
}

TEST(Bracket, CurrentsCommuteInW) {
    EXPECT_TRUE(bracket(AlgebraSpec::w(0, 1), BasisVector::I(1), BasisVector::I(2)).is_zero());
}

TEST(Bracket, InadmissibleVectorThrows) {
    EXPECT_THROW(bracket(AlgebraSpec::witt(), BasisVector::I(1), BasisVector::L(0)), std::invalid_argument);
    EXPECT_THROW(bracket(AlgebraSpec::witt(), C0, BasisVector::L(0)), std::invalid_argument);
    EXPECT_THROW(bracket(AlgebraSpec::wtilde(0, 0), BasisVector::central(CentralTag::C1_1), BasisVector::L(0)),
                 std::invalid_argument);
}

TEST(BracketProperty, MatchesIndependentStructureConstants) {
    const int N = 6;
    for (const auto& g : oracle::sampled_algebras()) {
        const auto B = oracle::basis(g, N);
        for (const auto& u : B)
            for (const auto& v : B) ASSERT_EQ(bracket(g, u, v), oracle::ref_bracket(g, u, v)) << g.name() << " " << to_string(u) << "," << to_string(v);
    }
}

TEST(BracketProperty, AntisymmetricAndGraded) {
    const int N = 6;
    for (const auto& g : oracle::sampled_algebras()) {
        const WindowBasis wb(g, N);
        for (const auto& u : wb.vectors())
            for (const auto& v : wb.vectors()) {
                const Element uv = bracket(g, u, v);
                EXPECT_TRUE((uv + bracket(g, v, u)).is_zero());
                if (!uv.is_zero()) {
                    EXPECT_EQ(uv.homogeneous_degree(), u.degree() + v.degree());
                }
            }
    }
}

TEST(BracketProperty, BilinearOnElements) {
    const auto g = AlgebraSpec::wtilde(0, 1);
    const Element x = elem({{BasisVector::L(1), 2}, {BasisVector::I(-1), Scalar(-1, 3)}});
    const Element y = elem({{BasisVector::L(-1), 5}, {BasisVector::I(1), 1}, {C0, 7}});
    Element expected;
    for (const auto& [u, cu] : x.terms())
        for (const auto& [v, cv] : y.terms()) expected += (cu * cv) * oracle::ref_bracket(g, u, v);
    EXPECT_EQ(bracket(g, x, y), expected);
}

TEST(Text, BasisVectorRoundTrip) {
    for (const auto* s : {"L[0]", "L[-3]", "I[12]", "C0", "C1^0", "C1^1", "C2^1", "C1^-1", "C2^0", "C2^{1/2,0}"})
        EXPECT_EQ(to_string(parse_basis_vector(s)), s);
    for (const auto* s : {"L[]", "L[x]", "X[1]", "C3", "L[1", "I[1.5]"})
        EXPECT_THROW(parse_basis_vector(s), std::invalid_argument) << s;
}

TEST(Text, ElementForm) {
    EXPECT_EQ(to_string(Element{}), "0");
    EXPECT_EQ(to_string(elem({{BasisVector::L(1), -1}, {BasisVector::I(0), Scalar(3, 4)}})), "-L[1] + 3/4·I[0]");
}

TEST(Element, NoZeroCoefficientsStored) {
    Element e(BasisVector::L(1), 2);
    e.add(BasisVector::L(1), -2);
    EXPECT_TRUE(e.is_zero());
    EXPECT_TRUE(e.terms().empty());
    EXPECT_FALSE(elem({{BasisVector::L(1), 1}, {BasisVector::L(2), 1}}).homogeneous_degree().has_value());
    EXPECT_EQ(Element(BasisVector::central(CentralTag::C2_half0)).homogeneous_degree(), -1);
}

TEST(Window, RequiresMarginBelowRadius) {
    EXPECT_THROW(Window(4, 4), std::invalid_argument);
    EXPECT_THROW(Window(5, -1), std::invalid_argument);
    const Window w(12, 4);
    EXPECT_EQ(w.core_radius(), 8);
    EXPECT_TRUE(w.in_core(BasisVector::L(-8)));
    EXPECT_FALSE(w.in_core(BasisVector::I(9)));
    EXPECT_TRUE(w.in_core(C0));
}

TEST(Normalize, Examples) {
    EXPECT_EQ(normalize_a(Scalar(7, 3)), Scalar(1, 3));
    EXPECT_EQ(normalize_a(0), 0);
    EXPECT_EQ(normalize_a(Scalar(-1, 2)), Scalar(1, 2));
    EXPECT_EQ(normalize_a(-3), 0);
}

TEST(NormalizeProperty, IdempotentIntegerShift) {
    for (int p = -40; p <= 40; ++p)
        for (int q : {1, 2, 3, 7}) {
            Scalar a(p, q);
            a.canonicalize();
            const Scalar r = normalize_a(a);
            EXPECT_EQ(normalize_a(r), r);
            EXPECT_GE(r, 0);
            EXPECT_LT(r, 1);
            EXPECT_EQ(Scalar(a - r).get_den(), 1);
        }
}

TEST(Jacobi, WittAndCentralExtensionsPass) {
    EXPECT_TRUE(jacobi_check(AlgebraSpec::witt(), Window(8, 0)).pass);
    EXPECT_TRUE(jacobi_check(AlgebraSpec::wtilde(0, 1), Window(8, 0)).pass);
}

TEST(Jacobi, AllSampledFamiliesPass) {
    for (const auto& g : oracle::sampled_algebras()) {
        const auto r = jacobi_check(g, Window(8, 0));
        EXPECT_TRUE(r.pass) << g.name();
        EXPECT_GT(r.triples_checked, 0u);
    }
}

TEST(Jacobi, CorruptedTableFails) {
    const auto g = AlgebraSpec::w(0, 0);
    auto B = WindowBasis(g, 8).vectors();
    B.push_back(C0);
    const auto corrupted = [&](const BasisVector& u, const BasisVector& v) {
        if (u.is_central() || v.is_central()) return Element{};
        Element e = bracket(g, u, v);
        const int s = u.index + v.index;
        const Scalar m = u.kind == BasisVector::Kind::L ? u.index : v.index;
        if (s == 0 && u.kind != v.kind) e.add(C0, u.kind == BasisVector::Kind::L ? Scalar(m * m * m) : Scalar(-m * m * m));
        return e;
    };
    const auto r = jacobi_check(B, 8, corrupted);
    EXPECT_FALSE(r.pass);
    ASSERT_TRUE(r.first_violation.has_value());
    EXPECT_FALSE(r.residual.is_zero());
}

TEST(Center, Witt) { EXPECT_TRUE(center_basis(AlgebraSpec::witt(), Window()).empty()); }

TEST(Center, Virasoro) {
    const auto c = center_basis(AlgebraSpec::virasoro(), Window());
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0], Element(C0));
}

TEST(Center, WtildeZeroOneExcludesI0) {
    const auto c = center_basis(AlgebraSpec::wtilde(0, 1), Window());
    const std::vector<Element> expected{Element(C0), Element(BasisVector::central(CentralTag::C1_1)),
                                        Element(BasisVector::central(CentralTag::C2_1))};
    EXPECT_EQ(c, expected);
    EXPECT_TRUE(center_basis(AlgebraSpec::w(0, 1), Window()).empty());
}

// I_0 is central exactly when a + b·m vanishes for every m, i.e. (a,b) = (0,0).
TEST(CenterProperty, EveryCentralTagAndNothingElse) {
    for (const auto& g : oracle::sampled_algebras()) {
        const auto c = center_basis(g, Window());
        std::vector<Element> expected;
        if (g.has_I() && g.a == 0 && g.b == 0) expected.push_back(Element(BasisVector::I(0)));
        for (auto t : all_central_tags)
            if (oracle::has_tag(g, t)) expected.push_back(Element(BasisVector::central(t)));
        auto key = [](const Element& e) { return e.terms().begin()->first; };
        auto sorted = c;
        std::sort(sorted.begin(), sorted.end(), [&](const Element& x, const Element& y) { return key(x) < key(y); });
        EXPECT_EQ(sorted, expected) << g.name();
    }
}

TEST(Derived, Membership) {
    const auto g = AlgebraSpec::wtilde(0, 1);
    EXPECT_FALSE(derived_membership(g, Window(), Element(BasisVector::I(0))));
    EXPECT_TRUE(derived_membership(g, Window(), Element(BasisVector::I(3))));
    EXPECT_TRUE(derived_membership(AlgebraSpec::witt(), Window(), Element(BasisVector::L(5))));
    EXPECT_THROW(derived_membership(AlgebraSpec::witt(), Window(), Element(BasisVector::L(10))), std::invalid_argument);
}

TEST(Derived, PerfectFamiliesReachEveryCoreVector) {
    for (const auto& g : oracle::sampled_algebras()) {
        if (!g.perfect()) continue;
        const Window w;
        for (int n = -w.core_radius(); n <= w.core_radius(); ++n) {
            EXPECT_TRUE(derived_membership(g, w, Element(BasisVector::L(n))));
            if (g.has_I()) {
                EXPECT_TRUE(derived_membership(g, w, Element(BasisVector::I(n)))) << g.name() << " I" << n;
            }
        }
    }
}
