#include "lumpcas/hirota.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace lumpcas;
using testsupport::hirota_oracle;
using testsupport::random_poly;

namespace {

const ExactPoly x = ExactPoly::var1(Basis::XY);
const ExactPoly y = ExactPoly::var2(Basis::XY);
const ExactPoly z = ExactPoly::var1(Basis::ZZbar);
const ExactPoly zb = ExactPoly::var2(Basis::ZZbar);

GaussianRational q(long n, long d = 1) { return GaussianRational(make_rational(n, d)); }

ExactPoly zz(int a, int b) { return ExactPoly::monomial(Basis::ZZbar, a, b); }

}  // namespace

TEST(HirotaD, DzDzbMonomials) {
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            for (int c = 0; c <= 4; ++c)
                for (int d = 0; d <= 4; ++d) {
                    const auto h = hirota_d(1, 1, zz(a, b), zz(c, d));
                    const long coef = static_cast<long>(a - c) * (b - d);
                    if (a + c >= 1 && b + d >= 1)
                        ASSERT_EQ(h, zz(a + c - 1, b + d - 1) * q(coef));
                    else
                        ASSERT_TRUE(h.is_zero());
                }
}

TEST(HirotaD, SecondOrderSelf) {
    EXPECT_EQ(hirota_d(2, 0, x, x), ExactPoly::constant(Basis::XY, -2));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        const auto f = random_poly(rng, Basis::XY, 4, 4);
        const auto fx = diff(f, Axis::First, 1);
        ASSERT_EQ(hirota_d(2, 0, f, f), q(2) * (f * diff(f, Axis::First, 2) - fx * fx));
    }
}

TEST(HirotaD, Dx4OfTn0) {
    for (int n = 2; n <= 8; ++n) {
        const auto T = zz(n, n);
        const auto dx4 = hirota_d(4, 0, to_xy(T), to_xy(T));
        const auto g = to_zzbar(dx4);
        const long c = 12L * n * n - 12L * n;
        // (12n^2-12n) z^{2n} zb^{2n-4} + 24 n^2 z^{2n-2} zb^{2n-2} + (12n^2-12n) z^{2n-4} zb^{2n}
        ExactPoly expect = zz(2 * n, 2 * n - 4) * q(c) + zz(2 * n - 2, 2 * n - 2) * q(24L * n * n) +
                           zz(2 * n - 4, 2 * n) * q(c);
        ASSERT_EQ(g, expect) << "n=" << n;
    }
    EXPECT_EQ(to_zzbar(hirota_d(4, 0, to_xy(zz(2, 2)), to_xy(zz(2, 2)))).coeff(4, 0), q(24));
}

TEST(HirotaD, RejectsBadInput) {
    EXPECT_THROW(hirota_d(1, 0, x, z), BasisMismatch);
    EXPECT_THROW(hirota_d(-1, 0, x, x), std::invalid_argument);
}

TEST(Residual, ClassicalLump) {
    const auto form = BilinearForm::standard();
    EXPECT_TRUE(residual(form, x * x + y * y + q(3)).is_zero());
    for (long c : {0L, 1L, 5L, -2L}) {
        const auto r = residual(form, x * x + y * y + q(c));
        EXPECT_EQ(r, ExactPoly::constant(Basis::XY, q(24 - 8 * c))) << "c=" << c;
    }
}

TEST(Residual, HarmonicKernel) {
    const BilinearForm lap{Basis::XY, {{1, 2, 0}, {1, 0, 2}}, "laplace"};
    const auto zeta = x + y * GaussianRational::i();
    for (int j = 0; j <= 3; ++j)
        for (int k = 0; k <= 4; ++k) {
            const auto f = q(7, 3) * pow(x * x + y * y, j) * pow(zeta, k);
            ASSERT_TRUE(residual(lap, f).is_zero()) << j << "," << k;
        }
}

TEST(Residual, BasisMismatch) {
    EXPECT_THROW(residual(BilinearForm::standard(), z * zb), BasisMismatch);
}

TEST(BilinearForm, Validation) {
    EXPECT_THROW((BilinearForm{Basis::XY, {{1, 3, 0}}}), std::invalid_argument);
    EXPECT_THROW((BilinearForm{Basis::XY, {{0, 2, 0}}}), std::invalid_argument);
    EXPECT_THROW(form_preset("nope"), std::invalid_argument);
    const auto f = parse_custom_form("1:4:0,-1/3:0:2");
    ASSERT_EQ(f.terms().size(), 2u);
    EXPECT_EQ(f.terms()[1].weight, q(-1, 3));
    EXPECT_THROW(parse_custom_form("1:4"), std::invalid_argument);
    EXPECT_THROW(parse_custom_form("x:4:0"), std::invalid_argument);
    EXPECT_EQ(form_preset("standard").describe(), "1*Dx^4 -1*Dx^2 -1*Dy^2");
}

TEST(BilinearForm, ZZbarRewrite) {
    // D_x^2 + D_y^2 = 4 D_z D_zb
    const auto lap = to_zzbar(BilinearForm{Basis::XY, {{1, 2, 0}, {1, 0, 2}}});
    ASSERT_EQ(lap.terms().size(), 1u);
    EXPECT_EQ(lap.terms()[0].a, 1);
    EXPECT_EQ(lap.terms()[0].b, 1);
    EXPECT_EQ(lap.terms()[0].weight, q(4));
}

TEST(HirotaMonomialZz, Examples) {
    for (long n = 3; n <= 12; ++n) EXPECT_EQ(hirota_monomial_zz(n, n, n + 1, n - 3, 1, 1), Rational(-3));
    EXPECT_EQ(hirota_monomial_zz(4, 1, 4, 7, 1, 1), Rational(0));
    EXPECT_EQ(hirota_monomial_zz(2, 2, 1, 2, 1, 1), Rational(0));
    EXPECT_EQ(hirota_monomial_zz(1, 0, 0, 0, 2, 0), Rational(0));
}

TEST(HirotaMonomialZz, AgreesWithLeibniz) {
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c)
                for (int d = 0; d <= 3; ++d)
                    for (int p = 0; p <= 3; ++p)
                        for (int s = 0; s <= 3; ++s) {
                            const auto h = hirota_d(p, s, zz(a, b), zz(c, d));
                            const auto want = (a + c >= p && b + d >= s) ? h.coeff(a + c - p, b + d - s)
                                                                         : GaussianRational();
                            ASSERT_EQ(GaussianRational(hirota_monomial_zz(a, b, c, d, p, s)), want);
                        }
}

TEST(HirotaMonomialZz, DxCoefficient) {
    // D_x = D_z + D_zb on zzbar monomials
    for (int a = 0; a <= 4; ++a)
        for (int d = 0; d <= 4; ++d) {
            const auto f = zz(a, 3);
            const auto g = zz(2, d);
            ExactPoly dx4(Basis::ZZbar);
            for (int r = 0; r <= 4; ++r) dx4 += hirota_d(r, 4 - r, f, g) * GaussianRational(Rational(binomial(4, r)));
            for (const auto& [m, c] : dx4.terms())
                ASSERT_EQ(GaussianRational(hirota_dx_monomial_zz(4, a, 3, 2, d, m.i, m.j)), c);
        }
}

// ---------------------------------------------------------------------------
// Properties

TEST(HirotaProperty, ShiftOracle200) {
    std::mt19937_64 rng(424242);
    int checked = 0;
    while (checked < 200) {
        const auto basis = checked % 3 == 0 ? Basis::ZZbar : Basis::XY;
        const auto f = random_poly(rng, basis, 4, 4);
        const auto g = random_poly(rng, basis, 4, 4);
        const int a = std::uniform_int_distribution<int>(0, 4)(rng);
        const int b = std::uniform_int_distribution<int>(0, 4 - a)(rng);
        ASSERT_EQ(hirota_d(a, b, f, g), hirota_oracle(a, b, f, g))
            << "a=" << a << " b=" << b << " f=" << to_string(f) << " g=" << to_string(g);
        ++checked;
    }
}

TEST(HirotaProperty, Antisymmetry) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        const auto f = random_poly(rng, Basis::XY, 4, 4);
        const auto g = random_poly(rng, Basis::XY, 4, 4);
        const int a = t % 4;
        const int b = (t / 4) % 3;
        const auto sign = ((a + b) % 2) ? q(-1) : q(1);
        ASSERT_EQ(hirota_d(a, b, f, g), hirota_d(a, b, g, f) * sign);
        if ((a + b) % 2) {
            ASSERT_TRUE(hirota_d(a, b, f, f).is_zero());
        }
    }
}

TEST(HirotaProperty, Bilinearity) {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 60; ++t) {
        const auto f = random_poly(rng, Basis::XY, 4, 4);
        const auto g = random_poly(rng, Basis::XY, 4, 4);
        const auto h = random_poly(rng, Basis::XY, 4, 4);
        const auto s = testsupport::small_coeff(rng, false);
        ASSERT_EQ(hirota_d(2, 1, f * s + g, h), hirota_d(2, 1, f, h) * s + hirota_d(2, 1, g, h));
        ASSERT_EQ(hirota_d(1, 2, h, f + g * s), hirota_d(1, 2, h, f) + hirota_d(1, 2, h, g) * s);
    }
}

TEST(HirotaProperty, BasisCovariance) {
    std::mt19937_64 rng(8);
    const BilinearForm lap{Basis::XY, {{1, 2, 0}, {1, 0, 2}}};
    const BilinearForm dzdzb{Basis::ZZbar, {{4, 1, 1}}};
    for (int t = 0; t < 60; ++t) {
        const auto tau = random_poly(rng, Basis::XY, 5, 5, true);
        ASSERT_EQ(residual(lap, tau), to_xy(residual(dzdzb, to_zzbar(tau))));
        ASSERT_EQ(to_zzbar(residual(BilinearForm::standard(), tau)),
                  residual(to_zzbar(BilinearForm::standard()), to_zzbar(tau)));
    }
}
