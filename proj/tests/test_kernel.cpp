#include <catch2/catch_amalgamated.hpp>

#include "qva/render.hpp"
#include "qva/tseries.hpp"

using namespace qva;

namespace {

RatFun rf_var(Var v, int k = 1) { return RatFun::variable(v, static_cast<int16_t>(k)); }

} // namespace

TEST_CASE("poly arithmetic and division")
{
    Poly z1 = Poly::variable(Var::z1);
    Poly z2 = Poly::variable(Var::z2);
    Poly p = (z1 - z2) * (z1 + z2);
    CHECK(render(p) == "z1^2 - z2^2");

    auto q = p.divide_by(LinForm::diff(Var::z1, Var::z2));
    REQUIRE(q.has_value());
    CHECK(*q == z1 + z2);

    CHECK_FALSE((z1 * z1 + z2).divide_by(LinForm::diff(Var::z1, Var::z2)).has_value());

    // Laurent division: (z1 - z2)/z1 divisible by z1 - z2
    Poly lp = Poly(Rat(1), exp_of(Var::z1, 0)) - Poly(Rat(1), exp_add(exp_of(Var::z2), exp_of(Var::z1, -1)));
    auto lq = lp.divide_by(LinForm::diff(Var::z1, Var::z2));
    REQUIRE(lq.has_value());
    CHECK(*lq == Poly(Rat(1), exp_of(Var::z1, -1)));

    CHECK(p.derivative(Var::z1) == Rat(2) * z1);
    CHECK(Poly(Rat(1), exp_of(Var::z1, -1)).derivative(Var::z1) == Poly(Rat(-1), exp_of(Var::z1, -2)));
}

TEST_CASE("ratfun canonical form and arithmetic")
{
    RatFun f = RatFun::quotient(Poly(Rat(1)), LinForm::diff(Var::z1, Var::z2));
    RatFun g = RatFun::quotient(Poly::variable(Var::z1) - Poly::variable(Var::z2),
                                LinForm::diff(Var::z1, Var::z2), 2);
    CHECK(f == g); // cancels to the same canonical value
    CHECK(render(g) == "1/(z1-z2)");

    // single-variable denominators live in the numerator
    RatFun h = RatFun::quotient(Poly(Rat(1)), LinForm::var(Var::z1), 2);
    CHECK(h.den().empty());
    CHECK(render(h) == "1/z1^2");

    RatFun sum = f + h;
    CHECK(render(sum) == "(z1^2 + z1 - z2)/(z1^2 * (z1-z2))");
    CHECK(sum - f == h);

    // derivative of 1/(z1-z2) in z2
    CHECK(f.derivative(Var::z2) == RatFun::quotient(Poly(Rat(1)), LinForm::diff(Var::z1, Var::z2), 2));
    // divided powers: d^(2)/dz2^2 of 1/(z1-z2) = 1/(z1-z2)^3
    CHECK(f.dp_derivative(Var::z2, 2) == RatFun::quotient(Poly(Rat(1)), LinForm::diff(Var::z1, Var::z2), 3));
}

TEST_CASE("ratfun substitution")
{
    RatFun f = RatFun::quotient(Poly(Rat(1)), LinForm::diff(Var::z1, Var::z2));

    // z1 -> z1 + gamma
    LinForm shift = LinForm::var(Var::z1).plus(LinForm::var(Var::gamma));
    RatFun fs = f.substitute(subst_one(Var::z1, shift));
    LinForm expect = LinForm::diff(Var::z1, Var::z2).plus(LinForm::var(Var::gamma));
    CHECK(fs == RatFun::quotient(Poly(Rat(1)), expect));

    // identity assignment
    CHECK(f.substitute(subst_one(Var::z1, LinForm::var(Var::z1))) == f);

    // swap is simultaneous
    RatFun fsw = f.substitute(subst_swap(Var::z1, Var::z2));
    CHECK(fsw == -f);

    // z2 -> 0 in z2/z1 + 1/(z1-z2)
    RatFun g = RatFun::quotient(Poly::variable(Var::z2), LinForm::var(Var::z1)) + f;
    RatFun g0 = g.at_zero(Var::z2);
    CHECK(g0 == RatFun::quotient(Poly(Rat(1)), LinForm::var(Var::z1)));

    // substituting a pole location is an error
    CHECK_THROWS_AS(f.substitute(subst_one(Var::z1, LinForm::var(Var::z2))), SingularSubstitution);
}

TEST_CASE("ratfun inverse")
{
    // z1 - z2 inverts
    RatFun f(Poly::variable(Var::z1) - Poly::variable(Var::z2));
    CHECK(f.inverse() == RatFun::quotient(Poly(Rat(1)), LinForm::diff(Var::z1, Var::z2)));
    CHECK(f.inverse() * f == RatFun(Rat(1)));

    // monomial inverts
    RatFun m(Poly(Rat(-3), exp_of(Var::z1, 2)));
    CHECK(m.inverse() * m == RatFun(Rat(1)));

    // products of forms invert
    RatFun p = f * RatFun(Poly::variable(Var::z1) + Poly::variable(Var::z2)) * m;
    CHECK(p.inverse() * p == RatFun(Rat(1)));

    // z1^2 + z2^2 does not
    CHECK_THROWS_AS(RatFun(Poly::variable(Var::z1, 2) + Poly::variable(Var::z2, 2)).inverse(),
                    NotInvertible);
}

TEST_CASE("tseries arithmetic, inverse, rendering")
{
    const int T = 4;
    // s = z1 - t*z2  (the eager expansion of division by it is geometric)
    RatSeries s = RatSeries::monomial(rf_var(Var::z1), 0, T) +
                  RatSeries::monomial(RatFun(Poly(Rat(-1), exp_of(Var::z2))), 1, T);
    RatSeries inv = s.inverse();
    // 1/(z1 - t z2) = sum_k t^k z2^k / z1^{k+1}
    for (int k = 0; k <= T; ++k) {
        ExpVec e = exp_of(Var::z2, static_cast<int16_t>(k));
        e[0] = static_cast<int16_t>(-k - 1);
        CHECK(inv.at(k) == RatFun(Poly(Rat(1), e)));
    }
    CHECK((inv * s) == rs_const(Rat(1), T));

    RatSeries lnd = ln_derivative(s, Var::z1);
    CHECK(lnd.at(0) == RatFun(Poly(Rat(1), exp_of(Var::z1, -1))));

    CHECK(render(rs_const(Rat(1), 2) - rs_t(2)) == "1 - t + O(t^3)");

    ScalarSeries a(Rat(2), 3);
    ScalarSeries b = ScalarSeries::monomial(Rat(1), 2, 3);
    CHECK(render(a + b) == "2 + t^2 + O(t^4)");
    CHECK((a * b).at(2) == Rat(2));
    CHECK((a * b).at(5) == Rat(0)); // beyond truncation

    CHECK(a.pow(-1).at(0) == Rat(1) / Rat(2));
}

TEST_CASE("tseries golden rendering of a bicharacter-style value")
{
    // 1/(z1-z2)^2 - t/z1^2 - 2 t^2 z2/z1^3
    const int T = 2;
    RatSeries v = RatSeries::monomial(RatFun::quotient(Poly(Rat(1)), LinForm::diff(Var::z1, Var::z2), 2), 0, T);
    v += RatSeries::monomial(RatFun(Poly(Rat(-1), exp_of(Var::z1, -2))), 1, T);
    ExpVec e = exp_of(Var::z2);
    e[0] = -3;
    v += RatSeries::monomial(RatFun(Poly(Rat(-2), e)), 2, T);
    CHECK(render(v) == "1/(z1-z2)^2 - t/z1^2 - 2*t^2*z2/z1^3 + O(t^3)");
}
