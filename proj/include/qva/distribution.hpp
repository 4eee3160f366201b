#pragma once

#include "qva/expansion.hpp"

namespace qva {

struct SingularAtDiagonal : std::runtime_error {
    explicit SingularAtDiagonal(const std::string& m) : std::runtime_error(m) {}
};

/// Finite sum  sum_n c_n(z2) d^(n)_{z2} delta(z1,z2)  with divided-power
/// derivatives. The coefficient ring C is RatSeries for scalar-valued
/// distributions; the V-valued variant lives in the vertex-algebra layer.
/// Normal form: coefficients never depend on z1.
template <class C>
struct Dist {
    std::map<int, C> terms; // derivative order -> coefficient

    bool is_zero() const { return terms.empty(); }

    int max_order() const { return terms.empty() ? -1 : terms.rbegin()->first; }

    void add(int n, const C& c)
    {
        if (coeff_is_zero(c)) return;
        auto it = terms.find(n);
        if (it == terms.end()) {
            terms[n] = c;
        } else {
            it->second += c;
            if (coeff_is_zero(it->second)) terms.erase(it);
        }
    }

    Dist& operator+=(const Dist& o)
    {
        for (auto& [n, c] : o.terms) add(n, c);
        return *this;
    }
    friend Dist operator+(Dist a, const Dist& b) { return a += b; }

    Dist operator-() const
    {
        Dist r;
        for (auto& [n, c] : terms) r.terms[n] = -c;
        return r;
    }
    friend Dist operator-(Dist a, const Dist& b) { return a += -b; }

    bool operator==(const Dist& o) const
    {
        for (auto& [n, c] : terms)
            if (!coeff_is_zero(c - o.at(n))) return false;
        for (auto& [n, c] : o.terms)
            if (terms.find(n) == terms.end() && !coeff_is_zero(c)) return false;
        return true;
    }

    C at(int n) const
    {
        auto it = terms.find(n);
        return it == terms.end() ? C() : it->second;
    }

    /// Multiplication by (z1 - z2): shifts derivative orders down once,
    /// killing the order-0 term. Requires normal form.
    Dist mul_diff() const
    {
        Dist r;
        for (auto& [n, c] : terms)
            if (n >= 1) r.terms[n - 1] = c;
        return r;
    }

    Dist mul_diff_pow(int N) const
    {
        Dist r = *this;
        for (int i = 0; i < N; ++i) r = r.mul_diff();
        return r;
    }
};

using ScalarDist = Dist<RatSeries>;

inline bool coeff_is_zero(const ScalarDist& d) { return d.is_zero(); }

/// delta(f) = (i_{z1;z2} - i_{z2;z1}) f for f with poles only at z1 = 0,
/// z2 = 0 and z1 = z2. Only the (z1-z2)-polar part contributes; computed
/// per t-order by rewriting z1 = z2 + u to the polar depth.
inline ScalarDist delta_extract(const RatSeries& s)
{
    ScalarDist out;
    LinForm diff = LinForm::diff(Var::z1, Var::z2);
    for (auto& [order, f] : s.coeffs()) {
        int c = 0;
        for (auto& [form, k] : f.den()) {
            if (form == diff)
                c = k;
            else
                throw BadPoleStructure("pole not at z1=0, z2=0 or z1=z2: " + form.str());
        }
        if (c == 0) continue;

        // pick a scratch slot for u = z1 - z2
        Var u = Var::gamma2;
        for (Var cand : {Var::z3, Var::z4, Var::w, Var::gamma, Var::gamma2}) {
            if (!f.depends_on(cand)) {
                u = cand;
                break;
            }
        }
        int iu = static_cast<int>(u), i1 = static_cast<int>(Var::z1), i2 = static_cast<int>(Var::z2);

        // substitute z1 = z2 + u into the numerator, truncating at u^{c-1}
        Poly polar; // sum over u-powers j < c
        for (auto& [e, coef] : f.num().terms()) {
            int e1 = e[i1];
            ExpVec base = e;
            base[i1] = 0;
            if (e1 >= 0) {
                for (int j = 0; j <= std::min(e1, c - 1); ++j) {
                    ExpVec m = base;
                    m[iu] = static_cast<int16_t>(j);
                    m[i2] = static_cast<int16_t>(m[i2] + e1 - j);
                    polar.add_term(m, coef * binomial(e1, j));
                }
            } else {
                for (int j = 0; j <= c - 1; ++j) {
                    ExpVec m = base;
                    m[iu] = static_cast<int16_t>(j);
                    m[i2] = static_cast<int16_t>(m[i2] + e1 - j);
                    polar.add_term(m, coef * binomial(e1, j));
                }
            }
        }
        // u^j / u^c  ->  pole order c - j  ->  derivative order c - j - 1
        for (int j = 0; j < c; ++j) {
            Poly cj = polar.coeff_of(u, j);
            if (cj.is_zero()) continue;
            out.add(c - j - 1, RatSeries::monomial(RatFun(cj), order, s.trunc()));
        }
    }
    return out;
}

/// Rewrites z1-dependent coefficients via
///   f(z1,z2) d^(n) delta = sum_j (d^(j)_{z1} f)|_{z1=z2} d^(n-j) delta.
/// Coefficients must be regular on the diagonal.
template <class C, class SubstFn>
inline Dist<C> normalize_distribution_impl(const Dist<C>& d, SubstFn&& dp_and_eval)
{
    Dist<C> out;
    for (auto& [n, c] : d.terms)
        for (int j = 0; j <= n; ++j) out.add(n - j, dp_and_eval(c, j));
    return out;
}

inline ScalarDist normalize_distribution(const ScalarDist& d)
{
    return normalize_distribution_impl(d, [](const RatSeries& c, int j) {
        RatSeries g = dp_derivative(c, Var::z1, j);
        for (auto& [k, f] : g.coeffs())
            if (f.den().count(LinForm::diff(Var::z1, Var::z2)))
                throw SingularAtDiagonal("coefficient has a pole at z1=z2");
        return substitute(g, subst_one(Var::z1, LinForm::var(Var::z2)));
    });
}

/// Res_{z1}( z1^m * d ): pairs the distribution against the test monomial.
/// Requires normal form; the result is a function of z2 alone.
inline RatSeries dist_pair(const ScalarDist& d, int m, int trunc)
{
    RatSeries out(trunc);
    for (auto& [n, c] : d.terms) {
        Rat b = binomial(m, n);
        if (qva::is_zero(b)) continue;
        RatSeries term = c * RatSeries(RatFun(Poly(b, exp_of(Var::z2, static_cast<int16_t>(m - n)))), trunc);
        out += term;
    }
    return out;
}

} // namespace qva
