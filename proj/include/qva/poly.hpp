#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qva/vars.hpp"

namespace qva {

/// Sparse Laurent polynomial with exact rational coefficients over the
/// fixed variable universe. Zero coefficients are never stored.
class Poly {
public:
    using Terms = std::map<ExpVec, Rat, GradedLex>;

    Poly() = default;
    explicit Poly(const Rat& c)
    {
        if (!qva::is_zero(c)) terms_[exp_zero()] = c;
    }
    Poly(const Rat& c, const ExpVec& e)
    {
        if (!qva::is_zero(c)) terms_[e] = c;
    }

    static Poly variable(Var v, int16_t k = 1) { return Poly(Rat(1), exp_of(v, k)); }

    static Poly from_linform(const LinForm& f)
    {
        Poly p;
        for (int i = 0; i < kNumVars; ++i)
            if (f.c[i] != 0) p.add_term(exp_of(static_cast<Var>(i)), Rat(f.c[i]));
        return p;
    }

    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == exp_zero());
    }

    Rat constant_value() const
    {
        auto it = terms_.find(exp_zero());
        return it == terms_.end() ? Rat(0) : it->second;
    }

    /// True when the polynomial is a single term.
    bool is_monomial() const { return terms_.size() == 1; }

    void add_term(const ExpVec& e, const Rat& c)
    {
        if (qva::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_[e] = c;
        } else {
            it->second += c;
            if (qva::is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o)
    {
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        for (auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    Poly operator-() const
    {
        Poly r;
        for (auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        Poly r;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) r.add_term(exp_add(ea, eb), ca * cb);
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly& scale(const Rat& c)
    {
        if (qva::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }
    friend Poly operator*(const Rat& c, Poly p) { return p.scale(c); }

    Poly shifted(const ExpVec& e) const
    {
        Poly r;
        for (auto& [m, c] : terms_) r.terms_[exp_add(m, e)] = c;
        return r;
    }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }

    bool depends_on(Var v) const
    {
        for (auto& [e, c] : terms_)
            if (e[static_cast<int>(v)] != 0) return true;
        return false;
    }

    int min_exp(Var v) const
    {
        int m = 0;
        bool first = true;
        for (auto& [e, c] : terms_) {
            int k = e[static_cast<int>(v)];
            if (first || k < m) m = k;
            first = false;
        }
        return m;
    }

    int max_exp(Var v) const
    {
        int m = 0;
        bool first = true;
        for (auto& [e, c] : terms_) {
            int k = e[static_cast<int>(v)];
            if (first || k > m) m = k;
            first = false;
        }
        return m;
    }

    /// d/dv. Laurent exponents differentiate like ordinary powers.
    Poly derivative(Var v) const
    {
        Poly r;
        int iv = static_cast<int>(v);
        for (auto& [e, c] : terms_) {
            if (e[iv] == 0) continue;
            ExpVec f = e;
            f[iv] = static_cast<int16_t>(f[iv] - 1);
            r.add_term(f, c * Rat(e[iv]));
        }
        return r;
    }

    /// Coefficient of v^k, as a polynomial in the remaining variables.
    Poly coeff_of(Var v, int k) const
    {
        Poly r;
        int iv = static_cast<int>(v);
        for (auto& [e, c] : terms_) {
            if (e[iv] != k) continue;
            ExpVec f = e;
            f[iv] = 0;
            r.add_term(f, c);
        }
        return r;
    }

    /// Exact division by a linear form; nullopt if the form is not a factor.
    /// Laurent inputs are shifted by a monomial unit first.
    std::optional<Poly> divide_by(const LinForm& f) const
    {
        if (is_zero()) return Poly();
        int lead = f.leading_index();
        if (lead < 0) return std::nullopt;
        Var v = static_cast<Var>(lead);

        // clear negative exponents in the variables of the form
        ExpVec shift = exp_zero();
        for (int i = 0; i < kNumVars; ++i) {
            if (f.c[i] == 0) continue;
            int m = min_exp(static_cast<Var>(i));
            if (m < 0) shift[i] = static_cast<int16_t>(-m);
        }
        Poly p = shifted(shift);

        // division by f viewed as a polynomial in v with leading coeff f.c[lead]
        Poly quot;
        Rat lc(f.c[lead]);
        int iv = lead;
        while (!p.is_zero()) {
            // pick the term with the highest v-exponent (tie: map order)
            auto best = p.terms_.begin();
            for (auto it = p.terms_.begin(); it != p.terms_.end(); ++it)
                if (it->first[iv] > best->first[iv]) best = it;
            if (best->first[iv] < 1) return std::nullopt;
            ExpVec qe = best->first;
            qe[iv] = static_cast<int16_t>(qe[iv] - 1);
            Rat qc = best->second / lc;
            Poly qt(qc, qe);
            quot += qt;
            p -= qt * Poly::from_linform(f);
        }
        ExpVec unshift;
        for (int i = 0; i < kNumVars; ++i) unshift[i] = static_cast<int16_t>(-shift[i]);
        return quot.shifted(unshift);
    }

    /// Monomial gcd of the support (componentwise minimum exponent over
    /// variables that appear), paired with no coefficient normalization.
    ExpVec support_min() const
    {
        ExpVec m = exp_zero();
        bool first = true;
        for (auto& [e, c] : terms_) {
            if (first) {
                m = e;
                first = false;
            } else {
                for (int i = 0; i < kNumVars; ++i)
                    if (e[i] < m[i]) m[i] = e[i];
            }
        }
        return m;
    }

private:
    Terms terms_;
};

} // namespace qva
