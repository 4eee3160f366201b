#pragma once

#include <map>
#include <optional>
#include <stdexcept>

#include "qva/poly.hpp"

namespace qva {

struct BadPoleStructure : std::runtime_error {
    explicit BadPoleStructure(const std::string& m) : std::runtime_error(m) {}
};
struct SingularSubstitution : std::runtime_error {
    explicit SingularSubstitution(const std::string& m) : std::runtime_error(m) {}
};
struct NotInvertible : std::runtime_error {
    explicit NotInvertible(const std::string& m) : std::runtime_error(m) {}
};

/// Substitution table: entry present means the variable is replaced by the
/// given linear form (which may be zero); absent means untouched.
using Subst = std::array<std::optional<LinForm>, kNumVars>;

inline Subst subst_none() { return Subst{}; }

inline Subst subst_one(Var v, const LinForm& f)
{
    Subst s;
    s[static_cast<int>(v)] = f;
    return s;
}

inline Subst subst_zero(Var v)
{
    Subst s;
    s[static_cast<int>(v)] = LinForm(); // zero form
    return s;
}

inline Subst subst_swap(Var a, Var b)
{
    Subst s;
    s[static_cast<int>(a)] = LinForm::var(b);
    s[static_cast<int>(b)] = LinForm::var(a);
    return s;
}

/// Rational function: Laurent polynomial numerator over a multiset of
/// integer linear-form factors. Pure variable powers are kept in the
/// numerator as negative exponents; only forms in two or more variables
/// are denominator factors. Canonical: forms normalized, numerator shares
/// no form factor with the denominator.
class RatFun {
public:
    RatFun() = default;
    explicit RatFun(const Rat& c) : num_(c) {}
    explicit RatFun(Poly p) : num_(std::move(p)) {}

    static RatFun variable(Var v, int16_t k = 1) { return RatFun(Poly::variable(v, k)); }

    /// p / f^k with a linear form f.
    static RatFun quotient(Poly p, const LinForm& f, int k = 1)
    {
        RatFun r(std::move(p));
        r.mul_den(f, k);
        r.reduce();
        return r;
    }

    const Poly& num() const& { return num_; }
    Poly num() && { return std::move(num_); }
    const std::map<LinForm, int>& den() const& { return den_; }
    std::map<LinForm, int> den() && { return std::move(den_); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    Rat constant_value() const { return num_.constant_value(); }

    bool depends_on(Var v) const
    {
        if (num_.depends_on(v)) return true;
        for (auto& [f, k] : den_)
            if (f[v] != 0) return true;
        return false;
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b)
    {
        RatFun r;
        r.den_ = a.den_;
        for (auto& [f, k] : b.den_) {
            auto it = r.den_.find(f);
            if (it == r.den_.end())
                r.den_[f] = k;
            else if (it->second < k)
                it->second = k;
        }
        Poly na = a.num_, nb = b.num_;
        for (auto& [f, k] : r.den_) {
            int ka = k - a.exp_in_den(f), kb = k - b.exp_in_den(f);
            Poly fp = Poly::from_linform(f);
            for (int i = 0; i < ka; ++i) na *= fp;
            for (int i = 0; i < kb; ++i) nb *= fp;
        }
        r.num_ = na + nb;
        r.reduce();
        return r;
    }

    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

    RatFun operator-() const
    {
        RatFun r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFun operator*(const RatFun& a, const RatFun& b)
    {
        RatFun r;
        r.num_ = a.num_ * b.num_;
        r.den_ = a.den_;
        for (auto& [f, k] : b.den_) r.den_[f] += k;
        r.reduce();
        return r;
    }

    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

    RatFun& scale(const Rat& c)
    {
        num_.scale(c);
        if (num_.is_zero()) den_.clear();
        return *this;
    }
    friend RatFun operator*(const Rat& c, RatFun f) { return f.scale(c); }

    bool operator==(const RatFun& o) const
    {
        // cross multiplication; independent of representation
        Poly l = num_, r = o.num_;
        for (auto& [f, k] : o.den_) {
            int e = k - exp_in_den(f);
            Poly fp = Poly::from_linform(f);
            for (int i = 0; i < e; ++i) l *= fp;
        }
        for (auto& [f, k] : den_) {
            int e = k - o.exp_in_den(f);
            Poly fp = Poly::from_linform(f);
            for (int i = 0; i < e; ++i) r *= fp;
        }
        return l == r;
    }
    bool operator!=(const RatFun& o) const { return !(*this == o); }

    RatFun derivative(Var v) const
    {
        RatFun r(num_.derivative(v));
        r.den_ = den_;
        r.reduce();
        for (auto& [f, k] : den_) {
            if (f[v] == 0) continue;
            RatFun s(num_);
            s.den_ = den_;
            s.den_[f] += 1;
            s.num_.scale(Rat(-k) * Rat(f[v]));
            s.reduce();
            r += s;
        }
        return r;
    }

    /// Divided-power derivative d^(n)/dv^n = (1/n!) d^n/dv^n.
    RatFun dp_derivative(Var v, int n) const
    {
        RatFun r = *this;
        for (int i = 1; i <= n; ++i) {
            r = r.derivative(v);
            r.scale(Rat(1) / Rat(i));
        }
        return r;
    }

    RatFun substitute(const Subst& s) const
    {
        RatFun result;
        for (auto& [e, c] : num_.terms()) {
            RatFun term{Rat(c)};
            ExpVec untouched = exp_zero();
            for (int i = 0; i < kNumVars; ++i) {
                if (e[i] == 0) continue;
                if (!s[i]) {
                    untouched[i] = e[i];
                    continue;
                }
                term *= form_power(*s[i], e[i]);
                if (term.is_zero()) break;
            }
            if (term.is_zero()) continue;
            term *= RatFun(Poly(Rat(1), untouched));
            result += term;
        }
        for (auto& [f, k] : den_) {
            LinForm g = apply_to_form(f, s);
            if (g.is_zero()) throw SingularSubstitution("denominator form vanishes: " + f.str());
            result *= form_power(g, -k);
        }
        return result;
    }

    /// f^e for integer e; negative powers require a unit (monomial times
    /// linear forms times a nonzero rational).
    RatFun pow(int e) const
    {
        if (e == 0) return RatFun(Rat(1));
        RatFun base = e > 0 ? *this : inverse();
        int n = e > 0 ? e : -e;
        RatFun acc(Rat(1));
        for (int i = 0; i < n; ++i) acc *= base;
        return acc;
    }

    /// Multiplicative inverse. The numerator must factor as a rational
    /// multiple of a monomial times linear forms.
    RatFun inverse() const
    {
        if (is_zero()) throw NotInvertible("zero");
        RatFun r(Rat(1));
        for (auto& [f, k] : den_) {
            Poly fp = Poly::from_linform(f);
            for (int i = 0; i < k; ++i) r.num_ *= fp;
        }
        // invert the numerator
        Poly n = num_;
        ExpVec shift = n.support_min();
        ExpVec neg;
        for (int i = 0; i < kNumVars; ++i) neg[i] = static_cast<int16_t>(-shift[i]);
        n = n.shifted(neg); // now honest polynomial part with nonzero constant-or-lead
        r.num_ = r.num_.shifted(neg);
        while (!n.is_constant()) {
            LinForm f = find_linear_factor(n);
            if (f.is_zero()) throw NotInvertible("numerator is not a product of linear forms");
            n = *n.divide_by(f);
            r.mul_den(f, 1);
        }
        Rat c = n.constant_value();
        r.num_.scale(Rat(1) / c);
        r.reduce();
        return r;
    }

    /// Substitutes v = 0 (alias for clarity at call sites).
    RatFun at_zero(Var v) const { return substitute(subst_zero(v)); }

    /// Breaks the value apart for rendering: (numerator, variable powers,
    /// form factors) with all denominator exponents positive.
    struct Parts {
        Poly num;
        std::map<Var, int> var_pows;
        std::map<LinForm, int> forms;
    };
    Parts parts() const
    {
        Parts p;
        ExpVec m = num_.support_min();
        ExpVec neg;
        for (int i = 0; i < kNumVars; ++i) {
            int k = m[i] < 0 ? -m[i] : 0;
            neg[i] = static_cast<int16_t>(k);
            if (k > 0) p.var_pows[static_cast<Var>(i)] = k;
        }
        p.num = num_.shifted(neg);
        p.forms = den_;
        return p;
    }

private:
    Poly num_;
    std::map<LinForm, int> den_;

    int exp_in_den(const LinForm& f) const
    {
        auto it = den_.find(f);
        return it == den_.end() ? 0 : it->second;
    }

    /// Multiplies this by 1/f^k, normalizing the form. Single-variable
    /// forms become Laurent monomial factors of the numerator.
    void mul_den(LinForm f, int k)
    {
        Rat c = f.normalize();
        if (f.is_zero()) throw BadPoleStructure("zero denominator form");
        num_.scale(rat_pow(Rat(1) / c, k));
        if (f.num_vars() == 1) {
            int i = f.leading_index();
            ExpVec e = exp_zero();
            e[i] = static_cast<int16_t>(-k);
            num_ = num_.shifted(e);
        } else {
            den_[f] += k;
        }
    }

    /// L^e as a RatFun; L may be zero (then e must be >= 0; L^0 = 1).
    static RatFun form_power(const LinForm& f, int e)
    {
        if (e == 0) return RatFun(Rat(1));
        if (f.is_zero()) return RatFun(); // 0^e, e>0; e<0 caught by caller context
        if (e > 0) {
            Poly p(Rat(1));
            Poly fp = Poly::from_linform(f);
            for (int i = 0; i < e; ++i) p *= fp;
            return RatFun(std::move(p));
        }
        RatFun r(Rat(1));
        r.mul_den(f, -e);
        return r;
    }

    static LinForm apply_to_form(const LinForm& f, const Subst& s)
    {
        LinForm g;
        for (int i = 0; i < kNumVars; ++i) {
            if (f.c[i] == 0) continue;
            if (s[i])
                g = g.plus(s[i]->scaled(f.c[i]));
            else
                g.c[i] += f.c[i];
        }
        return g;
    }

    void reduce()
    {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        for (auto it = den_.begin(); it != den_.end();) {
            while (it->second > 0) {
                auto q = num_.divide_by(it->first);
                if (!q) break;
                num_ = *q;
                --it->second;
            }
            if (it->second == 0)
                it = den_.erase(it);
            else
                ++it;
        }
    }

    /// Searches for a linear-form factor of a polynomial with small integer
    /// coefficients. Only used to invert unit numerators; returns the zero
    /// form when nothing is found.
    static LinForm find_linear_factor(const Poly& p)
    {
        std::vector<int> vars;
        for (int i = 0; i < kNumVars; ++i)
            if (p.depends_on(static_cast<Var>(i))) vars.push_back(i);
        if (vars.empty()) return LinForm();
        // single variable: v is the only candidate (content already split off)
        constexpr int B = 4;
        std::vector<LinForm> cands;
        for (size_t a = 0; a < vars.size(); ++a) {
            LinForm f;
            f.c[vars[a]] = 1;
            cands.push_back(f);
            for (size_t b = a + 1; b < vars.size(); ++b)
                for (int ca = 1; ca <= B; ++ca)
                    for (int cb = -B; cb <= B; ++cb) {
                        if (cb == 0) continue;
                        LinForm g;
                        g.c[vars[a]] = ca;
                        g.c[vars[b]] = cb;
                        g.normalize();
                        cands.push_back(g);
                        for (size_t d = b + 1; d < vars.size(); ++d)
                            for (int cd = -B; cd <= B; ++cd) {
                                if (cd == 0) continue;
                                LinForm h = g;
                                h.c[vars[d]] = cd;
                                h.normalize();
                                cands.push_back(h);
                            }
                    }
        }
        for (auto& f : cands)
            if (p.divide_by(f)) return f;
        return LinForm();
    }
};

} // namespace qva
