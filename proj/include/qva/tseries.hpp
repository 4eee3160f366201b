#pragma once

#include <algorithm>
#include <map>

#include "qva/ratfun.hpp"

namespace qva {

inline bool coeff_is_zero(const Rat& c) { return c.is_zero(); }
inline bool coeff_is_zero(const RatFun& c) { return c.is_zero(); }
inline void coeff_scale(Rat& v, const Rat& c) { v *= c; }
inline void coeff_scale(RatFun& v, const Rat& c) { v.scale(c); }
inline Rat coeff_inverse(const Rat& c) { return Rat(1) / c; }
inline RatFun coeff_inverse(const RatFun& c) { return c.inverse(); }

/// Power series in the quantum parameter t, truncated at a fixed order T:
/// orders 0..T are stored exactly, everything above is discarded. The
/// payload C is an exact coefficient ring (Rat or RatFun).
template <class C>
class TSeries {
public:
    TSeries() : trunc_(0) {}
    explicit TSeries(int trunc) : trunc_(trunc) {}
    TSeries(const C& c, int trunc) : trunc_(trunc)
    {
        if (!coeff_is_zero(c)) coef_[0] = c;
    }

    static TSeries monomial(const C& c, int order, int trunc)
    {
        TSeries s(trunc);
        if (order <= trunc && !coeff_is_zero(c)) s.coef_[order] = c;
        return s;
    }

    int trunc() const { return trunc_; }
    const std::map<int, C>& coeffs() const& { return coef_; }
    std::map<int, C> coeffs() && { return std::move(coef_); }
    bool is_zero() const { return coef_.empty(); }

    C at(int order) const
    {
        auto it = coef_.find(order);
        return it == coef_.end() ? C() : it->second;
    }

    void set(int order, const C& c)
    {
        if (order > trunc_) return;
        if (coeff_is_zero(c))
            coef_.erase(order);
        else
            coef_[order] = c;
    }

    void add(int order, const C& c)
    {
        if (order > trunc_ || coeff_is_zero(c)) return;
        auto it = coef_.find(order);
        if (it == coef_.end()) {
            coef_[order] = c;
        } else {
            it->second += c;
            if (coeff_is_zero(it->second)) coef_.erase(it);
        }
    }

    TSeries truncated(int new_trunc) const
    {
        TSeries r(std::min(trunc_, new_trunc));
        for (auto& [k, c] : coef_) {
            if (k > r.trunc_) break;
            r.coef_[k] = c;
        }
        return r;
    }

    friend TSeries operator+(const TSeries& a, const TSeries& b)
    {
        TSeries r = a.truncated(std::min(a.trunc_, b.trunc_));
        for (auto& [k, c] : b.coef_) r.add(k, c);
        return r;
    }
    friend TSeries operator-(const TSeries& a, const TSeries& b) { return a + (-b); }

    TSeries operator-() const
    {
        TSeries r(trunc_);
        for (auto& [k, c] : coef_) r.coef_[k] = -c;
        return r;
    }

    friend TSeries operator*(const TSeries& a, const TSeries& b)
    {
        TSeries r(std::min(a.trunc_, b.trunc_));
        for (auto& [ka, ca] : a.coef_) {
            if (ka > r.trunc_) break;
            for (auto& [kb, cb] : b.coef_) {
                if (ka + kb > r.trunc_) break;
                r.add(ka + kb, ca * cb);
            }
        }
        return r;
    }

    TSeries& operator+=(const TSeries& o) { return *this = *this + o; }
    TSeries& operator-=(const TSeries& o) { return *this = *this - o; }
    TSeries& operator*=(const TSeries& o) { return *this = *this * o; }

    TSeries& scale(const Rat& c)
    {
        if (qva::is_zero(c)) {
            coef_.clear();
            return *this;
        }
        for (auto& [k, v] : coef_) coeff_scale(v, c);
        return *this;
    }

    bool operator==(const TSeries& o) const
    {
        int T = std::min(trunc_, o.trunc_);
        for (int k = 0; k <= T; ++k)
            if (!coeff_is_zero(at(k) - o.at(k))) return false;
        return true;
    }
    bool operator!=(const TSeries& o) const { return !(*this == o); }

    /// Geometric-series inverse; requires an invertible order-0 part.
    TSeries inverse() const
    {
        C s0 = at(0);
        if (coeff_is_zero(s0)) throw NotInvertible("series vanishes at t^0");
        C u = coeff_inverse(s0);
        TSeries hi = *this;
        hi.coef_.erase(0); // S - s0
        TSeries b(trunc_); // -u*(S - s0)
        for (auto& [k, c] : hi.coef_) b.coef_[k] = -(u * c);
        TSeries r(u, trunc_), p(u, trunc_);
        for (int j = 1; j <= trunc_; ++j) {
            p = b * p;
            if (p.is_zero()) break;
            r += p;
        }
        return r;
    }

    TSeries pow(int e) const
    {
        if (e == 0) return TSeries(C(Rat(1)), trunc_);
        TSeries base = e > 0 ? *this : inverse();
        int n = e > 0 ? e : -e;
        TSeries acc(C(Rat(1)), trunc_);
        for (int i = 0; i < n; ++i) acc = acc * base;
        return acc;
    }

    template <class F>
    TSeries map(F&& f) const
    {
        TSeries r(trunc_);
        for (auto& [k, c] : coef_) {
            C v = f(c);
            if (!coeff_is_zero(v)) r.coef_[k] = v;
        }
        return r;
    }

private:
    int trunc_;
    std::map<int, C> coef_;
};

template <class C>
inline bool coeff_is_zero(const TSeries<C>& s) { return s.is_zero(); }

using ScalarSeries = TSeries<Rat>;
using RatSeries = TSeries<RatFun>;

inline RatSeries rs_const(const Rat& c, int T) { return RatSeries(RatFun(c), T); }
inline RatSeries rs_var(Var v, int T) { return RatSeries(RatFun::variable(v), T); }
inline RatSeries rs_t(int T) { return RatSeries::monomial(RatFun(Rat(1)), 1, T); }

inline RatSeries derivative(const RatSeries& s, Var v)
{
    return s.map([&](const RatFun& f) { return f.derivative(v); });
}

inline RatSeries dp_derivative(const RatSeries& s, Var v, int n)
{
    return s.map([&](const RatFun& f) { return f.dp_derivative(v, n); });
}

inline RatSeries substitute(const RatSeries& s, const Subst& sub)
{
    return s.map([&](const RatFun& f) { return f.substitute(sub); });
}

/// d/dv log(s) = s'/s.
inline RatSeries ln_derivative(const RatSeries& s, Var v)
{
    return derivative(s, v) * s.inverse();
}

} // namespace qva
