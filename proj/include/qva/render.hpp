#pragma once

#include <string>

#include "qva/tseries.hpp"

namespace qva {

inline std::string render_monomial_vars(const ExpVec& e)
{
    std::string s;
    for (int i = 0; i < kNumVars; ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += var_name(static_cast<Var>(i));
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

/// Canonical polynomial text: terms in graded-lex order, explicit signs.
inline std::string render(const Poly& p)
{
    if (p.is_zero()) return "0";
    std::string s;
    for (auto& [e, c] : p.terms()) {
        Rat a = c < 0 ? Rat(-c) : c;
        std::string mono = render_monomial_vars(e);
        std::string body;
        if (mono.empty())
            body = rat_str(a);
        else if (a == 1)
            body = mono;
        else
            body = rat_str(a) + "*" + mono;
        if (s.empty())
            s = (c < 0 ? "-" : "") + body;
        else
            s += (c < 0 ? " - " : " + ") + body;
    }
    return s;
}

inline std::string render_den(const RatFun::Parts& parts)
{
    std::string s;
    int n = 0;
    for (auto& [v, k] : parts.var_pows) {
        if (!s.empty()) s += " * ";
        s += var_name(v);
        if (k != 1) s += "^" + std::to_string(k);
        ++n;
    }
    for (auto& [f, k] : parts.forms) {
        if (!s.empty()) s += " * ";
        s += "(" + f.str() + ")";
        if (k != 1) s += "^" + std::to_string(k);
        ++n;
    }
    if (n > 1) s = "(" + s + ")";
    return s;
}

/// `num / (z1^a * z2^b * (z1-z2)^c)` with the numerator in canonical order.
inline std::string render(const RatFun& f)
{
    if (f.is_zero()) return "0";
    auto parts = f.parts();
    std::string num = render(parts.num);
    std::string den = render_den(parts);
    if (den.empty()) return num;
    if (parts.num.terms().size() > 1) num = "(" + num + ")";
    return num + "/" + den;
}

namespace detail {

// one t^k summand, sign split off; merges single-term payloads as
// coeff*t^k*vars/den
inline std::pair<bool, std::string> tseries_term(const RatFun& c, int k)
{
    std::string tpow = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    if (k == 0) return {false, render(c)};
    auto parts = c.parts();
    if (parts.num.terms().size() == 1) {
        auto& [e, a] = *parts.num.terms().begin();
        bool neg = a < 0;
        Rat mag = neg ? Rat(-a) : a;
        std::string s;
        if (mag != 1) s = rat_str(mag) + "*";
        s += tpow;
        std::string mono = render_monomial_vars(e);
        if (!mono.empty()) s += "*" + mono;
        std::string den = render_den(parts);
        if (!den.empty()) s += "/" + den;
        return {neg, s};
    }
    return {false, "(" + render(c) + ")*" + tpow};
}

inline std::pair<bool, std::string> tseries_term(const Rat& c, int k)
{
    std::string tpow = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    bool neg = c < 0;
    Rat mag = neg ? Rat(-c) : c;
    if (k == 0) return {neg, rat_str(mag)};
    if (mag == 1) return {neg, tpow};
    return {neg, rat_str(mag) + "*" + tpow};
}

} // namespace detail

/// `c0 + c1*t + ... + O(t^{T+1})`.
template <class C>
inline std::string render(const TSeries<C>& s)
{
    std::string out;
    for (auto& [k, c] : s.coeffs()) {
        auto [neg, body] = detail::tseries_term(c, k);
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    if (out.empty()) out = "0";
    out += " + O(t^" + std::to_string(s.trunc() + 1) + ")";
    return out;
}

} // namespace qva
