#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qva/rational.hpp"

namespace qva {

/// Fixed universe of formal variables. Every polynomial, rational
/// function and series in the library carries exponents over this set.
enum class Var : int { z1 = 0, z2, z3, z4, w, gamma, gamma2 };

inline constexpr int kNumVars = 7;

inline const char* var_name(Var v)
{
    static const char* names[kNumVars] = {"z1", "z2", "z3", "z4", "w", "gamma", "gamma2"};
    return names[static_cast<int>(v)];
}

inline Var var_from_name(const std::string& s)
{
    for (int i = 0; i < kNumVars; ++i)
        if (s == var_name(static_cast<Var>(i))) return static_cast<Var>(i);
    throw std::invalid_argument("unknown variable: " + s);
}

/// Laurent exponent vector over the variable universe.
using ExpVec = std::array<int16_t, kNumVars>;

inline ExpVec exp_zero()
{
    ExpVec e{};
    e.fill(0);
    return e;
}

inline ExpVec exp_of(Var v, int16_t k = 1)
{
    ExpVec e = exp_zero();
    e[static_cast<int>(v)] = k;
    return e;
}

inline ExpVec exp_add(const ExpVec& a, const ExpVec& b)
{
    ExpVec r;
    for (int i = 0; i < kNumVars; ++i) r[i] = static_cast<int16_t>(a[i] + b[i]);
    return r;
}

inline int exp_total(const ExpVec& e)
{
    int s = 0;
    for (int i = 0; i < kNumVars; ++i) s += e[i];
    return s;
}

/// Graded lexicographic order on exponent vectors: total degree first
/// (descending), then lex on the fixed variable order. Determines all
/// printed output.
struct GradedLex {
    bool operator()(const ExpVec& a, const ExpVec& b) const
    {
        int ta = exp_total(a), tb = exp_total(b);
        if (ta != tb) return ta > tb;
        return a > b;
    }
};

/// Homogeneous integer linear form in the variables, e.g. z1 - z2 or
/// z1 - z2 + gamma. Used as a denominator factor and as a substitution
/// target. Canonical form: content 1, first nonzero coefficient positive.
struct LinForm {
    std::array<int32_t, kNumVars> c{};

    LinForm() { c.fill(0); }

    static LinForm var(Var v)
    {
        LinForm f;
        f.c[static_cast<int>(v)] = 1;
        return f;
    }

    static LinForm diff(Var a, Var b)
    {
        LinForm f;
        f.c[static_cast<int>(a)] += 1;
        f.c[static_cast<int>(b)] -= 1;
        return f;
    }

    int32_t& operator[](Var v) { return c[static_cast<int>(v)]; }
    int32_t operator[](Var v) const { return c[static_cast<int>(v)]; }

    bool is_zero() const
    {
        for (auto x : c)
            if (x != 0) return false;
        return true;
    }

    int num_vars() const
    {
        int n = 0;
        for (auto x : c)
            if (x != 0) ++n;
        return n;
    }

    /// Index of the first variable with a nonzero coefficient, -1 if zero.
    int leading_index() const
    {
        for (int i = 0; i < kNumVars; ++i)
            if (c[i] != 0) return i;
        return -1;
    }

    /// Divides out the content and makes the leading coefficient positive.
    /// Returns the (signed rational) factor removed, so that
    /// old == factor * new.
    Rat normalize()
    {
        int64_t g = 0;
        for (auto x : c) g = std::gcd(g, static_cast<int64_t>(x < 0 ? -x : x));
        if (g == 0) return Rat(1);
        int lead = leading_index();
        int64_t s = c[lead] > 0 ? 1 : -1;
        int64_t f = g * s;
        for (auto& x : c) x = static_cast<int32_t>(x / f);
        return Rat(f);
    }

    LinForm scaled(int32_t k) const
    {
        LinForm f = *this;
        for (auto& x : f.c) x *= k;
        return f;
    }

    LinForm plus(const LinForm& o) const
    {
        LinForm f = *this;
        for (int i = 0; i < kNumVars; ++i) f.c[i] += o.c[i];
        return f;
    }

    bool operator==(const LinForm& o) const { return c == o.c; }
    bool operator<(const LinForm& o) const { return c < o.c; }

    std::string str() const
    {
        std::string s;
        bool first = true;
        for (int i = 0; i < kNumVars; ++i) {
            if (c[i] == 0) continue;
            int32_t k = c[i];
            if (first) {
                if (k == -1)
                    s += "-";
                else if (k != 1)
                    s += std::to_string(k) + "*";
            } else {
                s += k > 0 ? "+" : "-";
                int32_t a = k > 0 ? k : -k;
                if (a != 1) s += std::to_string(a) + "*";
            }
            s += var_name(static_cast<Var>(i));
            first = false;
        }
        return s.empty() ? "0" : s;
    }
};

} // namespace qva
