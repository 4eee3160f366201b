#pragma once

#include <vector>

#include "qva/tseries.hpp"

namespace qva {

struct UnexpandableFactor : std::runtime_error {
    explicit UnexpandableFactor(const std::string& m) : std::runtime_error(m) {}
};

/// Expansion region: entries ordered from largest to smallest modulus.
/// Entries are usually single variables; a linear form entry (e.g. z1-z2)
/// is allowed when the entry list is a unimodular basis of the variables
/// it involves. Exponents of entry j are reported on the slot of the
/// entry's leading variable.
struct Region {
    std::vector<LinForm> entries;
    int window = 4; // per-entry exponent bound [-window, window]

    static Region of(std::initializer_list<Var> vars, int window)
    {
        Region r;
        for (Var v : vars) r.entries.push_back(LinForm::var(v));
        r.window = window;
        return r;
    }

    static Region of_forms(std::initializer_list<LinForm> forms, int window)
    {
        Region r;
        r.entries.assign(forms);
        r.window = window;
        return r;
    }
};

template <class C>
using WinMap = std::map<ExpVec, C, GradedLex>;

using WinRat = WinMap<Rat>;
using WinSeries = WinMap<ScalarSeries>;

template <class C>
inline void win_add(WinMap<C>& w, const ExpVec& e, const C& c)
{
    if (coeff_is_zero(c)) return;
    auto it = w.find(e);
    if (it == w.end()) {
        w.emplace(e, c);
    } else {
        it->second += c;
        if (coeff_is_zero(it->second)) w.erase(it);
    }
}

namespace detail {

// Rewrites the region's form entries as a substitution onto the slots of
// their leading variables. Returns an empty optional when the entries are
// plain distinct variables (no rewrite needed).
inline std::optional<Subst> region_substitution(const Region& region)
{
    bool plain = true;
    for (auto& f : region.entries)
        if (f.num_vars() != 1 || f.c[f.leading_index()] != 1) plain = false;
    if (plain) return std::nullopt;

    std::vector<int> active; // variable indices touched by entries
    for (auto& f : region.entries)
        for (int i = 0; i < kNumVars; ++i)
            if (f.c[i] != 0) {
                if (std::find(active.begin(), active.end(), i) == active.end())
                    active.push_back(i);
            }
    std::sort(active.begin(), active.end());
    size_t n = region.entries.size();
    if (active.size() != n)
        throw UnexpandableFactor("region form entries do not form a square basis");

    // invert the integer matrix entries x active over the rationals
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(2 * n, Rat(0)));
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < n; ++i) m[j][i] = Rat(region.entries[j].c[active[i]]);
        m[j][n + j] = Rat(1);
    }
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && qva::is_zero(m[piv][col])) ++piv;
        if (piv == n) throw UnexpandableFactor("region form entries are linearly dependent");
        std::swap(m[col], m[piv]);
        Rat d = m[col][col];
        for (auto& x : m[col]) x /= d;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || qva::is_zero(m[r][col])) continue;
            Rat f = m[r][col];
            for (size_t c = 0; c < 2 * n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    // active var i = sum_j inv[i][j] * entry_j ; entry_j sits on its leading slot
    Subst s;
    for (size_t i = 0; i < n; ++i) {
        LinForm comb;
        for (size_t j = 0; j < n; ++j) {
            Rat c = m[i][n + j];
            if (qva::is_zero(c)) continue;
            if (denominator(c) != 1)
                throw UnexpandableFactor("region basis is not integrally invertible");
            int slot = region.entries[j].leading_index();
            comb.c[slot] += static_cast<int32_t>(numerator(c).convert_to<long long>());
        }
        s[active[i]] = comb;
    }
    return s;
}

} // namespace detail

/// Expands a rational function in the given region, keeping every monomial
/// whose entry exponents all lie in [-window, window]. Exact within the
/// window. Variables not listed in the region are passed through unpruned
/// and must not occur in any denominator factor.
inline WinRat expand(const RatFun& fin, const Region& region)
{
    RatFun f = fin;
    std::vector<Var> slots;
    if (auto sub = detail::region_substitution(region)) {
        f = f.substitute(*sub);
        for (auto& e : region.entries) slots.push_back(static_cast<Var>(e.leading_index()));
    } else {
        for (auto& e : region.entries) slots.push_back(static_cast<Var>(e.leading_index()));
    }
    const int L = region.window;

    auto rank_of = [&](int var_idx) -> int {
        for (size_t i = 0; i < slots.size(); ++i)
            if (static_cast<int>(slots[i]) == var_idx) return static_cast<int>(i);
        return -1;
    };

    // factors grouped by the rank of their dominant (earliest-ranked) variable
    std::vector<std::vector<std::pair<LinForm, int>>> groups(slots.size());
    for (auto& [form, c] : f.den()) {
        int best = -1;
        for (int i = 0; i < kNumVars; ++i) {
            if (form.c[i] == 0) continue;
            int r = rank_of(i);
            if (r < 0) throw UnexpandableFactor("denominator variable outside region: " + form.str());
            if (best < 0 || r < best) best = r;
        }
        if (best < 0) throw UnexpandableFactor("constant denominator form");
        groups[best].push_back({form, c});
    }

    WinRat cur;
    for (auto& [e, c] : f.num().terms()) cur.emplace(e, c);

    for (size_t gi = 0; gi < slots.size(); ++gi) {
        int slot_idx = static_cast<int>(slots[gi]);
        for (auto& [form, cexp] : groups[gi]) {
            // 1/form^cexp = sum_j binom(-c,j) a^{-c-j} v^{-c-j} R^j,
            // v the dominant variable, R the remainder of the form
            Rat a(form.c[slot_idx]);
            LinForm rest = form;
            rest.c[slot_idx] = 0;
            Poly rest_poly = Poly::from_linform(rest);
            std::vector<Poly> rest_pows{Poly(Rat(1))};

            WinRat next;
            for (auto& [e, coef] : cur) {
                int budget = e[slot_idx] - cexp + L; // keep v-exponent >= -L
                for (int j = 0; j <= budget; ++j) {
                    if (rest.is_zero() && j > 0) break;
                    while (static_cast<int>(rest_pows.size()) <= j)
                        rest_pows.push_back(rest_pows.back() * rest_poly);
                    Rat factor = coef * binomial(-cexp, j) * rat_pow(Rat(1) / a, cexp + j);
                    ExpVec base = e;
                    base[slot_idx] = static_cast<int16_t>(base[slot_idx] - cexp - j);
                    for (auto& [re, rc] : rest_pows[j].terms())
                        win_add(next, exp_add(base, re), Rat(factor * rc));
                }
            }
            cur = std::move(next);
        }
        // exponents on this slot are now final
        for (auto it = cur.begin(); it != cur.end();) {
            int e = it->first[slot_idx];
            if (e < -L || e > L)
                it = cur.erase(it);
            else
                ++it;
        }
    }
    return cur;
}

inline WinSeries expand(const RatSeries& s, const Region& region)
{
    WinSeries out;
    for (auto& [k, f] : s.coeffs()) {
        for (auto& [e, c] : expand(f, region))
            win_add(out, e, ScalarSeries::monomial(c, k, s.trunc()));
    }
    return out;
}

/// Coefficient of v^-1 in the expansion where v is the largest variable:
/// every denominator factor containing v is expanded with v dominant, the
/// others stay closed. Exact, returns a rational function in the remaining
/// variables.
inline RatFun residue(const RatFun& f, Var v)
{
    int iv = static_cast<int>(v);
    RatFun closed(Rat(1));
    std::vector<std::pair<LinForm, int>> vfactors;
    for (auto& [form, c] : f.den()) {
        if (form.c[iv] != 0)
            vfactors.push_back({form, c});
        else
            closed *= RatFun::quotient(Poly(Rat(1)), form, c);
    }

    WinRat cur;
    for (auto& [e, c] : f.num().terms()) cur.emplace(e, c);
    for (auto& [form, cexp] : vfactors) {
        Rat a(form.c[iv]);
        LinForm rest = form;
        rest.c[iv] = 0;
        Poly rest_poly = Poly::from_linform(rest);
        std::vector<Poly> rest_pows{Poly(Rat(1))};
        WinRat next;
        for (auto& [e, coef] : cur) {
            int budget = e[iv] - cexp + 1; // keep v-exponent >= -1
            for (int j = 0; j <= budget; ++j) {
                if (rest.is_zero() && j > 0) break;
                while (static_cast<int>(rest_pows.size()) <= j)
                    rest_pows.push_back(rest_pows.back() * rest_poly);
                Rat factor = coef * binomial(-cexp, j) * rat_pow(Rat(1) / a, cexp + j);
                ExpVec base = e;
                base[iv] = static_cast<int16_t>(base[iv] - cexp - j);
                for (auto& [re, rc] : rest_pows[j].terms())
                    win_add(next, exp_add(base, re), Rat(factor * rc));
            }
        }
        cur = std::move(next);
    }

    Poly res;
    for (auto& [e, c] : cur) {
        if (e[iv] != -1) continue;
        ExpVec r = e;
        r[iv] = 0;
        res.add_term(r, c);
    }
    return RatFun(res) * closed;
}

inline RatSeries residue(const RatSeries& s, Var v)
{
    return s.map([&](const RatFun& f) { return residue(f, v); });
}

/// Partial region expansion: only the listed (small) variables are
/// expanded, every other variable is treated as infinitely large and its
/// denominator content stays closed. A factor whose large part vanishes is
/// expanded among the small variables by the region order. The result maps
/// small-exponent vectors inside the window to closed rational
/// coefficients in the remaining variables.
inline std::map<ExpVec, RatFun, GradedLex> expand_partial(const RatFun& f,
                                                          const std::vector<Var>& smalls,
                                                          int window)
{
    auto is_small = [&](int i) {
        for (Var v : smalls)
            if (static_cast<int>(v) == i) return true;
        return false;
    };
    auto small_rank = [&](const LinForm& form) { // earliest small var present, -1 if none
        for (size_t r = 0; r < smalls.size(); ++r)
            if (form[smalls[r]] != 0) return static_cast<int>(r);
        return -1;
    };

    using Acc = std::map<ExpVec, RatFun, GradedLex>;
    Acc acc;
    for (auto& [e, c] : f.num().terms()) {
        ExpVec se = exp_zero(), be = exp_zero();
        for (int i = 0; i < kNumVars; ++i)
            (is_small(i) ? se : be)[i] = e[i];
        RatFun coef(Poly(c, be));
        auto it = acc.find(se);
        if (it == acc.end())
            acc.emplace(se, coef);
        else
            it->second += coef;
    }

    // factors with a closed large part first (they only raise small powers),
    // then pure-small factors by region rank
    std::vector<std::pair<LinForm, int>> mixed, pure[4];
    for (auto& [form, c] : f.den()) {
        LinForm big = form, small_part = form;
        for (int i = 0; i < kNumVars; ++i)
            (is_small(i) ? big.c[i] : small_part.c[i]) = 0;
        if (small_part.is_zero()) {
            // no small content: closed factor
            mixed.push_back({form, -c}); // marker: multiply straight in
        } else if (big.is_zero()) {
            int r = small_rank(form);
            pure[r].push_back({form, c});
        } else {
            mixed.push_back({form, c});
        }
    }

    for (auto& [form, c] : mixed) {
        if (c < 0) { // closed factor
            RatFun factor = RatFun::quotient(Poly(Rat(1)), form, -c);
            for (auto& [e, g] : acc) g *= factor;
            continue;
        }
        LinForm big = form, small_part = form;
        for (int i = 0; i < kNumVars; ++i)
            (is_small(i) ? big.c[i] : small_part.c[i]) = 0;
        Poly sp = Poly::from_linform(small_part);
        std::vector<Poly> spow{Poly(Rat(1))};
        Acc next;
        for (auto& [e, g] : acc) {
            int have = 0;
            for (Var v : smalls) have += e[static_cast<int>(v)];
            for (int j = 0; have + j <= window * static_cast<int>(smalls.size()); ++j) {
                while (static_cast<int>(spow.size()) <= j) spow.push_back(spow.back() * sp);
                // 1/(B + S)^c = sum_j binom(-c,j) S^j B^{-c-j}
                RatFun factor = g * RatFun::quotient(Poly(binomial(-c, j)), big, c + j);
                if (factor.is_zero()) continue;
                for (auto& [se2, c2] : spow[j].terms()) {
                    ExpVec e2 = exp_add(e, se2);
                    bool ok = true;
                    for (Var v : smalls)
                        if (e2[static_cast<int>(v)] > window) ok = false;
                    if (!ok) continue;
                    RatFun add = Rat(c2) * factor;
                    auto it = next.find(e2);
                    if (it == next.end())
                        next.emplace(e2, add);
                    else
                        it->second += add;
                }
            }
        }
        acc = std::move(next);
    }

    for (int r = 0; r < 4; ++r) {
        for (auto& [form, c] : pure[r]) {
            Var dom = smalls[r];
            Rat a(form[dom]);
            LinForm rest = form;
            rest[dom] = 0;
            Poly rp = Poly::from_linform(rest);
            std::vector<Poly> rpow{Poly(Rat(1))};
            Acc next;
            for (auto& [e, g] : acc) {
                int budget = e[static_cast<int>(dom)] - c + window;
                for (int j = 0; j <= budget; ++j) {
                    if (rest.is_zero() && j > 0) break;
                    while (static_cast<int>(rpow.size()) <= j) rpow.push_back(rpow.back() * rp);
                    Rat factor = binomial(-c, j) * rat_pow(Rat(1) / a, c + j);
                    ExpVec base = e;
                    base[static_cast<int>(dom)] =
                        static_cast<int16_t>(base[static_cast<int>(dom)] - c - j);
                    for (auto& [re, rc] : rpow[j].terms()) {
                        ExpVec e2 = exp_add(base, re);
                        RatFun add = Rat(factor * rc) * g;
                        if (add.is_zero()) continue;
                        auto it = next.find(e2);
                        if (it == next.end())
                            next.emplace(e2, add);
                        else
                            it->second += add;
                    }
                }
            }
            acc = std::move(next);
        }
        // exponents on this small variable are final
        if (r < static_cast<int>(smalls.size())) {
            int iv = static_cast<int>(smalls[r]);
            for (auto it = acc.begin(); it != acc.end();) {
                if (it->first[iv] < -window || it->first[iv] > window)
                    it = acc.erase(it);
                else
                    ++it;
            }
        }
    }
    for (auto it = acc.begin(); it != acc.end();) {
        bool keep = !it->second.is_zero();
        for (Var v : smalls)
            if (it->first[static_cast<int>(v)] < -window || it->first[static_cast<int>(v)] > window)
                keep = false;
        it = keep ? std::next(it) : acc.erase(it);
    }
    return acc;
}

inline std::map<ExpVec, RatSeries, GradedLex> expand_partial(const RatSeries& s,
                                                             const std::vector<Var>& smalls,
                                                             int window)
{
    std::map<ExpVec, RatSeries, GradedLex> out;
    for (auto& [o, f] : s.coeffs())
        for (auto& [e, g] : expand_partial(f, smalls, window)) {
            auto it = out.find(e);
            if (it == out.end()) {
                RatSeries v(s.trunc());
                v.set(o, g);
                out.emplace(e, std::move(v));
            } else {
                it->second.add(o, g);
            }
        }
    return out;
}

/// Series expansion in one designated small variable, to order K: every
/// denominator factor containing it is expanded geometrically against its
/// remaining (nonzero) part, which stays closed. Numerators must not carry
/// negative powers of the small variable.
inline std::map<int, RatFun> expand_in_small(const RatFun& f, Var small, int K)
{
    int iv = static_cast<int>(small);
    std::map<int, RatFun> acc;
    for (auto& [e, c] : f.num().terms()) {
        if (e[iv] < 0) throw UnexpandableFactor("negative small-variable power in numerator");
        ExpVec rest = e;
        rest[iv] = 0;
        if (e[iv] <= K) {
            auto it = acc.find(e[iv]);
            RatFun add(Poly(c, rest));
            if (it == acc.end())
                acc[e[iv]] = add;
            else
                it->second += add;
        }
    }
    for (auto& [form, cexp] : f.den()) {
        if (form[small] == 0) {
            RatFun factor = RatFun::quotient(Poly(Rat(1)), form, cexp);
            for (auto& [k, g] : acc) g *= factor;
            continue;
        }
        LinForm big = form;
        big[small] = 0;
        if (big.is_zero()) throw UnexpandableFactor("pure small-variable pole: " + form.str());
        Rat cs(form[small]);
        // 1/form^c = sum_j binom(-c,j) cs^j small^j / big^{c+j}
        std::map<int, RatFun> next;
        for (auto& [k, g] : acc)
            for (int j = 0; k + j <= K; ++j) {
                RatFun term = g * RatFun::quotient(Poly(binomial(-cexp, j) * rat_pow(cs, j)), big,
                                                   cexp + j);
                if (term.is_zero()) continue;
                auto it = next.find(k + j);
                if (it == next.end())
                    next[k + j] = term;
                else
                    it->second += term;
            }
        acc = std::move(next);
    }
    for (auto it = acc.begin(); it != acc.end();)
        it = it->second.is_zero() ? acc.erase(it) : std::next(it);
    return acc;
}

/// Truncates a series-valued rational function to small-variable order K,
/// reassembling the expansion into explicit powers.
inline RatSeries small_truncate(const RatSeries& s, Var small, int K)
{
    RatSeries out(s.trunc());
    for (auto& [o, f] : s.coeffs())
        for (auto& [k, g] : expand_in_small(f, small, K)) {
            RatFun shifted = g * RatFun(Poly(Rat(1), exp_of(small, static_cast<int16_t>(k))));
            out.add(o, shifted);
        }
    return out;
}

} // namespace qva
