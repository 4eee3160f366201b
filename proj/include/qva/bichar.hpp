#pragma once

#include <memory>

#include "qva/hopf.hpp"

namespace qva {

/// Multiplicative pairing on V x V with values in truncated t-series of
/// rational functions of (z1, z2). A bicharacter is determined by its value
/// sigma on E(1) x E(1): group-likes pair to powers of sigma and everything
/// else follows from the multiplication rule and differentiation, since
/// g_n is a divided-power translate of h = (D E(1)) E(-1).
///
/// Values are computed and cached at the canonical variable pair (z1, z2);
/// use eval_at to move them elsewhere.
class Bicharacter {
public:
    explicit Bicharacter(RatSeries base) : st_(std::make_shared<State>(std::move(base))) {}

    const RatSeries& base() const { return st_->base; }
    int trunc() const { return st_->base.trunc(); }

    RatSeries eval(const VMono& a, const VMono& b) const
    {
        auto key = std::make_pair(a, b);
        auto it = st_->memo.find(key);
        if (it != st_->memo.end()) return it->second;
        RatSeries v = compute(a, b);
        st_->memo.emplace(std::move(key), v);
        return v;
    }

    RatSeries eval(const VElem& a, const VElem& b) const
    {
        RatSeries out(trunc());
        for (auto& [ma, ca] : a.terms())
            for (auto& [mb, cb] : b.terms()) {
                RatSeries v = eval(ma, mb);
                ScalarSeries c = ca * cb;
                for (auto& [k, r] : c.coeffs())
                    out += RatSeries::monomial(RatFun(r), k, trunc()) * v;
            }
        return out;
    }

    RatSeries eval_at(const VMono& a, const VMono& b, const Subst& s) const
    {
        return substitute(eval(a, b), s);
    }

    /// Value at (z1, 0). Runs the same multiplicative recursion entirely on
    /// z2-substituted (denominator-free) Laurent series; substitution
    /// commutes with the coproduct recursion, and avoiding the two-variable
    /// rational arithmetic makes mode computations cheap.
    RatSeries eval_z0(const VMono& a, const VMono& b) const
    {
        auto key = std::make_pair(a, b);
        auto it = st_->memo_z0.find(key);
        if (it != st_->memo_z0.end()) return it->second;
        RatSeries v = compute_z0(a, b);
        st_->memo_z0.emplace(std::move(key), v);
        return v;
    }

    /// Convolution (r*s)(a x b) = sum r(a' x b') s(a'' x b''); on this V it
    /// is the bicharacter with the product base value.
    Bicharacter convolve(const Bicharacter& o) const { return Bicharacter(st_->base * o.st_->base); }

    Bicharacter inverse() const { return Bicharacter(st_->base.inverse()); }

    Bicharacter transpose() const
    {
        return Bicharacter(substitute(st_->base, subst_swap(Var::z1, Var::z2)));
    }

    /// Both variables shifted by gv.
    Bicharacter shifted(Var gv = Var::gamma) const
    {
        Subst s;
        s[static_cast<int>(Var::z1)] = LinForm::var(Var::z1).plus(LinForm::var(gv));
        s[static_cast<int>(Var::z2)] = LinForm::var(Var::z2).plus(LinForm::var(gv));
        return Bicharacter(substitute(st_->base, s));
    }

    /// Braiding bicharacter R = r^{-1} * r^tau.
    Bicharacter braiding() const { return inverse().convolve(transpose()); }

    /// Translation bicharacter R^gamma = r^{-1} * r^gamma.
    Bicharacter translation(Var gv = Var::gamma) const { return inverse().convolve(shifted(gv)); }

    /// Vertex-operator admissibility: all values stay regular at z2 = 0.
    /// For this family it suffices that sigma and 1/sigma can be evaluated
    /// there.
    bool vo_ok() const
    {
        try {
            substitute(st_->base, subst_zero(Var::z2));
            substitute(st_->base.inverse(), subst_zero(Var::z2));
        } catch (const std::exception&) {
            return false;
        }
        return true;
    }

private:
    struct State {
        RatSeries base;
        std::map<std::pair<int, int>, RatSeries> lntab; // (k,l) -> d1^(k) d2^(l) ln base
        std::map<std::pair<VMono, VMono>, RatSeries> memo;
        std::map<std::pair<int, int>, RatSeries> lntab_z0;
        std::map<int, RatSeries> base_pow_z0;
        std::map<std::pair<VMono, VMono>, RatSeries> memo_z0;
        explicit State(RatSeries b) : base(std::move(b)) {}
    };
    std::shared_ptr<State> st_;

    /// Divided-power derivative of ln(base); defined for (k,l) != (0,0).
    RatSeries ln_table(int k, int l) const
    {
        auto key = std::make_pair(k, l);
        auto it = st_->lntab.find(key);
        if (it != st_->lntab.end()) return it->second;
        RatSeries v(trunc());
        if (k >= 1) {
            RatSeries l1 = ln_derivative(st_->base, Var::z1);
            v = dp_derivative(dp_derivative(l1, Var::z1, k - 1), Var::z2, l);
            v.scale(Rat(1) / Rat(k));
        } else {
            RatSeries l2 = ln_derivative(st_->base, Var::z2);
            v = dp_derivative(l2, Var::z2, l - 1);
            v.scale(Rat(1) / Rat(l));
        }
        st_->lntab.emplace(key, v);
        return v;
    }

    static bool single_g(const VMono& m, int& n)
    {
        if (m.lattice != 0 || m.gexp.size() != 1 || m.gexp.begin()->second != 1) return false;
        n = m.gexp.begin()->first;
        return true;
    }

    // splits one generator piece off the monomial: the lowest g power if
    // any, otherwise the whole lattice part
    static std::pair<VMono, VMono> split_head(const VMono& m)
    {
        if (!m.gexp.empty()) {
            int n = m.gexp.begin()->first;
            VMono head = VMono::g(n);
            VMono rest = m;
            rest.gexp[n] -= 1;
            if (rest.gexp[n] == 0) rest.gexp.erase(n);
            return {head, rest};
        }
        return {VMono::E(m.lattice), VMono::one()};
    }

    static int piece_count(const VMono& m)
    {
        int c = m.lattice != 0 ? 1 : 0;
        for (auto& [n, e] : m.gexp) c += e;
        return c;
    }

    RatSeries ln_table_z0(int k, int l) const
    {
        auto key = std::make_pair(k, l);
        auto it = st_->lntab_z0.find(key);
        if (it != st_->lntab_z0.end()) return it->second;
        RatSeries v = substitute(ln_table(k, l), subst_zero(Var::z2));
        st_->lntab_z0.emplace(key, v);
        return v;
    }

    RatSeries base_pow_z0(int e) const
    {
        auto it = st_->base_pow_z0.find(e);
        if (it != st_->base_pow_z0.end()) return it->second;
        RatSeries v = substitute(st_->base.pow(e), subst_zero(Var::z2));
        st_->base_pow_z0.emplace(e, v);
        return v;
    }

    RatSeries compute_z0(const VMono& a, const VMono& b) const
    {
        const int T = trunc();
        if (a.is_one()) return rs_const(counit(b), T);
        if (b.is_one()) return rs_const(counit(a), T);

        int ga = -1, gb = -1;
        bool a_single_g = single_g(a, ga), b_single_g = single_g(b, gb);
        bool a_single = a_single_g || a.is_grouplike();
        bool b_single = b_single_g || b.is_grouplike();

        if (a_single && b_single) {
            if (a_single_g && b_single_g) {
                RatSeries v = ln_table_z0(ga + 1, gb + 1);
                v.scale(Rat(ga + 1) * Rat(gb + 1));
                return v;
            }
            if (a_single_g) {
                RatSeries v = ln_table_z0(ga + 1, 0);
                v.scale(Rat(b.lattice) * Rat(ga + 1));
                return v;
            }
            if (b_single_g) {
                RatSeries v = ln_table_z0(0, gb + 1);
                v.scale(Rat(a.lattice) * Rat(gb + 1));
                return v;
            }
            return base_pow_z0(a.lattice * b.lattice);
        }

        if (a_single) {
            auto [u, v] = split_head(b);
            if (a_single_g) {
                RatSeries out(T);
                if (counit(v) != 0) out += eval_z0(a, u);
                if (counit(u) != 0) out += eval_z0(a, v);
                return out;
            }
            return eval_z0(a, u) * eval_z0(a, v);
        }

        auto [u, v] = split_head(a);
        RatSeries out(T);
        for (auto& [legs, mult] : coproduct_splits(b, 2)) {
            RatSeries w = eval_z0(u, legs[0]) * eval_z0(v, legs[1]);
            w.scale(mult);
            out += w;
        }
        return out;
    }

    RatSeries compute(const VMono& a, const VMono& b) const
    {
        const int T = trunc();
        // vacuum rule
        if (a.is_one()) return rs_const(counit(b), T);
        if (b.is_one()) return rs_const(counit(a), T);

        int ga = -1, gb = -1;
        bool a_single_g = single_g(a, ga), b_single_g = single_g(b, gb);
        bool a_single = a_single_g || a.is_grouplike();
        bool b_single = b_single_g || b.is_grouplike();

        if (a_single && b_single) {
            if (a_single_g && b_single_g) {
                RatSeries v = ln_table(ga + 1, gb + 1);
                v.scale(Rat(ga + 1) * Rat(gb + 1));
                return v;
            }
            if (a_single_g) { // g x E(n)
                RatSeries v = ln_table(ga + 1, 0);
                v.scale(Rat(b.lattice) * Rat(ga + 1));
                return v;
            }
            if (b_single_g) { // E(m) x g
                RatSeries v = ln_table(0, gb + 1);
                v.scale(Rat(a.lattice) * Rat(gb + 1));
                return v;
            }
            return st_->base.pow(a.lattice * b.lattice);
        }

        if (a_single) {
            // pair a single generator against a product via the coproduct
            // of the generator
            auto [u, v] = split_head(b);
            if (a_single_g) {
                RatSeries out(T);
                if (counit(v) != 0) out += eval(a, u); // eps(v) = 1
                if (counit(u) != 0) out += eval(a, v);
                return out;
            }
            return eval(a, u) * eval(a, v); // group-like
        }

        // a is a product: r(uv x b) = sum r(u x b') r(v x b'')
        auto [u, v] = split_head(a);
        RatSeries out(T);
        for (auto& [legs, mult] : coproduct_splits(b, 2)) {
            RatSeries w = eval(u, legs[0]) * eval(v, legs[1]);
            w.scale(mult);
            out += w;
        }
        return out;
    }
};

/// sigma = (z1 - z2) / (1 - t z2/z1): the deformed lattice pairing that
/// produces the Hall-Littlewood vertex operators.
inline RatSeries jing_base(int T)
{
    RatSeries num = RatSeries(RatFun(Poly::variable(Var::z1) - Poly::variable(Var::z2)), T);
    RatSeries den = rs_const(Rat(1), T) -
                    rs_t(T) * RatSeries(RatFun(Poly(Rat(1), exp_add(exp_of(Var::z2), exp_of(Var::z1, -1)))), T);
    return num * den.inverse();
}

/// sigma = z1 - z2: the undeformed rank-1 lattice pairing.
inline RatSeries lattice_base(int T)
{
    return RatSeries(RatFun(Poly::variable(Var::z1) - Poly::variable(Var::z2)), T);
}

inline Bicharacter jing_bicharacter(int T) { return Bicharacter(jing_base(T)); }
inline Bicharacter lattice_bicharacter(int T) { return Bicharacter(lattice_base(T)); }

// ---------------------------------------------------------------------------
// S-maps: a x b -> a' x b' rho(a'' x b'')
// ---------------------------------------------------------------------------

/// Applies S^{rho} to slots (sa, sb) of an N-fold tensor, with the
/// bicharacter values moved from (z1,z2) by the substitution.
template <int N>
inline VTensorT<N, RatSeries> apply_smap(const Bicharacter& rho, const Subst& vars,
                                         const VTensorT<N, RatSeries>& in, int sa, int sb)
{
    VTensorT<N, RatSeries> out;
    for (auto& [key, coef] : in.terms()) {
        for (auto& [la, ma] : coproduct_splits(key[sa], 2))
            for (auto& [lb, mb] : coproduct_splits(key[sb], 2)) {
                RatSeries v = rho.eval_at(la[1], lb[1], vars);
                if (v.is_zero()) continue;
                v.scale(ma * mb);
                auto nk = key;
                nk[sa] = la[0];
                nk[sb] = lb[0];
                out.add(nk, coef * v);
            }
    }
    return out;
}

/// Convenience for pairs at explicit variables.
inline VTensor2 apply_smap2(const Bicharacter& rho, const Subst& vars, const VTensor2& in)
{
    return apply_smap<2>(rho, vars, in, 0, 1);
}

inline Subst subst_pair(Var a, Var b)
{
    Subst s;
    s[static_cast<int>(Var::z1)] = LinForm::var(a);
    s[static_cast<int>(Var::z2)] = LinForm::var(b);
    return s;
}

inline Subst subst_pair(const LinForm& a, const LinForm& b)
{
    Subst s;
    s[static_cast<int>(Var::z1)] = a;
    s[static_cast<int>(Var::z2)] = b;
    return s;
}

} // namespace qva
