#pragma once

#include "qva/qva.hpp"

namespace qva {

/// Windowed V-valued Laurent expansion: exponent vector -> state.
using VWin = std::map<ExpVec, VElem, GradedLex>;

inline void vwin_add(VWin& w, const ExpVec& e, const VElem& v)
{
    if (v.is_zero()) return;
    auto it = w.find(e);
    if (it == w.end()) {
        w.emplace(e, v);
    } else {
        it->second += v;
        if (it->second.is_zero()) w.erase(it);
    }
}

inline VElem velem_scale_series(const VElem& v, const ScalarSeries& s)
{
    VElem r;
    for (auto& [m, c] : v.terms()) r.add(m, c * s);
    return r;
}

inline VElem velem_trunc(const VElem& v, int tmax)
{
    VElem r;
    for (auto& [m, c] : v.terms()) {
        ScalarSeries s = c.truncated(tmax);
        r.add(m, s);
    }
    return r;
}

inline VWin expand_vvalued(const VValued& x, const Region& rg)
{
    VWin out;
    for (auto& [m, s] : x.terms())
        for (auto& [e, sc] : expand(s, rg)) vwin_add(out, e, VElem(m, sc));
    return out;
}

inline bool exp_in_box(const ExpVec& e, int box)
{
    for (int i = 0; i < kNumVars; ++i)
        if (e[i] < -box || e[i] > box) return false;
    return true;
}

/// Product with a scalar window; exponents add. Terms outside the
/// symmetric exponent box are dropped (the comparisons never read them).
inline VWin vwin_mul(const VWin& a, const WinRat& s, int shift_var = -1, int shift = 0,
                     int box = 1 << 12)
{
    VWin out;
    for (auto& [ea, va] : a)
        for (auto& [es, c] : s) {
            ExpVec e = exp_add(ea, es);
            if (shift_var >= 0) e[shift_var] = static_cast<int16_t>(e[shift_var] + shift);
            if (!exp_in_box(e, box)) continue;
            VElem v = va;
            v.scale_rat(c);
            vwin_add(out, e, v);
        }
    return out;
}

inline VWin vwin_mul_series(const VWin& a, const WinSeries& s, int box = 1 << 12)
{
    VWin out;
    for (auto& [ea, va] : a)
        for (auto& [es, c] : s) {
            ExpVec e = exp_add(ea, es);
            if (!exp_in_box(e, box)) continue;
            vwin_add(out, e, velem_scale_series(va, c));
        }
    return out;
}

inline VWin vwin_sub(VWin a, const VWin& b)
{
    for (auto& [e, v] : b) vwin_add(a, e, -v);
    return a;
}

/// Compares two windows on the box |e_v| <= L over the listed variables
/// (all other exponents must vanish), modulo t^{tmax+1}. Weight cap W.
inline bool vwin_agree(const VWin& x, const VWin& y, std::initializer_list<Var> vars, int L,
                       int tmax, int W, std::string* witness = nullptr)
{
    auto in_box = [&](const ExpVec& e) {
        for (int i = 0; i < kNumVars; ++i) {
            bool active = false;
            for (Var v : vars)
                if (static_cast<int>(v) == i) active = true;
            if (active && (e[i] < -L || e[i] > L)) return false;
            if (!active && e[i] != 0) return false;
        }
        return true;
    };
    auto get = [&](const VWin& w, const ExpVec& e) {
        auto it = w.find(e);
        return it == w.end() ? VElem() : velem_trunc(it->second.weight_truncated(W), tmax);
    };
    std::vector<ExpVec> keys;
    for (auto& [e, v] : x)
        if (in_box(e)) keys.push_back(e);
    for (auto& [e, v] : y)
        if (in_box(e) && x.find(e) == x.end()) keys.push_back(e);
    for (auto& e : keys) {
        if (get(x, e) != get(y, e)) {
            if (witness) {
                *witness = "mismatch at";
                for (int i = 0; i < kNumVars; ++i)
                    if (e[i] != 0)
                        *witness += std::string(" ") + var_name(static_cast<Var>(i)) + "^" +
                                    std::to_string(e[i]);
            }
            return false;
        }
    }
    return true;
}

/// Y(a,v1) Y(b,v2) c with both exponent windows [-B, B].
inline VWin yy_window(const VertexAlgebra& V, const VElem& a, const VElem& b, const VElem& c,
                      Var v1, Var v2, int B)
{
    const int gcap = V.spec().weight_cap;
    VWin out;
    for (auto& [k2, inner] : V.y_window(b, c, -B, B, gcap))
        for (auto& [k1, term] : V.y_window(a, inner, -B, B, gcap)) {
            ExpVec e = exp_of(v1, static_cast<int16_t>(k1));
            e[static_cast<int>(v2)] = static_cast<int16_t>(k2);
            vwin_add(out, e, term);
        }
    return out;
}

/// (z1-z2)^n expanded with `big` dominant, reported on (z1, z2) slots.
inline WinRat diff_pow_win(int n, Var big, Var small, int B)
{
    RatFun f(Poly(Rat(1)));
    LinForm d = LinForm::diff(Var::z1, Var::z2);
    if (n >= 0) {
        Poly acc(Rat(1)), dp = Poly::from_linform(d);
        for (int i = 0; i < n; ++i) acc *= dp;
        f = RatFun(acc);
    } else {
        f = RatFun::quotient(Poly(Rat(1)), d, -n);
    }
    return expand(f, Region::of({big, small}, B));
}

/// The braided reordering Y_{z2}(1 x Y_{z1}) i_{z2;z1} S^{(tau),12}(b x a x c),
/// windowed at [-B, B]; with `braided` false the plain product b(z2) a(z1) c.
inline VWin reordered_product(const VertexAlgebra& V, const VElem& a, const VElem& b,
                              const VElem& c, int B, bool braided)
{
    const int T = V.trunc();
    VWin total;
    if (!braided) {
        return yy_window(V, b, a, c, Var::z2, Var::z1, B);
    }
    VTensor2 in;
    for (auto& [mb, cb] : b.terms())
        for (auto& [ma, ca] : a.terms()) in.add({mb, ma}, VertexAlgebra::coeff_series(cb * ca, T));
    VTensor2 braid = apply_smap2(V.braiding(), subst_swap(Var::z1, Var::z2), in);
    for (auto& [key, coef] : braid.terms()) {
        WinSeries w = expand(coef, Region::of({Var::z2, Var::z1}, B));
        if (w.empty()) continue;
        VWin comp = yy_window(V, v_mono(key[0], T), v_mono(key[1], T), c, Var::z2, Var::z1, B);
        total = [&] {
            VWin t = std::move(total);
            for (auto& [e, v] : vwin_mul_series(comp, w)) vwin_add(t, e, v);
            return t;
        }();
    }
    return total;
}

/// i_{z2;z3}-expanded translation legs S^{(z2)}_{z3,0}(a x b), as tensor
/// terms with scalar windows in (z2, z3).
inline std::vector<std::tuple<VMono, VMono, WinSeries>>
translation_legs(const VertexAlgebra& V, const VElem& a, const VElem& b, int B)
{
    const int T = V.trunc();
    Subst move;
    move[static_cast<int>(Var::z1)] = LinForm::var(Var::z3);
    move[static_cast<int>(Var::z2)] = LinForm();
    move[static_cast<int>(Var::gamma)] = LinForm::var(Var::z2);
    VTensor2 in;
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) in.add({ma, mb}, VertexAlgebra::coeff_series(ca * cb, T));
    VTensor2 tr = apply_smap2(V.translation(), move, in);
    std::vector<std::tuple<VMono, VMono, WinSeries>> out;
    for (auto& [key, coef] : tr.terms())
        out.push_back({key[0], key[1], expand(coef, Region::of({Var::z2, Var::z3}, B))});
    return out;
}

/// Y_{z2}(Y_{z3} x 1)(u x v x c) windowed: the iterate composition.
inline VWin iterate_product(const VertexAlgebra& V, const VElem& u, const VElem& v,
                            const VElem& c, int B)
{
    const int gcap = V.spec().weight_cap;
    VWin out;
    for (auto& [k3, inner] : V.y_window(u, v, -B, B, gcap))
        for (auto& [k2, term] : V.y_window(inner, c, -B, B, gcap)) {
            ExpVec e = exp_of(Var::z2, static_cast<int16_t>(k2));
            e[static_cast<int>(Var::z3)] = static_cast<int16_t>(k3);
            vwin_add(out, e, term);
        }
    return out;
}

/// RHS composition of the associativity-type identities:
/// Y_{z2}(Y_{z3} x 1) i_{z2;z3}(S^{(z2)}_{z3,0}(a x b) x c), windowed.
inline VWin translated_iterate(const VertexAlgebra& V, const VElem& a, const VElem& b,
                               const VElem& c, int B, bool with_translation = true)
{
    const int T = V.trunc();
    VWin total;
    if (!with_translation) return iterate_product(V, a, b, c, B);
    for (auto& [u, v, w] : translation_legs(V, a, b, B)) {
        if (w.empty()) continue;
        VWin comp = iterate_product(V, v_mono(u, T), v_mono(v, T), c, B);
        for (auto& [e, val] : vwin_mul_series(comp, w)) vwin_add(total, e, val);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Identity checkers
// ---------------------------------------------------------------------------

/// The three expansions of X_{z1,z2,0}: in |z1|>|z2| it is the product of
/// fields, in |z2|>|z1| the braided reordering, and in |z2|>|z3| after
/// z1 = z2+z3 the translated iterate.
inline bool expansions_of_x_check(const VertexAlgebra& V, const VElem& a, const VElem& b,
                                  const VElem& c, int L, std::string* witness = nullptr)
{
    const int B = 3 * L + V.trunc() + 10, W = V.spec().weight_cap, T = V.trunc();
    VValued x3 = V.xn({a, b, c}, {Var::z1, Var::z2, std::nullopt});

    VWin lhs1 = expand_vvalued(x3, Region::of({Var::z1, Var::z2}, L));
    VWin rhs1 = yy_window(V, a, b, c, Var::z1, Var::z2, L);
    if (!vwin_agree(lhs1, rhs1, {Var::z1, Var::z2}, L, T, W, witness)) return false;

    VWin lhs2 = expand_vvalued(x3, Region::of({Var::z2, Var::z1}, L));
    VWin rhs2 = reordered_product(V, a, b, c, B, true);
    if (!vwin_agree(lhs2, rhs2, {Var::z1, Var::z2}, L, T, W, witness)) return false;

    VValued shifted = VertexAlgebra::substitute_v(
        x3, subst_one(Var::z1, LinForm::var(Var::z2).plus(LinForm::var(Var::z3))));
    VWin lhs3 = expand_vvalued(shifted, Region::of({Var::z2, Var::z3}, L));
    VWin rhs3 = translated_iterate(V, a, b, c, B);
    return vwin_agree(lhs3, rhs3, {Var::z2, Var::z3}, L, T, W, witness);
}

/// Braided (or plain) Jacobi identity on the window box.
inline bool jacobi_check(const VertexAlgebra& V, const VElem& a, const VElem& b, const VElem& c,
                         int L, bool braided, std::string* witness = nullptr)
{
    const int B = 3 * L + V.trunc() + 10, W = V.spec().weight_cap, T = V.trunc();
    const int i3 = static_cast<int>(Var::z3);

    VWin comp1 = yy_window(V, a, b, c, Var::z1, Var::z2, B);
    VWin comp2 = reordered_product(V, a, b, c, B, braided);
    VWin rhs_comp = translated_iterate(V, a, b, c, B, braided);

    VWin lhs, rhs;
    for (int n = -L - 1; n <= L - 1; ++n) {
        WinRat d12 = diff_pow_win(n, Var::z1, Var::z2, B);
        WinRat d21 = diff_pow_win(n, Var::z2, Var::z1, B);
        for (auto& [e, v] : vwin_mul(comp1, d12, i3, -n - 1, L)) vwin_add(lhs, e, v);
        for (auto& [e, v] : vwin_mul(comp2, d21, i3, -n - 1, L)) vwin_add(lhs, e, -v);
    }
    for (int n = -L; n <= L; ++n) {
        // z1^n (z2+z3)^{-n-1}
        RatFun f;
        int m = -n - 1;
        LinForm s = LinForm::var(Var::z2).plus(LinForm::var(Var::z3));
        if (m >= 0) {
            Poly acc(Rat(1)), sp = Poly::from_linform(s);
            for (int i = 0; i < m; ++i) acc *= sp;
            f = RatFun(acc);
        } else {
            f = RatFun::quotient(Poly(Rat(1)), s, -m);
        }
        WinRat dw = expand(f, Region::of({Var::z2, Var::z3}, B));
        for (auto& [e, v] : vwin_mul(rhs_comp, dw, static_cast<int>(Var::z1), n, L)) vwin_add(rhs, e, v);
    }
    return vwin_agree(lhs, rhs, {Var::z1, Var::z2, Var::z3}, L, T, W, witness);
}

/// Braided Borcherds identity for F = (z1-z2)^n.
inline bool borcherds_check(const VertexAlgebra& V, const VElem& a, const VElem& b, const VElem& c,
                            int n, int L, std::string* witness = nullptr)
{
    const int B = 3 * L + V.trunc() + 10 + (n < 0 ? -n : n), W = V.spec().weight_cap, T = V.trunc();

    VWin comp1 = yy_window(V, a, b, c, Var::z1, Var::z2, B);
    VWin comp2 = reordered_product(V, a, b, c, B, true);
    const int slice_box = std::max(L, (n < 0 ? -n : n) + 1);
    VWin lhs_all = vwin_sub(vwin_mul(comp1, diff_pow_win(n, Var::z1, Var::z2, B), -1, 0, slice_box),
                            vwin_mul(comp2, diff_pow_win(n, Var::z2, Var::z1, B), -1, 0, slice_box));
    // Res_z1: the z1^{-1} slice
    VWin lhs;
    for (auto& [e, v] : lhs_all) {
        if (e[0] != -1) continue;
        ExpVec r = e;
        r[0] = 0;
        vwin_add(lhs, r, v);
    }

    // Res_z3 of the translated iterate times z3^n (F(z2+z3, z2) = z3^n)
    VWin rhs_all = translated_iterate(V, a, b, c, B);
    VWin rhs;
    for (auto& [e, v] : rhs_all) {
        if (e[static_cast<int>(Var::z3)] != -1 - n) continue;
        ExpVec r = e;
        r[static_cast<int>(Var::z3)] = 0;
        vwin_add(rhs, r, v);
    }
    return vwin_agree(lhs, rhs, {Var::z2}, L, T, W, witness);
}

/// Weak associativity: minimal N <= nmax with
/// (z2+z3)^N i_{z3;z2} a(z2+z3) b(z2) c = (z2+z3)^N (translated iterate)
/// modulo t^{k+1}; returns -1 when none works.
inline int weak_associativity_order(const VertexAlgebra& V, const VElem& a, const VElem& b,
                                    const VElem& c, int k, int L, int nmax = 8)
{
    const int B = 3 * L + V.trunc() + 10 + nmax, W = V.spec().weight_cap;

    // a(z2+z3) b(z2) c: substitute z1 -> z2+z3 with z3 dominant
    VWin comp1 = yy_window(V, a, b, c, Var::z1, Var::z2, B);
    VWin lhs0;
    for (auto& [e, v] : comp1) {
        int p = e[0];
        RatFun f;
        LinForm s = LinForm::var(Var::z2).plus(LinForm::var(Var::z3));
        if (p >= 0) {
            Poly acc(Rat(1)), sp = Poly::from_linform(s);
            for (int i = 0; i < p; ++i) acc *= sp;
            f = RatFun(acc);
        } else {
            f = RatFun::quotient(Poly(Rat(1)), s, -p);
        }
        WinRat w = expand(f, Region::of({Var::z3, Var::z2}, B));
        ExpVec base = e;
        base[0] = 0;
        for (auto& [es, cc] : w) {
            VElem vv = v;
            vv.scale_rat(cc);
            vwin_add(lhs0, exp_add(base, es), vv);
        }
    }
    VWin rhs0 = translated_iterate(V, a, b, c, B);

    Poly sp = Poly::from_linform(LinForm::var(Var::z2).plus(LinForm::var(Var::z3)));
    Poly acc(Rat(1));
    for (int N = 0; N <= nmax; ++N) {
        WinRat w;
        for (auto& [e, cc] : acc.terms()) w.emplace(e, cc);
        VWin lhs = vwin_mul(lhs0, w, -1, 0, L), rhs = vwin_mul(rhs0, w, -1, 0, L);
        if (vwin_agree(lhs, rhs, {Var::z2, Var::z3}, L, k, W)) return N;
        acc *= sp;
    }
    return -1;
}

/// Skewsymmetry: e^{z1 D} Y_{z2-z1} S^{(z1)}_{z2-z1,0} S^{(tau)}_{z2,z1}(b x a)
/// equals X_{z1,z2}(a x b) exactly.
inline bool skewsymmetry_check(const VertexAlgebra& V, const VElem& a, const VElem& b,
                               std::string* witness = nullptr)
{
    const int T = V.trunc(), W = V.spec().weight_cap;

    VTensor2 in;
    for (auto& [mb, cb] : b.terms())
        for (auto& [ma, ca] : a.terms()) in.add({mb, ma}, VertexAlgebra::coeff_series(cb * ca, T));
    VTensor2 braid = apply_smap2(V.braiding(), subst_swap(Var::z1, Var::z2), in);

    // the x_from_y pipeline with the roles of z1 and z2 exchanged
    Subst move;
    move[static_cast<int>(Var::z1)] = LinForm::diff(Var::z2, Var::z1);
    move[static_cast<int>(Var::z2)] = LinForm();
    move[static_cast<int>(Var::gamma)] = LinForm::var(Var::z1);
    Subst w_to_diff = subst_one(Var::w, LinForm::diff(Var::z2, Var::z1));

    VValued out;
    for (auto& [key, coef] : braid.terms()) {
        VTensor2 single;
        single.add(key, coef);
        VTensor2 tr = apply_smap2(V.translation(), move, single);
        for (auto& [k2, c2] : tr.terms()) {
            VValued y = V.y_closed(v_mono(k2[0], T), v_mono(k2[1], T), Var::w);
            for (auto& [m, c] : y.terms()) {
                RatSeries cc = substitute(c, w_to_diff) * c2;
                VValued shifted = exp_zd_g(v_mono(m, T), Var::z1, W, T);
                for (auto& [sm, sc] : shifted.terms()) out.add(sm, sc * cc);
            }
        }
    }
    bool ok = weight_filter(out, W) == V.x2(a, b);
    if (!ok && witness) *witness = "skewsymmetry mismatch";
    return ok;
}

/// a(z)_(n) b(z) via the translation-map mode formula, applied to c.
inline VValued field_nproduct_via_modes(const VertexAlgebra& V, const VElem& a, const VElem& b,
                                        int n, const VElem& c)
{
    const int T = V.trunc(), W = V.spec().weight_cap;
    int kmax = 0;
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms())
            kmax = std::max(kmax, -V.y_low(v_mono(ma, T), v_mono(mb, T)) - 1 - n);
    kmax = std::max(kmax, 0);
    const int B = kmax + 16;

    VValued out;
    for (auto& [u, v, w] : translation_legs(V, a, b, B)) {
        for (auto& [e, coef] : w) {
            int k = e[static_cast<int>(Var::z3)];
            VElem state = V.state_nproduct(v_mono(u, T), k + n, v_mono(v, T));
            if (state.is_zero()) continue;
            VValued y = V.y_closed(state, c, Var::z2);
            ExpVec rest = e;
            rest[static_cast<int>(Var::z3)] = 0;
            RatSeries cc(T);
            for (auto& [o, r] : coef.coeffs()) cc.add(o, RatFun(Poly(r, rest)));
            for (auto& [m, s] : y.terms()) out.add(m, s * cc);
        }
    }
    return weight_filter(out, W);
}

/// Locality order: smallest N with (z1-z2)^N [a(z1), b(z2)]_S = 0 mod t^{k+1},
/// over test states up to the weight cap.
inline int locality_order(const VertexAlgebra& V, const VElem& a, const VElem& b, int k)
{
    int maxn = -1;
    for (auto& m : basis_up_to_weight(V.spec().weight_cap)) {
        VDist d = V.s_commutator(a, b, v_mono(m, V.trunc()));
        for (auto& [n, coeff] : d.terms) {
            VValued t;
            for (auto& [mm, cc] : coeff.terms()) t.add(mm, cc.truncated(k));
            if (!t.is_zero()) maxn = std::max(maxn, n);
        }
    }
    return maxn + 1;
}

} // namespace qva
